#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entmono/measures.hpp"
#include "entmono/roof.hpp"
#include "entmono/types.hpp"

namespace entmono {

class PureState;
class DensityMatrix;

enum class WitnessOutcome { factored, product_AC, separable_AC_ppt, none };

std::string to_string(WitnessOutcome w);

struct AuditConfig {
  OptimizerConfig opt;
  double eps_gap_pure = 1e-6;   // exact A|BC evaluation
  double eps_gap_mixed = 1e-3;  // roof slack dominates
  double tau_audit = 1e-8;      // slack for sign-definite inequalities
  double zero_clamp = 1e-7;     // values below count as exact zero in powers
  bool with_witness = false;    // run structural checks on disentangled states
  bool with_product_distance = true;
  double alpha_lo = 0.05;
  double alpha_hi = 16.0;
  double alpha_resolution = 1e-3;
};

/// One audited tripartite state: the three values of the split comparison
/// E(A|BC) vs E(AB), E(AC), plus optional structural findings.
struct AuditRecord {
  std::string state;  // descriptor, e.g. "haar[2,4,2]#17"
  std::uint64_t seed = 0;
  std::string measure;
  bool pure = true;
  double e_abc = 0.0;
  double e_ab = 0.0;
  double e_ac = 0.0;
  double gap = 0.0;  // e_abc - e_ab, >= -tau_audit up to optimizer slack
  double eps_gap = 0.0;
  bool disentangled = false;  // |gap| < eps_gap
  bool roofs_converged = true;
  std::optional<double> product_distance;  // trace distance of rho_AC to rho_A (x) rho_C
  std::optional<WitnessOutcome> witness;
  std::optional<double> alpha_result;  // per-state critical exponent
};

/// Compare the one-sided measure across A|BC with the roof values on the AB
/// and AC marginals. Pure states evaluate A|BC directly; mixed states use the
/// roof throughout.
AuditRecord disentangling_gap(const PureState& psi, const MeasureSpec& spec,
                              const AuditConfig& cfg = {});
AuditRecord disentangling_gap(const DensityMatrix& rho, const MeasureSpec& spec,
                              const AuditConfig& cfg = {});

/// tau(A|BC) - tau_AB - tau_AC for a three-qubit pure state, the pairwise
/// terms through the exact two-qubit oracle.
struct CkwResult {
  double tau_abc = 0.0;
  double tau_ab = 0.0;
  double tau_ac = 0.0;
  double residual = 0.0;
};

CkwResult ckw_check(const PureState& psi, const AuditConfig& cfg = {});

/// Smallest alpha in [alpha_lo, alpha_hi] with
///   e_abc^alpha >= e_ab^alpha + e_ac^alpha - tau_audit
/// on every record; found=false when even alpha_hi fails. Values below
/// zero_clamp are treated as exact zeros before powering. Each record gets
/// its per-state critical alpha.
struct AlphaSearchResult {
  bool found = false;
  double alpha = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double resolution = 0.0;
  int samples = 0;
};

AlphaSearchResult alpha_from_records(std::vector<AuditRecord>& records,
                                     const AuditConfig& cfg = {});

AlphaSearchResult alpha_search(const std::vector<PureState>& samples,
                               const MeasureSpec& spec, const AuditConfig& cfg = {},
                               std::vector<AuditRecord>* records_out = nullptr);

}  // namespace entmono
