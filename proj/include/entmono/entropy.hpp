#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "entmono/types.hpp"

namespace entmono {

enum class EntropyKind { vonNeumann, tsallis, renyi, linear, gTrace };

/// Named scalar function applied eigenvalue-wise, sum = Tr g(rho).
/// Registry: "plog" (-p log2 p), "quadratic" (p(1-p)), "sqrt" (sqrt(p)-p),
/// "power:q" ((p-p^q)/(q-1), q>0, q!=1). All satisfy g(0)=g(1)=0 and are
/// concave on [0,1].
struct ConcaveG {
  std::string name;
  std::function<double(double)> fn;
};

ConcaveG lookup_concave_g(const std::string& name);

/// Entropy functional selector.
///   vonNeumann        -sum p log_b p
///   tsallis(q)        (1 - sum p^q)/(q - 1), natural units; q=1 is the
///                     natural-log vonNeumann limit
///   renyi(alpha)      log_b(sum p^alpha)/(1-alpha); alpha=1 is vonNeumann
///   linear            1 - sum p^2 (equals tsallis q=2)
///   gTrace(name)      sum g(p) over the registry above
/// log_base applies to vonNeumann and renyi only.
struct EntropySpec {
  EntropyKind kind = EntropyKind::vonNeumann;
  double param = 0.0;
  std::string g_name;
  double log_base = 2.0;

  static EntropySpec von_neumann(double base = 2.0);
  static EntropySpec tsallis_q(double q);
  static EntropySpec renyi_alpha(double alpha, double base = 2.0);
  static EntropySpec linear_entropy();
  static EntropySpec g_trace(const std::string& name);

  /// Raises signature_error when a parameter is out of range.
  void validate() const;
  /// Canonical printable name, e.g. "renyi:0.5".
  std::string name() const;
};

/// Parse "vn" | "tsallis:q" | "renyi:a" | "linear" | "gtrace:name".
EntropySpec parse_entropy_spec(const std::string& text);

/// Entropy of a clamped eigenvalue list (zeros skipped term-wise).
double entropy_from_spectrum(const RVec& spectrum, const EntropySpec& spec);

double entropy(const DensityMatrix& rho, const EntropySpec& spec);

/// Randomized concavity check: samples pairs (rho1, rho2) of mixed ranks and
/// lambda in (0,1), evaluates
///   margin = h(lambda rho1 + (1-lambda) rho2) - lambda h(rho1) - (1-lambda) h(rho2)
/// and keeps the worst case. A margin below -eig_tol is a violation witness.
struct ConcavityReport {
  EntropySpec spec;
  std::string label;  // printable name of the probed functional
  int dim = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double min_margin = 0.0;
  bool violation_found = false;
  int witness_trial = -1;
  double witness_lambda = 0.0;
  Mat witness_rho1;
  Mat witness_rho2;
};

ConcavityReport concavity_probe(const EntropySpec& spec, int dim, int trials,
                                std::uint64_t seed);

}  // namespace entmono
