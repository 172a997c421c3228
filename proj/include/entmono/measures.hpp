#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entmono/entropy.hpp"
#include "entmono/types.hpp"

namespace entmono {

class PureState;
class DensityMatrix;

enum class MeasureKind {
  entropyOfEntanglement,
  concurrence,
  tangle,
  gConcurrence,
  negativity,
  renyiEnt,
  tsallisEnt,
};

/// Bipartite entanglement measure selector. All kinds except negativity are
/// defined on pure states through a reduction function h applied to one
/// marginal; negativity acts on the full (possibly mixed) state.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::entropyOfEntanglement;
  EntropySpec entropy;  // payload for entropyOfEntanglement
  double param = 0.0;   // alpha for renyiEnt, q for tsallisEnt

  static MeasureSpec eoe(EntropySpec spec = EntropySpec::von_neumann());
  static MeasureSpec make(MeasureKind kind, double param = 0.0);

  void validate() const;
  /// True when the underlying h is strictly concave (probe-backed catalog);
  /// false for renyi alpha > 1 and for negativity.
  bool strictly_concave_flag() const;
  bool is_h_type() const { return kind != MeasureKind::negativity; }
  std::string name() const;
};

/// Parse "eoe" | "concurrence" | "tangle" | "gconc" | "neg" | "renyi:a" |
/// "tsallis:q" | "eoe:<entropy spec>".
MeasureSpec parse_measure_spec(const std::string& text);

/// Reduction function on a marginal:
///   eoe          entropy of the marginal per the embedded spec
///   concurrence  sqrt(2 (1 - Tr rho^2))
///   tangle       2 (1 - Tr rho^2)
///   gconc        d (det rho)^(1/d)
///   renyi/tsallis  matching entropies, base 2
/// Raises signature_error for negativity, which has no h form.
double h_value(const DensityMatrix& rho_a, const MeasureSpec& spec);

/// Measure of a pure state across cut|rest; h-type kinds evaluate h on the
/// reduction onto `cut`, negativity uses its Schmidt form.
double pure_measure(const PureState& psi, const std::vector<int>& cut,
                    const MeasureSpec& spec);

/// (trace norm of the partial transpose over `transposed` - 1) / 2.
double negativity(const DensityMatrix& rho, const std::vector<int>& transposed);

/// Max |E(psi) - E((U (x) V) psi)| over random unitaries local to the cut.
double lu_invariance_check(const MeasureSpec& spec, const PureState& psi,
                           const std::vector<int>& cut, int trials,
                           std::uint64_t seed);

/// Concavity probe of the measure's h (same sampling and report shape as the
/// entropy probe). Raises for negativity.
ConcavityReport measure_concavity_probe(const MeasureSpec& spec, int dim, int trials,
                                        std::uint64_t seed);

}  // namespace entmono
