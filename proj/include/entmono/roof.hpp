#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entmono/measures.hpp"
#include "entmono/types.hpp"

namespace entmono {

/// Weighted pure-state ensemble averaging to a target density matrix.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  int size() const { return static_cast<int>(weights.size()); }
  /// sum_j w_j |psi_j><psi_j|
  Mat reconstruct() const;
  /// max-abs deviation of the reconstruction from rho.
  double reconstruction_error(const DensityMatrix& rho) const;
};

/// Named convex increasing scalar with g(0)=0, used for roof composition.
/// Registry: "identity", "square", "cube", "power:k" (k >= 1).
struct ConvexG {
  std::string name;
  std::function<double(double)> fn;
};

ConvexG lookup_convex_g(const std::string& name);

struct OptimizerConfig {
  int restarts = 32;
  long max_evals = 10000;  // full-objective-equivalent budget per restart
  int n_extra = 2;         // ensemble size = min(rank + n_extra, rank^2)
  double tol = 1e-8;       // relative sweep improvement stop
  std::uint64_t seed = 0;
  double value_floor = 1e-12;  // stop all restarts below this value
  int threads = 1;
};

struct RoofResult {
  double value = 0.0;
  Decomposition certificate;
  double spectral_average = 0.0;  // objective at the eigen-decomposition
  bool converged = true;
  int restarts = 0;
  long evaluations = 0;
  int sweeps = 0;
  int best_restart = 0;
  std::uint64_t best_seed = 0;
};

/// Mix the spectral decomposition of rho by an n x r column-isometry U:
/// sqrt(q_k)|phi_k> = sum_j U(k,j) sqrt(p_j)|psi_j>. Members below the
/// weight floor are dropped. r must equal rank(rho).
Decomposition decomposition_from_unitary(const DensityMatrix& rho, const Mat& u);

/// Minimize the decomposition-averaged measure over ensembles of rho across
/// cut|rest. The result is an upper bound on the true roof; the certificate
/// reproduces the value and reconstructs rho.
RoofResult roof_value(const DensityMatrix& rho, const std::vector<int>& cut,
                      const MeasureSpec& spec, const OptimizerConfig& cfg = {});

/// Same minimization with member values composed through g:
/// min sum_j w_j g(E(psi_j)).
RoofResult e_g_roof(const DensityMatrix& rho, const std::vector<int>& cut,
                    const MeasureSpec& base, const std::string& g_name,
                    const OptimizerConfig& cfg = {});

/// Closed-form two-qubit entanglement of formation.
struct WoottersResult {
  double concurrence = 0.0;
  double eof = 0.0;
};

WoottersResult wootters_eof(const DensityMatrix& rho);

}  // namespace entmono
