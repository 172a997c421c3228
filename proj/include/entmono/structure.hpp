#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entmono/types.hpp"

namespace entmono {

class PureState;
class DensityMatrix;

/// Exhibits a tripartite pure state as (I (x) U_B (x) I)(phi (x) eta) with
/// phi on A(x)B1 and eta on B2(x)C, where B = B1(x)B2 embeds into the middle
/// subsystem. Existence is equivalent to the middle system mediating no
/// correlation between A and C.
struct FactorizationWitness {
  int dim_b1 = 0;
  int dim_b2 = 0;
  PureState phi;  // A (x) B1
  PureState eta;  // B2 (x) C
  Mat u_b;        // dim_b x dim_b unitary; leading dim_b1*dim_b2 columns embed
  double reconstruction_error = 0.0;
};

struct FactorizationResult {
  bool found = false;
  /// set when !found: "marginal-equality" | "gram" | "reconstruction"
  std::string fail_stage;
  double fail_deviation = 0.0;
  std::optional<FactorizationWitness> witness;
};

/// Factorization search on a pure tripartite state:
///   1. Schmidt-split across AB|C into weighted members {p_j, psi_j, c_j}.
///   2. All member marginals on A must coincide (trace distance < eps).
///   3. Build the member isometries V_j off a fixed purification of rho_A.
///   4. Their stacked columns must be orthonormal (cross-gram within eps).
///   5. Assemble U_B and eta, then verify the exact reconstruction.
/// Absence of the structure is reported through fail_stage, not an error.
FactorizationResult witness_factorization(const PureState& psi, double eps = 1e-6);

struct ProductCheck {
  bool product = false;
  double distance = 0.0;  // trace distance to the product of the marginals
};

/// Compare a bipartite state against the product of its own marginals.
ProductCheck is_product(const DensityMatrix& rho, double eps = 1e-8);

enum class Separability { separable, entangled, inconclusive };

/// Partial-transpose test across cut|rest: a negative eigenvalue certifies
/// entanglement; positivity certifies separability only in 2x2 and 2x3.
Separability ppt_separable(const DensityMatrix& rho, const std::vector<int>& cut);

enum class BiseparableForm { A_BC_product, AB_C_product, neither };

/// Schmidt-rank-1 test across A|BC and AB|C for a pure tripartite state with
/// dim B <= 3 (larger middle systems are outside this check's contract).
/// States product across both cuts report A_BC_product.
BiseparableForm biseparable_form_check(const PureState& psi, double eps = 1e-6);

std::string to_string(Separability s);
std::string to_string(BiseparableForm f);

}  // namespace entmono
