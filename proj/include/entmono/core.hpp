#pragma once

#include <cstdint>
#include <vector>

#include "entmono/rng.hpp"
#include "entmono/types.hpp"

namespace entmono {

/// Reduction onto the kept subsystems (original relative order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Same, on a raw matrix over `sig`.
Mat partial_trace_raw(const Mat& rho, const DimSignature& sig, const std::vector<int>& keep);

/// Transpose the given subsystems in place of the identity on the rest.
/// Returns a raw matrix: the result is Hermitian but not positive in general.
Mat partial_transpose(const DensityMatrix& rho, const std::vector<int>& transposed);

/// Reduced density matrix of a pure state on the kept subsystems.
DensityMatrix reduced_density(const PureState& psi, const std::vector<int>& keep);

/// Reorder subsystems: subsystem k of the result is subsystem order[k]
/// of the input.
PureState permute_subsystems(const PureState& psi, const std::vector<int>& order);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& order);

/// Spectral purification; ancilla (appended as a second subsystem) has
/// dimension rank(rho). Tracing it out recovers rho.
PureState purify(const DensityMatrix& rho);

/// psi = sum_k coefficients[k] * left.col(k) (x) right.col(k),
/// coefficients descending and nonnegative.
struct SchmidtDecomposition {
  RVec coefficients;
  Mat left;
  Mat right;
  int rank(double tol) const;
};

SchmidtDecomposition schmidt(const PureState& psi, const std::vector<int>& left_labels);

Mat kron(const Mat& a, const Mat& b);
Vec kron_vec(const Vec& a, const Vec& b);

/// Tensor product with concatenated signatures.
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// --- sampling ------------------------------------------------------------

/// Haar-distributed unit vector over the signature.
PureState random_pure(const DimSignature& sig, std::uint64_t seed);

/// Trace-normalized G G^dag with G a dim x rank complex Gaussian matrix.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
DensityMatrix random_density(const DimSignature& sig, int rank, std::uint64_t seed);

/// Haar unitary / truncated Haar isometry (QR with phase fix).
Mat random_unitary(int dim, Rng& rng);
Mat random_isometry(int rows, int cols, Rng& rng);

// --- constructions -------------------------------------------------------

/// Wire phi on A(x)B1 and eta on B2(x)C into a tripartite state on A(x)B(x)C,
/// embedding B1(x)B2 into B through u_b. u_b may be the full dim_b x dim_b
/// unitary (its leading columns are used) or the dim_b x (dimB1*dimB2)
/// isometry itself. The AC marginal of the result is a product state.
PureState make_product_family(const PureState& phi, const PureState& eta,
                              const Mat& u_b, int dim_b);

PureState bell_pair();
PureState ghz_state(int local_dim = 2);
PureState w_state();
/// Bell pair on AB with an uncorrelated |0> spectator on C.
PureState bell_with_spectator(int dim_c = 2);

/// Deterministic completion of an isometry to a unitary basis.
Mat complete_to_unitary(const Mat& isometry_cols);

/// Half trace-norm distance between two Hermitian matrices.
double trace_distance(const Mat& a, const Mat& b);

}  // namespace entmono
