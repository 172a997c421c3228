#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entmono {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Raised when subsystem labels or dimensions do not match a signature.
struct signature_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numeric contract is violated (non-PSD input, broken invariant).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Global numeric tolerances. All defaults are overridable at runtime.
struct Tolerances {
  double norm = 1e-10;   // unit trace / unit norm slack
  double herm = 1e-10;   // hermiticity slack
  double psd = 1e-9;     // most negative admissible eigenvalue
  double recon = 1e-8;   // reconstruction / round-trip slack
  double eig = 1e-8;     // spectral comparisons
  double iso = 1e-10;    // isometry column orthonormality
};

Tolerances& tolerances();

// Weights and eigenvalues below this are treated as exact zeros.
inline constexpr double kWeightFloor = 1e-12;

/// Ordered local dimensions of labeled subsystems (label = position).
/// Composite indices are row-major over the signature: for dims
/// (d_0, ..., d_{n-1}) the flat index of (i_0, ..., i_{n-1}) is
/// sum_k i_k * stride_k with stride_k = prod_{j>k} d_j.
class DimSignature {
 public:
  DimSignature() = default;
  DimSignature(std::initializer_list<int> dims) : DimSignature(std::vector<int>(dims)) {}
  explicit DimSignature(std::vector<int> dims);

  int subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int label) const;
  long total() const;
  const std::vector<int>& dims() const { return dims_; }
  std::vector<long> strides() const;

  /// Signature restricted to the given labels, in the order given.
  DimSignature sub(const std::vector<int>& labels) const;
  /// Labels not contained in `labels`, ascending.
  std::vector<int> complement(const std::vector<int>& labels) const;
  void check_labels(const std::vector<int>& labels) const;

  bool operator==(const DimSignature& other) const { return dims_ == other.dims_; }
  std::string to_string() const;

 private:
  std::vector<int> dims_;
};

class DensityMatrix;

/// Unit-norm complex vector over a multipartite signature.
class PureState {
 public:
  PureState(Vec amplitudes, DimSignature signature);
  static PureState normalized(Vec amplitudes, DimSignature signature);

  const Vec& amplitudes() const { return amp_; }
  const DimSignature& signature() const { return sig_; }
  long dim() const { return amp_.size(); }
  DensityMatrix projector() const;

 private:
  Vec amp_;
  DimSignature sig_;
};

/// Hermitian, PSD, unit-trace complex matrix over a multipartite signature.
class DensityMatrix {
 public:
  struct unchecked_t {};

  DensityMatrix(Mat matrix, DimSignature signature);
  /// Skips the O(d^3) PSD check; for internal ops that preserve positivity.
  DensityMatrix(Mat matrix, DimSignature signature, unchecked_t);

  const Mat& matrix() const { return m_; }
  const DimSignature& signature() const { return sig_; }
  long dim() const { return m_.rows(); }

  /// Eigenvalues sorted descending, with values in [-psd_tol, 0) clamped to 0.
  RVec spectrum() const;
  int rank() const;

 private:
  void check_basic() const;
  Mat m_;
  DimSignature sig_;
};

/// Rectangular matrix with orthonormal columns (rows >= columns).
struct Isometry {
  Mat m;
  Isometry() = default;
  explicit Isometry(Mat matrix);
  int source_dim() const { return static_cast<int>(m.cols()); }
  int target_dim() const { return static_cast<int>(m.rows()); }
};

/// Descending-sorted eigenvalues of a Hermitian matrix, unclamped.
/// Closed forms for 2x2/3x3, iterative solver otherwise.
RVec hermitian_eigenvalues(const Mat& herm);

/// Eigenvalues of a nominally PSD Hermitian matrix, descending. Values in
/// [-psd_tol, 0) are clamped to zero; anything below raises numeric_error.
RVec hermitian_spectrum(const Mat& herm);

}  // namespace entmono
