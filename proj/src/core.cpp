#include "entmono/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace entmono {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

// --- DimSignature ----------------------------------------------------------

DimSignature::DimSignature(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) throw signature_error("subsystem dimension must be >= 1");
  }
  long total = 1;
  for (int d : dims_) {
    if (total > (1L << 40) / d) throw signature_error("signature total dimension overflow");
    total *= d;
  }
}

int DimSignature::dim(int label) const {
  if (label < 0 || label >= subsystems()) throw signature_error("subsystem label out of range");
  return dims_[static_cast<size_t>(label)];
}

long DimSignature::total() const {
  long t = 1;
  for (int d : dims_) t *= d;
  return t;
}

std::vector<long> DimSignature::strides() const {
  std::vector<long> s(dims_.size(), 1);
  for (int k = subsystems() - 2; k >= 0; --k) {
    s[static_cast<size_t>(k)] = s[static_cast<size_t>(k) + 1] * dims_[static_cast<size_t>(k) + 1];
  }
  return s;
}

void DimSignature::check_labels(const std::vector<int>& labels) const {
  std::vector<bool> seen(dims_.size(), false);
  for (int l : labels) {
    if (l < 0 || l >= subsystems()) throw signature_error("subsystem label out of range");
    if (seen[static_cast<size_t>(l)]) throw signature_error("duplicate subsystem label");
    seen[static_cast<size_t>(l)] = true;
  }
}

DimSignature DimSignature::sub(const std::vector<int>& labels) const {
  check_labels(labels);
  std::vector<int> d;
  d.reserve(labels.size());
  for (int l : labels) d.push_back(dims_[static_cast<size_t>(l)]);
  return DimSignature(d);
}

std::vector<int> DimSignature::complement(const std::vector<int>& labels) const {
  check_labels(labels);
  std::vector<bool> in(dims_.size(), false);
  for (int l : labels) in[static_cast<size_t>(l)] = true;
  std::vector<int> rest;
  for (int k = 0; k < subsystems(); ++k) {
    if (!in[static_cast<size_t>(k)]) rest.push_back(k);
  }
  return rest;
}

std::string DimSignature::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < dims_.size(); ++k) {
    if (k) os << ",";
    os << dims_[k];
  }
  os << "]";
  return os.str();
}

// --- eigenvalues -----------------------------------------------------------

namespace {

RVec eig2x2(const Mat& h) {
  const double a = h(0, 0).real();
  const double c = h(1, 1).real();
  const double m = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), std::abs(h(0, 1)));
  RVec v(2);
  v << m + rad, m - rad;
  return v;
}

// Trigonometric closed form; falls back to the iterative solver close to an
// exact degeneracy, where acos loses accuracy.
bool eig3x3(const Mat& h, RVec& out) {
  const double q = (h(0, 0).real() + h(1, 1).real() + h(2, 2).real()) / 3.0;
  const double p1 =
      std::norm(h(0, 1)) + std::norm(h(0, 2)) + std::norm(h(1, 2));
  const double d0 = h(0, 0).real() - q;
  const double d1 = h(1, 1).real() - q;
  const double d2 = h(2, 2).real() - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  if (p2 < 1e-28) {
    out = RVec::Constant(3, q);
    return true;
  }
  const double p = std::sqrt(p2 / 6.0);
  Mat b = h;
  b(0, 0) -= q;
  b(1, 1) -= q;
  b(2, 2) -= q;
  b /= p;
  const cxd det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                  b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                  b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  double r = 0.5 * det.real();
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  if (1.0 - std::abs(r) < 1e-4) return false;
  const double phi = std::acos(r) / 3.0;
  const double e0 = q + 2.0 * p * std::cos(phi);
  const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  out.resize(3);
  out << e0, 3.0 * q - e0 - e2, e2;
  return true;
}

}  // namespace

RVec hermitian_eigenvalues(const Mat& h) {
  const long n = h.rows();
  if (n == 1) {
    RVec v(1);
    v << h(0, 0).real();
    return v;
  }
  if (n == 2) return eig2x2(h);
  if (n == 3) {
    RVec v;
    if (eig3x3(h, v)) return v;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue solver failed");
  return solver.eigenvalues().reverse();
}

RVec hermitian_spectrum(const Mat& h) {
  RVec v = hermitian_eigenvalues(h);
  const double floor = -tolerances().psd;
  for (long k = 0; k < v.size(); ++k) {
    if (v[k] < floor) {
      throw numeric_error("matrix has eigenvalue " + std::to_string(v[k]) +
                          " below the positivity tolerance");
    }
    if (v[k] < 0.0) v[k] = 0.0;
  }
  return v;
}

// --- PureState ---------------------------------------------------------------

PureState::PureState(Vec amplitudes, DimSignature signature)
    : amp_(std::move(amplitudes)), sig_(std::move(signature)) {
  if (amp_.size() != sig_.total()) {
    throw signature_error("amplitude count " + std::to_string(amp_.size()) +
                          " does not match signature " + sig_.to_string());
  }
  if (std::abs(amp_.norm() - 1.0) > tolerances().norm) {
    throw numeric_error("state vector is not normalized");
  }
}

PureState PureState::normalized(Vec amplitudes, DimSignature signature) {
  const double n = amplitudes.norm();
  if (n < 1e-14) throw numeric_error("cannot normalize a null vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes), std::move(signature));
}

DensityMatrix PureState::projector() const {
  Mat m = amp_ * amp_.adjoint();
  return DensityMatrix(std::move(m), sig_, DensityMatrix::unchecked_t{});
}

// --- DensityMatrix -------------------------------------------------------------

void DensityMatrix::check_basic() const {
  if (m_.rows() != m_.cols()) throw signature_error("density matrix must be square");
  if (m_.rows() != sig_.total()) {
    throw signature_error("matrix dimension " + std::to_string(m_.rows()) +
                          " does not match signature " + sig_.to_string());
  }
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerances().herm) {
    throw numeric_error("matrix is not hermitian (max asymmetry " + std::to_string(herm) + ")");
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tolerances().norm) {
    throw numeric_error("matrix trace " + std::to_string(tr) + " is not 1");
  }
}

DensityMatrix::DensityMatrix(Mat matrix, DimSignature signature)
    : m_(std::move(matrix)), sig_(std::move(signature)) {
  check_basic();
  hermitian_spectrum(m_);  // raises below -psd_tol
}

DensityMatrix::DensityMatrix(Mat matrix, DimSignature signature, unchecked_t)
    : m_(std::move(matrix)), sig_(std::move(signature)) {
  check_basic();
}

RVec DensityMatrix::spectrum() const { return hermitian_spectrum(m_); }

int DensityMatrix::rank() const {
  const RVec s = spectrum();
  int r = 0;
  for (long k = 0; k < s.size(); ++k) {
    if (s[k] > kWeightFloor) ++r;
  }
  return r;
}

// --- Isometry ---------------------------------------------------------------

Isometry::Isometry(Mat matrix) : m(std::move(matrix)) {
  if (m.cols() > m.rows()) throw signature_error("isometry needs rows >= columns");
  const Mat gram = m.adjoint() * m;
  const double err = (gram - Mat::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
  if (err > tolerances().iso) {
    throw numeric_error("columns are not orthonormal (max deviation " + std::to_string(err) + ")");
  }
}

// --- index helpers ----------------------------------------------------------

namespace {

// Flat offsets contributed by the labeled subsystems, enumerating their joint
// index row-major in label order.
std::vector<long> group_offsets(const DimSignature& sig, const std::vector<int>& labels) {
  const std::vector<long> strides = sig.strides();
  long count = 1;
  for (int l : labels) count *= sig.dim(l);
  std::vector<long> off(static_cast<size_t>(count), 0);
  long repeat = count;
  for (int l : labels) {
    const int d = sig.dim(l);
    const long stride = strides[static_cast<size_t>(l)];
    repeat /= d;
    long idx = 0;
    while (idx < count) {
      for (int v = 0; v < d; ++v) {
        for (long r = 0; r < repeat; ++r) off[static_cast<size_t>(idx++)] += v * stride;
      }
    }
  }
  return off;
}

std::vector<int> sorted_labels(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

// --- partial trace -----------------------------------------------------------

Mat partial_trace_raw(const Mat& rho, const DimSignature& sig, const std::vector<int>& keep) {
  sig.check_labels(keep);
  if (rho.rows() != sig.total() || rho.cols() != sig.total()) {
    throw signature_error("matrix does not match signature " + sig.to_string());
  }
  const std::vector<int> k = sorted_labels(keep);
  const std::vector<int> t = sig.complement(k);
  const std::vector<long> off_k = group_offsets(sig, k);
  const std::vector<long> off_t = group_offsets(sig, t);
  const long dk = static_cast<long>(off_k.size());
  Mat out = Mat::Zero(dk, dk);
  for (long j = 0; j < dk; ++j) {
    for (long i = 0; i < dk; ++i) {
      cxd acc = 0.0;
      for (long tt : off_t) acc += rho(off_k[static_cast<size_t>(i)] + tt, off_k[static_cast<size_t>(j)] + tt);
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const std::vector<int> k = sorted_labels(keep);
  Mat out = partial_trace_raw(rho.matrix(), rho.signature(), k);
  return DensityMatrix(std::move(out), rho.signature().sub(k), DensityMatrix::unchecked_t{});
}

// --- partial transpose ---------------------------------------------------------

Mat partial_transpose(const DensityMatrix& rho, const std::vector<int>& transposed) {
  const DimSignature& sig = rho.signature();
  sig.check_labels(transposed);
  const std::vector<int> s = sorted_labels(transposed);
  const std::vector<int> rest = sig.complement(s);
  const std::vector<long> off_s = group_offsets(sig, s);
  const std::vector<long> off_r = group_offsets(sig, rest);
  const long ds = static_cast<long>(off_s.size());
  const long dr = static_cast<long>(off_r.size());
  const Mat& m = rho.matrix();
  Mat out(m.rows(), m.cols());
  for (long jr = 0; jr < dr; ++jr) {
    for (long js = 0; js < ds; ++js) {
      for (long ir = 0; ir < dr; ++ir) {
        for (long is = 0; is < ds; ++is) {
          out(off_r[static_cast<size_t>(ir)] + off_s[static_cast<size_t>(is)],
              off_r[static_cast<size_t>(jr)] + off_s[static_cast<size_t>(js)]) =
              m(off_r[static_cast<size_t>(ir)] + off_s[static_cast<size_t>(js)],
                off_r[static_cast<size_t>(jr)] + off_s[static_cast<size_t>(is)]);
        }
      }
    }
  }
  return out;
}

// --- permutation -----------------------------------------------------------------

namespace {

// new_flat[x] for every old flat index x; new subsystem k is old subsystem order[k].
std::vector<long> permutation_map(const DimSignature& sig, const std::vector<int>& order) {
  sig.check_labels(order);
  if (static_cast<int>(order.size()) != sig.subsystems()) {
    throw signature_error("permutation must list every subsystem exactly once");
  }
  const std::vector<long> old_strides = sig.strides();
  const DimSignature new_sig = sig.sub(order);
  const std::vector<long> new_strides = new_sig.strides();
  const long total = sig.total();
  // stride that old subsystem order[k] acquires in the new layout
  std::vector<long> moved(order.size());
  for (size_t k = 0; k < order.size(); ++k) moved[static_cast<size_t>(order[k])] = new_strides[k];
  std::vector<long> map(static_cast<size_t>(total));
  std::vector<int> digits(order.size(), 0);
  const std::vector<int>& dims = sig.dims();
  for (long x = 0; x < total; ++x) {
    long y = 0;
    long rem = x;
    for (size_t k = 0; k < dims.size(); ++k) {
      const long digit = rem / old_strides[k];
      rem -= digit * old_strides[k];
      y += digit * moved[k];
    }
    map[static_cast<size_t>(x)] = y;
  }
  return map;
}

}  // namespace

PureState permute_subsystems(const PureState& psi, const std::vector<int>& order) {
  const std::vector<long> map = permutation_map(psi.signature(), order);
  Vec out(psi.dim());
  const Vec& a = psi.amplitudes();
  for (long x = 0; x < a.size(); ++x) out[map[static_cast<size_t>(x)]] = a[x];
  return PureState(std::move(out), psi.signature().sub(order));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<int>& order) {
  const std::vector<long> map = permutation_map(rho.signature(), order);
  const Mat& m = rho.matrix();
  Mat out(m.rows(), m.cols());
  for (long j = 0; j < m.cols(); ++j) {
    for (long i = 0; i < m.rows(); ++i) {
      out(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) = m(i, j);
    }
  }
  return DensityMatrix(std::move(out), rho.signature().sub(order), DensityMatrix::unchecked_t{});
}

// --- reduction, purification, schmidt --------------------------------------------

DensityMatrix reduced_density(const PureState& psi, const std::vector<int>& keep) {
  const DimSignature& sig = psi.signature();
  sig.check_labels(keep);
  const std::vector<int> k = sorted_labels(keep);
  std::vector<int> order = k;
  for (int r : sig.complement(k)) order.push_back(r);
  bool identity = true;
  for (size_t i = 0; i < order.size(); ++i) {
    if (order[i] != static_cast<int>(i)) {
      identity = false;
      break;
    }
  }
  const PureState front = identity ? psi : permute_subsystems(psi, order);
  const DimSignature keep_sig = sig.sub(k);
  const long dk = keep_sig.total();
  const long dt = sig.total() / dk;
  // row-major reshape: amplitude (i_keep, i_rest) sits at i_keep * dt + i_rest
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      front.amplitudes().data(), dk, dt);
  Mat rho = m * m.adjoint();
  return DensityMatrix(std::move(rho), keep_sig, DensityMatrix::unchecked_t{});
}

PureState purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue solver failed");
  const long d = rho.dim();
  std::vector<int> idx;
  for (long k = d - 1; k >= 0; --k) {
    if (solver.eigenvalues()[k] > kWeightFloor) idx.push_back(static_cast<int>(k));
  }
  const long r = static_cast<long>(idx.size());
  if (r == 0) throw numeric_error("cannot purify a null matrix");
  Vec amp = Vec::Zero(d * r);
  for (long k = 0; k < r; ++k) {
    const double w = std::sqrt(solver.eigenvalues()[idx[static_cast<size_t>(k)]]);
    const Vec v = solver.eigenvectors().col(idx[static_cast<size_t>(k)]);
    for (long i = 0; i < d; ++i) amp[i * r + k] = w * v[i];
  }
  std::vector<int> dims = rho.signature().dims();
  dims.push_back(static_cast<int>(r));
  return PureState::normalized(std::move(amp), DimSignature(dims));
}

int SchmidtDecomposition::rank(double tol) const {
  int r = 0;
  for (long k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] > tol) ++r;
  }
  return r;
}

SchmidtDecomposition schmidt(const PureState& psi, const std::vector<int>& left_labels) {
  const DimSignature& sig = psi.signature();
  sig.check_labels(left_labels);
  if (left_labels.empty() || static_cast<int>(left_labels.size()) == sig.subsystems()) {
    throw signature_error("schmidt split needs a proper bipartition");
  }
  std::vector<int> order = left_labels;
  for (int r : sig.complement(left_labels)) order.push_back(r);
  const PureState front = permute_subsystems(psi, order);
  const long dl = sig.sub(left_labels).total();
  const long dr = sig.total() / dl;
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      front.amplitudes().data(), dl, dr);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  // psi = sum_k s_k U.col(k) (x) conj(V.col(k))
  out.right = svd.matrixV().conjugate();
  return out;
}

// --- products -----------------------------------------------------------------

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long j = 0; j < a.cols(); ++j) {
    for (long i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

namespace {

DimSignature concat(const DimSignature& a, const DimSignature& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DimSignature(dims);
}

}  // namespace

PureState tensor(const PureState& a, const PureState& b) {
  return PureState::normalized(kron_vec(a.amplitudes(), b.amplitudes()),
                               concat(a.signature(), b.signature()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), concat(a.signature(), b.signature()),
                       DensityMatrix::unchecked_t{});
}

// --- sampling --------------------------------------------------------------------

PureState random_pure(const DimSignature& sig, std::uint64_t seed) {
  Rng rng(seed);
  Vec amp(sig.total());
  for (long i = 0; i < amp.size(); ++i) amp[i] = rng.cgaussian();
  return PureState::normalized(std::move(amp), sig);
}

DensityMatrix random_density(const DimSignature& sig, int rank, std::uint64_t seed) {
  const long dim = sig.total();
  if (rank < 1 || rank > dim) throw signature_error("rank must be in [1, dim]");
  Rng rng(seed);
  Mat g(dim, rank);
  for (long i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.cgaussian();
  }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), sig, DensityMatrix::unchecked_t{});
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  return random_density(DimSignature({dim}), rank, seed);
}

namespace {

Mat qr_orthonormal(const Mat& g, long cols) {
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(g.rows(), cols);
  const Mat r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  for (long j = 0; j < cols; ++j) {
    const cxd d = r(j, j);
    const double mag = std::abs(d);
    // column phase fix makes the map from g deterministic and Haar-correct
    if (mag > 1e-300) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace

Mat random_unitary(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
  }
  return qr_orthonormal(g, dim);
}

Mat random_isometry(int rows, int cols, Rng& rng) {
  if (cols > rows) throw signature_error("isometry needs rows >= columns");
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
  }
  return qr_orthonormal(g, cols);
}

// --- constructions ----------------------------------------------------------------

PureState make_product_family(const PureState& phi, const PureState& eta,
                              const Mat& u_b, int dim_b) {
  if (phi.signature().subsystems() != 2 || eta.signature().subsystems() != 2) {
    throw signature_error("factors must be bipartite");
  }
  const int da = phi.signature().dim(0);
  const int db1 = phi.signature().dim(1);
  const int db2 = eta.signature().dim(0);
  const int dc = eta.signature().dim(1);
  const int d12 = db1 * db2;
  if (d12 > dim_b) throw signature_error("embedding target is smaller than the factors");
  if (u_b.rows() != dim_b || (u_b.cols() != dim_b && u_b.cols() != d12)) {
    throw signature_error("embedding must be dim_b x dim_b or dim_b x (d_b1*d_b2)");
  }
  const Mat v = u_b.leftCols(d12);
  const Mat gram = v.adjoint() * v;
  if ((gram - Mat::Identity(d12, d12)).cwiseAbs().maxCoeff() > tolerances().iso) {
    throw numeric_error("embedding columns are not orthonormal");
  }
  const Vec& f = phi.amplitudes();
  const Vec& g = eta.amplitudes();
  Vec amp = Vec::Zero(static_cast<long>(da) * dim_b * dc);
  for (int a = 0; a < da; ++a) {
    for (int b1 = 0; b1 < db1; ++b1) {
      const cxd fa = f[static_cast<long>(a) * db1 + b1];
      if (fa == cxd(0.0)) continue;
      for (int b2 = 0; b2 < db2; ++b2) {
        const long col = static_cast<long>(b1) * db2 + b2;
        for (int c = 0; c < dc; ++c) {
          const cxd gc = g[static_cast<long>(b2) * dc + c];
          if (gc == cxd(0.0)) continue;
          const cxd w = fa * gc;
          for (int b = 0; b < dim_b; ++b) {
            amp[(static_cast<long>(a) * dim_b + b) * dc + c] += w * v(b, col);
          }
        }
      }
    }
  }
  return PureState::normalized(std::move(amp), DimSignature({da, dim_b, dc}));
}

PureState bell_pair() {
  Vec amp = Vec::Zero(4);
  amp[0] = amp[3] = 1.0 / std::sqrt(2.0);
  return PureState(std::move(amp), DimSignature({2, 2}));
}

PureState ghz_state(int local_dim) {
  if (local_dim < 2) throw signature_error("local dimension must be >= 2");
  const long d = local_dim;
  Vec amp = Vec::Zero(d * d * d);
  for (long k = 0; k < d; ++k) amp[k * d * d + k * d + k] = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(amp), DimSignature({local_dim, local_dim, local_dim}));
}

PureState w_state() {
  Vec amp = Vec::Zero(8);
  const double c = 1.0 / std::sqrt(3.0);
  amp[1] = amp[2] = amp[4] = c;  // |001> + |010> + |100>
  return PureState(std::move(amp), DimSignature({2, 2, 2}));
}

PureState bell_with_spectator(int dim_c) {
  Vec spec = Vec::Zero(dim_c);
  spec[0] = 1.0;
  return tensor(bell_pair(), PureState(std::move(spec), DimSignature({dim_c})));
}

Mat complete_to_unitary(const Mat& isometry_cols) {
  const long d = isometry_cols.rows();
  const long k = isometry_cols.cols();
  if (k > d) throw signature_error("isometry needs rows >= columns");
  Mat u(d, d);
  u.leftCols(k) = isometry_cols;
  long have = k;
  for (long cand = 0; cand < d && have < d; ++cand) {
    Vec v = Vec::Zero(d);
    v[cand] = 1.0;
    // orthogonalize twice for stability
    for (int pass = 0; pass < 2; ++pass) {
      for (long j = 0; j < have; ++j) v -= u.col(j).dot(v) * u.col(j);
    }
    const double n = v.norm();
    if (n > 1e-8) {
      u.col(have++) = v / n;
    }
  }
  if (have < d) throw numeric_error("failed to complete the isometry to a basis");
  return u;
}

double trace_distance(const Mat& a, const Mat& b) {
  const RVec eigs = hermitian_eigenvalues(a - b);
  return 0.5 * eigs.cwiseAbs().sum();
}

}  // namespace entmono
