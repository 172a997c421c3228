#include "entmono/structure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entmono/core.hpp"

namespace entmono {

namespace {

using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Rotate v so its first entry above the cutoff is real positive; returns the
/// applied phase (v is multiplied by its conjugate).
cxd fix_phase(Vec& v, double cutoff = 1e-9) {
  for (long i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > cutoff) {
      const cxd phase = v[i] / mag;
      v *= std::conj(phase);
      return phase;
    }
  }
  return cxd(1.0, 0.0);
}

}  // namespace

FactorizationResult witness_factorization(const PureState& psi, double eps) {
  const DimSignature& sig = psi.signature();
  if (sig.subsystems() != 3) throw signature_error("factorization needs a tripartite state");
  const int da = sig.dim(0);
  const int db = sig.dim(1);
  const int dc = sig.dim(2);

  FactorizationResult result;

  // 1. weighted members across AB|C; the joint SVD keeps each member paired
  //    with its C-side vector even under weight degeneracy
  Eigen::Map<const RowMat> m(psi.amplitudes().data(), static_cast<long>(da) * db, dc);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  int r = 0;
  for (long j = 0; j < sv.size(); ++j) {
    if (sv[j] > 1e-9) ++r;
  }
  std::vector<Vec> members(static_cast<size_t>(r));
  std::vector<Vec> c_side(static_cast<size_t>(r));
  std::vector<double> weights(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) {
    Vec u = svd.matrixU().col(j);
    Vec v = svd.matrixV().col(j).conjugate();
    const cxd phase = fix_phase(u);
    v *= phase;  // keeps u (x) v invariant
    members[static_cast<size_t>(j)] = std::move(u);
    c_side[static_cast<size_t>(j)] = std::move(v);
    weights[static_cast<size_t>(j)] = sv[j] * sv[j];
  }

  // 2. every member must carry the same A marginal
  const DensityMatrix rho_a = reduced_density(psi, {0});
  const DimSignature ab_sig({da, db});
  double worst_marginal = 0.0;
  for (int j = 0; j < r; ++j) {
    const PureState member(members[static_cast<size_t>(j)], ab_sig);
    const DensityMatrix mj_a = reduced_density(member, {0});
    worst_marginal = std::max(worst_marginal, trace_distance(mj_a.matrix(), rho_a.matrix()));
  }
  if (worst_marginal > eps) {
    result.fail_stage = "marginal-equality";
    result.fail_deviation = worst_marginal;
    return result;
  }

  // 3. member isometries V_j off a fixed purification of rho_A (support only)
  Eigen::SelfAdjointEigenSolver<Mat> asolver(rho_a.matrix());
  if (asolver.info() != Eigen::Success) throw numeric_error("eigenvalue solver failed");
  std::vector<int> aidx;
  for (int k = da - 1; k >= 0; --k) {
    if (asolver.eigenvalues()[k] > kWeightFloor) aidx.push_back(k);
  }
  const int ra = static_cast<int>(aidx.size());
  Mat e(da, ra);
  RVec lam(ra);
  for (int k = 0; k < ra; ++k) {
    Vec col = asolver.eigenvectors().col(aidx[static_cast<size_t>(k)]);
    fix_phase(col);
    e.col(k) = col;
    lam[k] = asolver.eigenvalues()[aidx[static_cast<size_t>(k)]];
  }
  // V_j = M_j^T conj(E) diag(1/sqrt(lambda)); then (I (x) V_j)|phi> = |psi_j>
  std::vector<Mat> v(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) {
    Eigen::Map<const RowMat> mj(members[static_cast<size_t>(j)].data(), da, db);
    Mat vj = mj.transpose() * e.conjugate();
    for (int k = 0; k < ra; ++k) vj.col(k) /= std::sqrt(lam[k]);
    v[static_cast<size_t>(j)] = std::move(vj);
  }

  // 4. stacked columns {v_kj} must be orthonormal; column index (k, j)
  const int cols = ra * r;
  Mat w(db, cols);
  for (int k = 0; k < ra; ++k) {
    for (int j = 0; j < r; ++j) w.col(k * r + j) = v[static_cast<size_t>(j)].col(k);
  }
  if (cols > db) {
    result.fail_stage = "gram";
    result.fail_deviation = static_cast<double>(cols - db);  // too many directions to fit
    return result;
  }
  const double gram_dev = (w.adjoint() * w - Mat::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (gram_dev > eps) {
    result.fail_stage = "gram";
    result.fail_deviation = gram_dev;
    return result;
  }

  // 5. assemble phi on A(x)B1, eta on B2(x)C, and U_B completing the embedding
  Vec phi_amp = Vec::Zero(static_cast<long>(da) * ra);
  for (int a = 0; a < da; ++a) {
    for (int k = 0; k < ra; ++k) phi_amp[static_cast<long>(a) * ra + k] = std::sqrt(lam[k]) * e(a, k);
  }
  const PureState phi = PureState::normalized(std::move(phi_amp), DimSignature({da, ra}));
  Vec eta_amp = Vec::Zero(static_cast<long>(r) * dc);
  for (int j = 0; j < r; ++j) {
    eta_amp.segment(static_cast<long>(j) * dc, dc) =
        std::sqrt(weights[static_cast<size_t>(j)]) * c_side[static_cast<size_t>(j)];
  }
  const PureState eta = PureState::normalized(std::move(eta_amp), DimSignature({r, dc}));
  const Mat u_b = complete_to_unitary(w);

  const PureState rebuilt = make_product_family(phi, eta, u_b, db);
  const double err = (rebuilt.amplitudes() - psi.amplitudes()).norm();
  if (err > eps) {
    result.fail_stage = "reconstruction";
    result.fail_deviation = err;
    return result;
  }

  FactorizationWitness witness{ra, r, phi, eta, u_b, err};
  result.found = true;
  result.witness = std::move(witness);
  return result;
}

ProductCheck is_product(const DensityMatrix& rho, double eps) {
  if (rho.signature().subsystems() != 2) throw signature_error("productness check needs a bipartite state");
  const DensityMatrix a = partial_trace(rho, {0});
  const DensityMatrix c = partial_trace(rho, {1});
  const Mat prod = kron(a.matrix(), c.matrix());
  ProductCheck out;
  out.distance = trace_distance(rho.matrix(), prod);
  out.product = out.distance < eps;
  return out;
}

Separability ppt_separable(const DensityMatrix& rho, const std::vector<int>& cut) {
  const DimSignature& sig = rho.signature();
  sig.check_labels(cut);
  if (cut.empty() || static_cast<int>(cut.size()) == sig.subsystems()) {
    throw signature_error("cut must be a proper bipartition");
  }
  const Mat pt = partial_transpose(rho, cut);
  const RVec eigs = hermitian_eigenvalues(pt);
  if (eigs[eigs.size() - 1] < -tolerances().psd) return Separability::entangled;
  const long dl = sig.sub(cut).total();
  const long dr = sig.total() / dl;
  const long lo = std::min(dl, dr);
  const long hi = std::max(dl, dr);
  if (lo == 2 && (hi == 2 || hi == 3)) return Separability::separable;
  return Separability::inconclusive;
}

BiseparableForm biseparable_form_check(const PureState& psi, double eps) {
  const DimSignature& sig = psi.signature();
  if (sig.subsystems() != 3) throw signature_error("form check needs a tripartite state");
  if (sig.dim(1) > 3) {
    throw signature_error("form check contract covers middle dimension <= 3 only");
  }
  const SchmidtDecomposition a_bc = schmidt(psi, {0});
  if (a_bc.rank(eps) <= 1) return BiseparableForm::A_BC_product;
  const SchmidtDecomposition ab_c = schmidt(psi, {0, 1});
  if (ab_c.rank(eps) <= 1) return BiseparableForm::AB_C_product;
  return BiseparableForm::neither;
}

std::string to_string(Separability s) {
  switch (s) {
    case Separability::separable:
      return "separable";
    case Separability::entangled:
      return "entangled";
    case Separability::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(BiseparableForm f) {
  switch (f) {
    case BiseparableForm::A_BC_product:
      return "A|BC-product";
    case BiseparableForm::AB_C_product:
      return "AB|C-product";
    case BiseparableForm::neither:
      return "neither";
  }
  return "?";
}

}  // namespace entmono
