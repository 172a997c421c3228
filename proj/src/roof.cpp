#include "entmono/roof.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "entmono/core.hpp"
#include "entmono/rng.hpp"

namespace entmono {

Mat Decomposition::reconstruct() const {
  if (states.empty()) throw numeric_error("empty decomposition");
  const long d = states[0].dim();
  Mat acc = Mat::Zero(d, d);
  for (size_t j = 0; j < states.size(); ++j) {
    acc.noalias() += weights[j] * (states[j].amplitudes() * states[j].amplitudes().adjoint());
  }
  return acc;
}

double Decomposition::reconstruction_error(const DensityMatrix& rho) const {
  return (reconstruct() - rho.matrix()).cwiseAbs().maxCoeff();
}

ConvexG lookup_convex_g(const std::string& name) {
  if (name == "identity") {
    return {name, [](double x) { return x; }};
  }
  if (name == "square") {
    return {name, [](double x) { return x * x; }};
  }
  if (name == "cube") {
    return {name, [](double x) { return x * x * x; }};
  }
  if (name.rfind("power:", 0) == 0) {
    const std::string tail = name.substr(6);
    double k = 0.0;
    try {
      size_t used = 0;
      k = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw signature_error("cannot parse exponent in '" + name + "'");
    }
    if (k < 1.0) throw signature_error("power exponent must be >= 1 to stay convex");
    return {name, [k](double x) { return std::pow(x, k); }};
  }
  throw signature_error("unknown composition function '" + name + "'");
}

namespace {

using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRow = Eigen::Map<const RowMat>;

/// Normalized member measure from the unnormalized cut-side gram
/// G = M M^dag (w = Tr G). Everything the catalog needs is a function of the
/// gram spectrum; concurrence and tangle shortcut through the purity.
struct Evaluator {
  MeasureSpec spec;
  EntropySpec entropy;        // resolved entropy payload where applicable
  bool entropy_backed = false;
  std::function<double(double)> g;  // composition; empty means identity

  static Evaluator make(const MeasureSpec& spec, const std::string& g_name) {
    Evaluator ev;
    ev.spec = spec;
    switch (spec.kind) {
      case MeasureKind::entropyOfEntanglement:
        ev.entropy = spec.entropy;
        ev.entropy_backed = true;
        break;
      case MeasureKind::renyiEnt:
        ev.entropy = EntropySpec::renyi_alpha(spec.param);
        ev.entropy_backed = true;
        break;
      case MeasureKind::tsallisEnt:
        ev.entropy = EntropySpec::tsallis_q(spec.param);
        ev.entropy_backed = true;
        break;
      default:
        break;
    }
    if (!g_name.empty() && g_name != "identity") ev.g = lookup_convex_g(g_name).fn;
    return ev;
  }

  double measure_from_gram(const Mat& gram, double w) const {
    if (spec.kind == MeasureKind::concurrence || spec.kind == MeasureKind::tangle) {
      const double purity = gram.squaredNorm() / (w * w);
      const double t = std::max(0.0, 2.0 * (1.0 - purity));
      return spec.kind == MeasureKind::tangle ? t : std::sqrt(t);
    }
    RVec s = hermitian_eigenvalues(gram);
    for (long i = 0; i < s.size(); ++i) s[i] = std::max(0.0, s[i]) / w;
    if (entropy_backed) return entropy_from_spectrum(s, entropy);
    switch (spec.kind) {
      case MeasureKind::gConcurrence: {
        double logsum = 0.0;
        for (long i = 0; i < s.size(); ++i) {
          if (s[i] <= 0.0) return 0.0;
          logsum += std::log(s[i]);
        }
        const double d = static_cast<double>(s.size());
        return d * std::exp(logsum / d);
      }
      case MeasureKind::negativity: {
        double c = 0.0;
        for (long i = 0; i < s.size(); ++i) c += std::sqrt(s[i]);
        return std::max(0.0, 0.5 * (c * c - 1.0));
      }
      default:
        throw numeric_error("unreachable measure kind");
    }
  }

  /// weight times (optionally composed) member measure
  double value(const Mat& gram, double w) const {
    if (w < kWeightFloor) return 0.0;
    const double e = measure_from_gram(gram, w);
    return w * (g ? g(e) : e);
  }
};

struct Problem {
  long dl = 0;
  long dr = 0;
  Evaluator eval;
};

double column_value(const Problem& pb, const Mat& a, int k, Mat& gwork) {
  const double w = a.col(k).squaredNorm();
  if (w < kWeightFloor) return 0.0;
  MapRow m(a.col(k).data(), pb.dl, pb.dr);
  gwork.noalias() = m * m.adjoint();
  return pb.eval.value(gwork, w);
}

double total_objective(const Problem& pb, const Mat& a, Mat& gwork) {
  double total = 0.0;
  for (int k = 0; k < a.cols(); ++k) total += column_value(pb, a, k, gwork);
  return total;
}

// The 0.02 entry catches descent directions whose optimum sits at tiny
// angles; coarser-only grids overshoot those valleys and stall early.
constexpr double kThetaGrid[] = {0.02, 0.08, 0.25, 0.55, 0.95, 1.45};
constexpr double kPhiGrid[] = {0.0,           M_PI / 3.0,     2.0 * M_PI / 3.0,
                               M_PI,          4.0 * M_PI / 3.0, 5.0 * M_PI / 3.0};

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  Mat a;
  bool converged = false;
  long evals = 0;
  int sweeps = 0;
  double initial = 0.0;
};

// Consecutive unproductive kicks before a restart settles.
constexpr int kKickFailCap = 4;
constexpr double kKickAngle = 0.3;

RestartOutcome refine(const Problem& pb, Mat a, const OptimizerConfig& cfg,
                      std::uint64_t kick_seed) {
  const int n = static_cast<int>(a.cols());
  const long dl = pb.dl;
  Mat g11(dl, dl), g22(dl, dl), x(dl, dl), h(dl, dl), gp1(dl, dl), gp2(dl, dl), gw(dl, dl);
  RestartOutcome out;
  // Work is metered in member evaluations: one unit is one single-member
  // measure evaluation, so a full objective costs n units and a two-column
  // probe costs 2. The configured budget is in full-objective equivalents.
  const long kMaxLong = std::numeric_limits<long>::max();
  const long unit_budget =
      cfg.max_evals > kMaxLong / (n + 1) ? kMaxLong : cfg.max_evals * n;
  long units = 0;
  bool budget_hit = false;
  int sweeps = 0;
  const auto full_eval = [&](const Mat& cols) {
    units += n;
    return total_objective(pb, cols, gw);
  };

  // Version stamps let sweeps skip pairs whose columns are unchanged since
  // the pair last failed to improve; the pair objective depends only on its
  // own two columns, so the skip is exact.
  std::vector<long> col_version(static_cast<size_t>(n), 0);
  struct PairSeen {
    long v1 = -1;
    long v2 = -1;
  };
  std::vector<PairSeen> seen(static_cast<size_t>(n) * static_cast<size_t>(n));

  const auto apply_rotation = [&](Mat& cols, int k1, int k2, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cxd e(std::cos(phi), std::sin(phi));
    const Vec t1 = c * cols.col(k1) + s * e * cols.col(k2);
    cols.col(k2) = -s * std::conj(e) * cols.col(k1) + c * cols.col(k2);
    cols.col(k1) = t1;
    ++col_version[static_cast<size_t>(k1)];
    ++col_version[static_cast<size_t>(k2)];
  };

  // Sweep two-column rotations until a full sweep improves by less than the
  // relative tolerance (returns true) or the probe budget runs out (false).
  // `scale` shrinks the rotation-angle grid so late phases can resolve the
  // tiny rotations coarse probing overshoots.
  const auto pair_descend = [&](Mat& cols, double& total, double scale) -> bool {
    std::fill(seen.begin(), seen.end(), PairSeen{});
    while (total > cfg.value_floor) {
      ++sweeps;
      const double sweep_start = total;
      for (int k1 = 0; k1 < n && !budget_hit; ++k1) {
        for (int k2 = k1 + 1; k2 < n && !budget_hit; ++k2) {
          PairSeen& sp = seen[static_cast<size_t>(k1) * static_cast<size_t>(n) +
                              static_cast<size_t>(k2)];
          if (sp.v1 == col_version[static_cast<size_t>(k1)] &&
              sp.v2 == col_version[static_cast<size_t>(k2)]) {
            continue;  // unchanged since this pair last failed to improve
          }
          const auto mark_seen = [&] {
            sp.v1 = col_version[static_cast<size_t>(k1)];
            sp.v2 = col_version[static_cast<size_t>(k2)];
          };
          MapRow m1(cols.col(k1).data(), dl, pb.dr);
          MapRow m2(cols.col(k2).data(), dl, pb.dr);
          g11.noalias() = m1 * m1.adjoint();
          g22.noalias() = m2 * m2.adjoint();
          const double w1 = g11.trace().real();
          const double w2 = g22.trace().real();
          if (w1 + w2 < kWeightFloor) {
            mark_seen();
            continue;
          }
          const double f0 = pb.eval.value(g11, w1) + pb.eval.value(g22, w2);
          if (f0 < 1e-15) {  // the objective is nonnegative
            mark_seen();
            continue;
          }
          x.noalias() = m1 * m2.adjoint();
          const auto probe = [&](double theta, double phi) {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const cxd e(std::cos(phi), std::sin(phi));
            h = std::conj(e) * x + e * x.adjoint();
            const double c2 = c * c, s2 = s * s, cs = c * s;
            const double th = h.trace().real();
            gp1 = c2 * g11 + s2 * g22 + cs * h;
            gp2 = s2 * g11 + c2 * g22 - cs * h;
            units += 2;
            return pb.eval.value(gp1, c2 * w1 + s2 * w2 + cs * th) +
                   pb.eval.value(gp2, s2 * w1 + c2 * w2 - cs * th);
          };
          double best_f = f0, best_t = 0.0, best_p = 0.0;
          for (double t : kThetaGrid) {
            for (double p : kPhiGrid) {
              const double f = probe(t * scale, p);
              if (f < best_f) {
                best_f = f;
                best_t = t * scale;
                best_p = p;
              }
            }
          }
          // Applying the best grid point outright beats polishing it with a
          // line search: repeated sweeps over progressively finer grids buy
          // more descent per probe than precision on any single rotation.
          if (best_f < f0 - 1e-14 * std::max(1.0, f0)) {
            apply_rotation(cols, k1, k2, best_t, best_p);
            total += best_f - f0;
          } else {
            mark_seen();
          }
          if (units >= unit_budget) budget_hit = true;
        }
      }
      if (budget_hit) return false;
      if (sweep_start - total <= cfg.tol * std::max(std::abs(sweep_start), 1e-12)) return true;
    }
    return true;  // at the value floor
  };

  // Coarse-to-fine: each phase re-sweeps with a 10x finer angle grid.
  const auto full_descend = [&](Mat& cols, double& total) -> bool {
    for (const double scale : {1.0, 0.1, 0.01, 0.001}) {
      if (!pair_descend(cols, total, scale)) return false;
      if (total <= cfg.value_floor) return true;
    }
    return true;
  };

  double total = full_eval(a);
  out.initial = total;
  bool stationary = full_descend(a, total);
  total = full_eval(a);  // drop drift accumulated by the updates

  // Pairwise-stationary points are not always global minima: kick the best
  // ensemble with random rotations and re-descend while the budget lasts,
  // keeping improvements. A restart settles after kKickFailCap dead kicks.
  Mat best_a = a;
  double best_total = total;
  bool best_stationary = stationary;
  Rng rng(kick_seed);
  int fails = 0;
  while (stationary && best_total > cfg.value_floor && !budget_hit && fails < kKickFailCap) {
    a = best_a;
    for (int j = 0; j < n; ++j) {
      const int k1 = static_cast<int>(rng.uniform() * n) % n;
      int k2 = static_cast<int>(rng.uniform() * (n - 1)) % (n - 1);
      if (k2 >= k1) ++k2;
      apply_rotation(a, k1, k2, kKickAngle * rng.gaussian(), 2.0 * M_PI * rng.uniform());
    }
    total = full_eval(a);
    stationary = full_descend(a, total);
    total = full_eval(a);
    if (total < best_total - 1e-13 * std::max(1.0, best_total)) {
      best_total = total;
      best_a = a;
      best_stationary = stationary;
      fails = 0;
    } else {
      ++fails;
    }
  }
  out.converged = best_stationary || best_total <= cfg.value_floor;
  out.value = best_total;
  out.a = std::move(best_a);
  out.evals = (units + n - 1) / n;
  out.sweeps = sweeps;
  return out;
}

struct SpectralEnsemble {
  Mat b;  // d x r, column j = sqrt(p_j) |psi_j>
  int rank = 0;
};

SpectralEnsemble spectral_ensemble(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(rho);
  if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue solver failed");
  const long d = rho.rows();
  std::vector<long> idx;
  for (long k = d - 1; k >= 0; --k) {
    if (solver.eigenvalues()[k] > kWeightFloor) idx.push_back(k);
  }
  SpectralEnsemble se;
  se.rank = static_cast<int>(idx.size());
  se.b.resize(d, se.rank);
  for (int j = 0; j < se.rank; ++j) {
    se.b.col(j) = std::sqrt(solver.eigenvalues()[idx[static_cast<size_t>(j)]]) *
                  solver.eigenvectors().col(idx[static_cast<size_t>(j)]);
  }
  return se;
}

std::vector<int> inverse_order(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (size_t k = 0; k < order.size(); ++k) inv[static_cast<size_t>(order[k])] = static_cast<int>(k);
  return inv;
}

RoofResult roof_minimize(const DensityMatrix& rho, const std::vector<int>& cut,
                         const MeasureSpec& spec, const std::string& g_name,
                         const OptimizerConfig& cfg) {
  spec.validate();
  const DimSignature& sig = rho.signature();
  sig.check_labels(cut);
  if (cut.empty() || static_cast<int>(cut.size()) == sig.subsystems()) {
    throw signature_error("cut must be a proper bipartition");
  }
  if (cfg.restarts < 1 || cfg.max_evals < 1 || cfg.n_extra < 0 || cfg.tol <= 0.0) {
    throw signature_error("invalid optimizer configuration");
  }
  std::vector<int> front = cut;
  std::sort(front.begin(), front.end());
  std::vector<int> order = front;
  for (int rest : sig.complement(front)) order.push_back(rest);
  const std::vector<int> inv = inverse_order(order);
  const DensityMatrix perm = permute_subsystems(rho, order);

  Problem pb;
  pb.dl = sig.sub(front).total();
  pb.dr = sig.total() / pb.dl;
  pb.eval = Evaluator::make(spec, g_name);

  const SpectralEnsemble se = spectral_ensemble(perm.matrix());
  const int r = se.rank;
  RoofResult result;

  if (r == 1) {
    // pure state: the only decomposition is the state itself
    const PureState psi =
        permute_subsystems(PureState::normalized(se.b.col(0), perm.signature()), inv);
    Mat gw(pb.dl, pb.dl);
    Mat a = se.b;
    result.value = column_value(pb, a, 0, gw);
    result.spectral_average = result.value;
    result.certificate.weights = {1.0};
    result.certificate.states = {psi};
    result.converged = true;
    result.restarts = 1;
    result.evaluations = 1;
    result.best_seed = cfg.seed;
    return result;
  }

  const long n = std::min<long>(r + cfg.n_extra, static_cast<long>(r) * r);
  std::vector<std::uint64_t> seeds(static_cast<size_t>(cfg.restarts));
  for (int m = 0; m < cfg.restarts; ++m) seeds[static_cast<size_t>(m)] = derive_seed(cfg.seed, static_cast<std::uint64_t>(m));

  std::vector<RestartOutcome> outcomes(static_cast<size_t>(cfg.restarts));
  std::vector<char> ran(static_cast<size_t>(cfg.restarts), 0);

  const auto run_restart = [&](int m) {
    Mat u;
    if (m == 0) {
      u = Mat::Zero(n, r);
      u.topRows(r) = Mat::Identity(r, r);
    } else {
      Rng rng(seeds[static_cast<size_t>(m)]);
      u = random_isometry(static_cast<int>(n), r, rng);
    }
    Mat a = se.b * u.transpose();
    outcomes[static_cast<size_t>(m)] =
        refine(pb, std::move(a), cfg, derive_seed(seeds[static_cast<size_t>(m)], 1));
    ran[static_cast<size_t>(m)] = 1;
  };

  const int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int m = 0; m < cfg.restarts; ++m) {
      run_restart(m);
      // a value at the floor cannot be improved by later restarts
      if (outcomes[static_cast<size_t>(m)].value <= cfg.value_floor) break;
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        int m;
        while ((m = next.fetch_add(1)) < cfg.restarts) run_restart(m);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge: lowest value wins, ties and floor hits go to the lowest restart
  // index, so serial early exit and threaded full runs agree on the winner.
  int best = -1;
  for (int m = 0; m < cfg.restarts; ++m) {
    if (!ran[static_cast<size_t>(m)]) continue;
    const double v = outcomes[static_cast<size_t>(m)].value;
    if (best < 0 || (outcomes[static_cast<size_t>(best)].value > cfg.value_floor &&
                     v < outcomes[static_cast<size_t>(best)].value)) {
      best = m;
    }
    result.evaluations += outcomes[static_cast<size_t>(m)].evals;
    result.sweeps += outcomes[static_cast<size_t>(m)].sweeps;
    ++result.restarts;
  }
  const RestartOutcome& win = outcomes[static_cast<size_t>(best)];
  result.value = win.value;
  result.spectral_average = outcomes[0].initial;
  result.converged = win.converged;
  result.best_restart = best;
  result.best_seed = seeds[static_cast<size_t>(best)];

  for (long k = 0; k < win.a.cols(); ++k) {
    const double w = win.a.col(k).squaredNorm();
    if (w < kWeightFloor) continue;
    result.certificate.weights.push_back(w);
    result.certificate.states.push_back(
        permute_subsystems(PureState::normalized(win.a.col(k), perm.signature()), inv));
  }
  return result;
}

}  // namespace

Decomposition decomposition_from_unitary(const DensityMatrix& rho, const Mat& u) {
  [[maybe_unused]] const Isometry checked(u);  // raises unless columns are orthonormal
  const SpectralEnsemble se = spectral_ensemble(rho.matrix());
  if (u.cols() != se.rank) {
    throw signature_error("mixing matrix needs exactly rank(rho) = " +
                          std::to_string(se.rank) + " columns");
  }
  const Mat a = se.b * u.transpose();
  Decomposition dec;
  for (long k = 0; k < a.cols(); ++k) {
    const double w = a.col(k).squaredNorm();
    if (w < kWeightFloor) continue;
    dec.weights.push_back(w);
    dec.states.push_back(PureState::normalized(a.col(k), rho.signature()));
  }
  return dec;
}

RoofResult roof_value(const DensityMatrix& rho, const std::vector<int>& cut,
                      const MeasureSpec& spec, const OptimizerConfig& cfg) {
  return roof_minimize(rho, cut, spec, "", cfg);
}

RoofResult e_g_roof(const DensityMatrix& rho, const std::vector<int>& cut,
                    const MeasureSpec& base, const std::string& g_name,
                    const OptimizerConfig& cfg) {
  lookup_convex_g(g_name);  // raises on a non-admissible descriptor
  return roof_minimize(rho, cut, base, g_name, cfg);
}

WoottersResult wootters_eof(const DensityMatrix& rho) {
  if (!(rho.signature() == DimSignature({2, 2}))) {
    throw signature_error("two-qubit oracle needs signature [2,2]");
  }
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Mat flipped = yy * rho.matrix().conjugate() * yy;
  const Mat prod = rho.matrix() * flipped;
  Eigen::ComplexEigenSolver<Mat> solver(prod);
  if (solver.info() != Eigen::Success) throw numeric_error("eigenvalue solver failed");
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) lam[static_cast<size_t>(k)] = std::sqrt(std::max(0.0, solver.eigenvalues()[k].real()));
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  WoottersResult out;
  out.concurrence = std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
  const double c2 = out.concurrence * out.concurrence;
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c2)));
  const auto h2 = [](double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
  };
  out.eof = h2(x);
  return out;
}

}  // namespace entmono
