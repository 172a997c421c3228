#include "entmono/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entmono/core.hpp"
#include "entmono/rng.hpp"

namespace entmono {

namespace {

double param_of(const std::string& text, const std::string& prefix) {
  const std::string tail = text.substr(prefix.size());
  try {
    size_t used = 0;
    const double v = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
    return v;
  } catch (const std::exception&) {
    throw signature_error("cannot parse parameter in '" + text + "'");
  }
}

std::string trim_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

MeasureSpec MeasureSpec::eoe(EntropySpec spec) {
  MeasureSpec m;
  m.kind = MeasureKind::entropyOfEntanglement;
  m.entropy = std::move(spec);
  m.validate();
  return m;
}

MeasureSpec MeasureSpec::make(MeasureKind kind, double param) {
  MeasureSpec m;
  m.kind = kind;
  m.param = param;
  if (kind == MeasureKind::entropyOfEntanglement) m.entropy = EntropySpec::von_neumann();
  m.validate();
  return m;
}

void MeasureSpec::validate() const {
  switch (kind) {
    case MeasureKind::entropyOfEntanglement:
      entropy.validate();
      break;
    case MeasureKind::renyiEnt:
      if (!(param >= 0.0)) throw signature_error("renyi alpha must be >= 0");
      break;
    case MeasureKind::tsallisEnt:
      if (!(param > 0.0)) throw signature_error("tsallis q must be > 0");
      break;
    default:
      break;
  }
}

bool MeasureSpec::strictly_concave_flag() const {
  switch (kind) {
    case MeasureKind::entropyOfEntanglement:
      switch (entropy.kind) {
        case EntropyKind::vonNeumann:
        case EntropyKind::tsallis:
        case EntropyKind::linear:
        case EntropyKind::gTrace:
          return true;
        case EntropyKind::renyi:
          return entropy.param <= 1.0;
      }
      return false;
    case MeasureKind::concurrence:
    case MeasureKind::tangle:
    case MeasureKind::gConcurrence:
      return true;
    case MeasureKind::renyiEnt:
      return param <= 1.0;
    case MeasureKind::tsallisEnt:
      return true;
    case MeasureKind::negativity:
      return false;
  }
  return false;
}

std::string MeasureSpec::name() const {
  switch (kind) {
    case MeasureKind::entropyOfEntanglement:
      return (entropy.kind == EntropyKind::vonNeumann && entropy.log_base == 2.0)
                 ? "eoe"
                 : "eoe:" + entropy.name();
    case MeasureKind::concurrence:
      return "concurrence";
    case MeasureKind::tangle:
      return "tangle";
    case MeasureKind::gConcurrence:
      return "gconc";
    case MeasureKind::negativity:
      return "neg";
    case MeasureKind::renyiEnt:
      return "renyi:" + trim_number(param);
    case MeasureKind::tsallisEnt:
      return "tsallis:" + trim_number(param);
  }
  return "?";
}

MeasureSpec parse_measure_spec(const std::string& text) {
  if (text == "eoe") return MeasureSpec::eoe();
  if (text.rfind("eoe:", 0) == 0) return MeasureSpec::eoe(parse_entropy_spec(text.substr(4)));
  if (text == "concurrence") return MeasureSpec::make(MeasureKind::concurrence);
  if (text == "tangle") return MeasureSpec::make(MeasureKind::tangle);
  if (text == "gconc") return MeasureSpec::make(MeasureKind::gConcurrence);
  if (text == "neg") return MeasureSpec::make(MeasureKind::negativity);
  if (text.rfind("renyi:", 0) == 0)
    return MeasureSpec::make(MeasureKind::renyiEnt, param_of(text, "renyi:"));
  if (text.rfind("tsallis:", 0) == 0)
    return MeasureSpec::make(MeasureKind::tsallisEnt, param_of(text, "tsallis:"));
  throw signature_error("unknown measure '" + text + "'");
}

double h_value(const DensityMatrix& rho_a, const MeasureSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case MeasureKind::entropyOfEntanglement:
      return entropy(rho_a, spec.entropy);
    case MeasureKind::concurrence: {
      const double purity = rho_a.matrix().squaredNorm();  // Tr rho^2, hermitian
      return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
    }
    case MeasureKind::tangle: {
      const double purity = rho_a.matrix().squaredNorm();
      return std::max(0.0, 2.0 * (1.0 - purity));
    }
    case MeasureKind::gConcurrence: {
      const RVec s = rho_a.spectrum();
      const long d = s.size();
      double logsum = 0.0;
      for (long k = 0; k < d; ++k) {
        if (s[k] <= 0.0) return 0.0;
        logsum += std::log(s[k]);
      }
      return static_cast<double>(d) * std::exp(logsum / static_cast<double>(d));
    }
    case MeasureKind::renyiEnt:
      return entropy(rho_a, EntropySpec::renyi_alpha(spec.param));
    case MeasureKind::tsallisEnt:
      return entropy(rho_a, EntropySpec::tsallis_q(spec.param));
    case MeasureKind::negativity:
      throw signature_error("negativity has no marginal reduction form");
  }
  throw numeric_error("unreachable measure kind");
}

double pure_measure(const PureState& psi, const std::vector<int>& cut,
                    const MeasureSpec& spec) {
  const DimSignature& sig = psi.signature();
  sig.check_labels(cut);
  if (cut.empty() || static_cast<int>(cut.size()) == sig.subsystems()) {
    throw signature_error("cut must be a proper bipartition");
  }
  if (spec.kind == MeasureKind::negativity) {
    const SchmidtDecomposition sd = schmidt(psi, cut);
    const RVec& c = sd.coefficients;
    double acc = 0.0;
    for (long i = 0; i < c.size(); ++i) {
      for (long j = i + 1; j < c.size(); ++j) acc += c[i] * c[j];
    }
    return acc;
  }
  return h_value(reduced_density(psi, cut), spec);
}

double negativity(const DensityMatrix& rho, const std::vector<int>& transposed) {
  const Mat pt = partial_transpose(rho, transposed);
  const double trace_norm = hermitian_eigenvalues(pt).cwiseAbs().sum();
  return std::max(0.0, 0.5 * (trace_norm - 1.0));
}

double lu_invariance_check(const MeasureSpec& spec, const PureState& psi,
                           const std::vector<int>& cut, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw signature_error("check needs trials >= 1");
  const DimSignature& sig = psi.signature();
  sig.check_labels(cut);
  std::vector<int> order = cut;
  for (int r : sig.complement(cut)) order.push_back(r);
  const PureState front = permute_subsystems(psi, order);
  const long dl = sig.sub(cut).total();
  const long dr = sig.total() / dl;
  const DimSignature pair_sig({static_cast<int>(dl), static_cast<int>(dr)});
  const PureState base(front.amplitudes(), pair_sig);
  const double reference = pure_measure(base, {0}, spec);
  Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      front.amplitudes().data(), dl, dr);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const Mat ul = random_unitary(static_cast<int>(dl), rng);
    const Mat ur = random_unitary(static_cast<int>(dr), rng);
    // (U (x) V) psi in matrix form is U M V^T
    const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rotated =
        ul * m * ur.transpose();
    Vec amp = Eigen::Map<const Vec>(rotated.data(), dl * dr);
    const PureState moved = PureState::normalized(std::move(amp), pair_sig);
    worst = std::max(worst, std::abs(pure_measure(moved, {0}, spec) - reference));
  }
  return worst;
}

ConcavityReport measure_concavity_probe(const MeasureSpec& spec, int dim, int trials,
                                        std::uint64_t seed) {
  if (!spec.is_h_type()) throw signature_error("negativity has no marginal reduction form");
  if (dim < 2) throw signature_error("probe needs dim >= 2");
  if (trials < 1) throw signature_error("probe needs trials >= 1");
  ConcavityReport report;
  report.label = spec.name();
  report.dim = dim;
  report.trials = trials;
  report.seed = seed;
  report.min_margin = std::numeric_limits<double>::infinity();
  const DimSignature sig({dim});
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const int rank1 = 1 + std::min(dim - 1, static_cast<int>(rng.uniform() * dim));
    const int rank2 = 1 + std::min(dim - 1, static_cast<int>(rng.uniform() * dim));
    const double lambda = 0.01 + 0.98 * rng.uniform();
    const DensityMatrix rho1 = random_density(dim, rank1, rng.raw());
    const DensityMatrix rho2 = random_density(dim, rank2, rng.raw());
    const DensityMatrix mix(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix(), sig,
                            DensityMatrix::unchecked_t{});
    const double margin = h_value(mix, spec) - lambda * h_value(rho1, spec) -
                          (1.0 - lambda) * h_value(rho2, spec);
    if (margin < report.min_margin) {
      report.min_margin = margin;
      if (margin < -tolerances().eig) {
        report.violation_found = true;
        report.witness_trial = t;
        report.witness_lambda = lambda;
        report.witness_rho1 = rho1.matrix();
        report.witness_rho2 = rho2.matrix();
      }
    }
  }
  return report;
}

}  // namespace entmono
