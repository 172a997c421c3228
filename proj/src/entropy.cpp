#include "entmono/entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "entmono/core.hpp"
#include "entmono/rng.hpp"

namespace entmono {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double parse_param(const std::string& text, const std::string& prefix) {
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

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ConcaveG lookup_concave_g(const std::string& name) {
  if (name == "plog") {
    return {name, [](double p) { return -xlog2x(p); }};
  }
  if (name == "quadratic") {
    return {name, [](double p) { return p * (1.0 - p); }};
  }
  if (name == "sqrt") {
    return {name, [](double p) { return std::sqrt(p) - p; }};
  }
  if (name.rfind("power:", 0) == 0) {
    const double q = parse_param(name, "power:");
    if (q <= 0.0 || q == 1.0) throw signature_error("power exponent must be > 0 and != 1");
    return {name, [q](double p) { return (p - std::pow(p, q)) / (q - 1.0); }};
  }
  throw signature_error("unknown scalar function '" + name + "'");
}

EntropySpec EntropySpec::von_neumann(double base) {
  EntropySpec s;
  s.kind = EntropyKind::vonNeumann;
  s.log_base = base;
  s.validate();
  return s;
}

EntropySpec EntropySpec::tsallis_q(double q) {
  EntropySpec s;
  s.kind = EntropyKind::tsallis;
  s.param = q;
  s.validate();
  return s;
}

EntropySpec EntropySpec::renyi_alpha(double alpha, double base) {
  EntropySpec s;
  s.kind = EntropyKind::renyi;
  s.param = alpha;
  s.log_base = base;
  s.validate();
  return s;
}

EntropySpec EntropySpec::linear_entropy() {
  EntropySpec s;
  s.kind = EntropyKind::linear;
  s.validate();
  return s;
}

EntropySpec EntropySpec::g_trace(const std::string& name) {
  EntropySpec s;
  s.kind = EntropyKind::gTrace;
  s.g_name = name;
  s.validate();
  return s;
}

void EntropySpec::validate() const {
  if (log_base <= 1.0) throw signature_error("log base must be > 1");
  switch (kind) {
    case EntropyKind::vonNeumann:
    case EntropyKind::linear:
      break;
    case EntropyKind::tsallis:
      if (!(param > 0.0)) throw signature_error("tsallis q must be > 0");
      break;
    case EntropyKind::renyi:
      if (!(param >= 0.0)) throw signature_error("renyi alpha must be >= 0");
      break;
    case EntropyKind::gTrace:
      lookup_concave_g(g_name);  // raises on unknown name
      break;
  }
}

std::string EntropySpec::name() const {
  switch (kind) {
    case EntropyKind::vonNeumann:
      return "vn";
    case EntropyKind::tsallis:
      return "tsallis:" + format_param(param);
    case EntropyKind::renyi:
      return "renyi:" + format_param(param);
    case EntropyKind::linear:
      return "linear";
    case EntropyKind::gTrace:
      return "gtrace:" + g_name;
  }
  return "?";
}

EntropySpec parse_entropy_spec(const std::string& text) {
  if (text == "vn" || text == "vonneumann") return EntropySpec::von_neumann();
  if (text == "linear") return EntropySpec::linear_entropy();
  if (text.rfind("tsallis:", 0) == 0) return EntropySpec::tsallis_q(parse_param(text, "tsallis:"));
  if (text.rfind("renyi:", 0) == 0) return EntropySpec::renyi_alpha(parse_param(text, "renyi:"));
  if (text.rfind("gtrace:", 0) == 0) return EntropySpec::g_trace(text.substr(7));
  throw signature_error("unknown entropy spec '" + text + "'");
}

double entropy_from_spectrum(const RVec& spectrum, const EntropySpec& spec) {
  spec.validate();
  // treat values at or below the weight floor as exact zeros
  const double kOne = 1.0 - 1e-12;
  switch (spec.kind) {
    case EntropyKind::vonNeumann: {
      double s = 0.0;
      for (long k = 0; k < spectrum.size(); ++k) s -= xlog2x(spectrum[k]);
      return s / std::log2(spec.log_base);
    }
    case EntropyKind::tsallis: {
      const double q = spec.param;
      if (std::abs(q - 1.0) < 1e-12) {
        double s = 0.0;
        for (long k = 0; k < spectrum.size(); ++k) {
          const double p = spectrum[k];
          if (p > 0.0) s -= p * std::log(p);
        }
        return s;
      }
      double sum = 0.0;
      for (long k = 0; k < spectrum.size(); ++k) {
        const double p = spectrum[k];
        if (p > 0.0) sum += std::pow(p, q);
      }
      return (1.0 - sum) / (q - 1.0);
    }
    case EntropyKind::renyi: {
      const double a = spec.param;
      if (std::abs(a - 1.0) < 1e-12) {
        double s = 0.0;
        for (long k = 0; k < spectrum.size(); ++k) s -= xlog2x(spectrum[k]);
        return s / std::log2(spec.log_base);
      }
      double sum = 0.0;
      for (long k = 0; k < spectrum.size(); ++k) {
        const double p = spectrum[k];
        if (p > kWeightFloor) sum += std::pow(p, a);
      }
      if (sum <= 0.0) throw numeric_error("empty spectrum");
      const double value = std::log2(sum) / ((1.0 - a) * std::log2(spec.log_base));
      // rounding can leave a pure spectrum epsilon-negative
      return (value < 0.0 && value > -1e-12) ? 0.0 : value;
    }
    case EntropyKind::linear: {
      double sum = 0.0;
      for (long k = 0; k < spectrum.size(); ++k) sum += spectrum[k] * spectrum[k];
      return sum > kOne ? 0.0 : 1.0 - sum;
    }
    case EntropyKind::gTrace: {
      const ConcaveG g = lookup_concave_g(spec.g_name);
      double s = 0.0;
      for (long k = 0; k < spectrum.size(); ++k) s += g.fn(spectrum[k]);
      return s;
    }
  }
  throw numeric_error("unreachable entropy kind");
}

double entropy(const DensityMatrix& rho, const EntropySpec& spec) {
  return entropy_from_spectrum(rho.spectrum(), spec);
}

ConcavityReport concavity_probe(const EntropySpec& spec, int dim, int trials,
                                std::uint64_t seed) {
  spec.validate();
  if (dim < 2) throw signature_error("probe needs dim >= 2");
  if (trials < 1) throw signature_error("probe needs trials >= 1");
  ConcavityReport report;
  report.spec = spec;
  report.label = spec.name();
  report.dim = dim;
  report.trials = trials;
  report.seed = seed;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    // mixed ranks reach the boundary of the state space, where violations of
    // non-concave functionals concentrate
    const int rank1 = 1 + std::min(dim - 1, static_cast<int>(rng.uniform() * dim));
    const int rank2 = 1 + std::min(dim - 1, static_cast<int>(rng.uniform() * dim));
    const double lambda = 0.01 + 0.98 * rng.uniform();
    const DensityMatrix rho1 = random_density(dim, rank1, rng.raw());
    const DensityMatrix rho2 = random_density(dim, rank2, rng.raw());
    const Mat mix = lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix();
    const double margin =
        entropy_from_spectrum(hermitian_spectrum(mix), spec) -
        lambda * entropy(rho1, spec) - (1.0 - lambda) * entropy(rho2, spec);
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
