#include "entmono/serialize.hpp"

#include <fstream>

#include "entmono/core.hpp"

namespace entmono {

namespace {

Json packed_complex(const cxd* data, long n) {
  std::vector<double> re(static_cast<size_t>(n)), im(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    re[static_cast<size_t>(i)] = data[i].real();
    im[static_cast<size_t>(i)] = data[i].imag();
  }
  return Json{{"re", re}, {"im", im}};
}

Vec unpack_complex(const Json& j, const char* what) {
  if (!j.contains("re") || !j.contains("im")) {
    throw io_error(std::string(what) + ": missing re/im arrays");
  }
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw io_error(std::string(what) + ": re/im length mismatch");
  Vec v(static_cast<long>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) v[static_cast<long>(i)] = cxd(re[i], im[i]);
  return v;
}

}  // namespace

Json state_to_json(const PureState& psi) {
  Json j = packed_complex(psi.amplitudes().data(), psi.dim());
  j["signature"] = psi.signature().dims();
  return j;
}

Json state_to_json(const DensityMatrix& rho) {
  const long d = rho.dim();
  // flatten row-major
  std::vector<double> re(static_cast<size_t>(d * d)), im(static_cast<size_t>(d * d));
  for (long i = 0; i < d; ++i) {
    for (long k = 0; k < d; ++k) {
      re[static_cast<size_t>(i * d + k)] = rho.matrix()(i, k).real();
      im[static_cast<size_t>(i * d + k)] = rho.matrix()(i, k).imag();
    }
  }
  Json j{{"re", re}, {"im", im}};
  j["signature"] = rho.signature().dims();
  return j;
}

AnyState state_from_json(const Json& j) {
  if (!j.contains("signature")) throw io_error("state: missing signature");
  DimSignature sig(j.at("signature").get<std::vector<int>>());
  const Vec flat = unpack_complex(j, "state");
  const long d = sig.total();
  if (flat.size() == d) {
    try {
      return PureState(flat, sig);
    } catch (const numeric_error& e) {
      throw io_error(std::string("state: ") + e.what());
    }
  }
  if (flat.size() == d * d) {
    Mat m(d, d);
    for (long i = 0; i < d; ++i) {
      for (long k = 0; k < d; ++k) m(i, k) = flat[i * d + k];
    }
    try {
      return DensityMatrix(std::move(m), sig);  // full validation on load
    } catch (const numeric_error& e) {
      throw io_error(std::string("state: ") + e.what());
    }
  }
  throw io_error("state: array length " + std::to_string(flat.size()) +
                 " matches neither a vector nor a matrix over signature " + sig.to_string());
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw io_error("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw io_error("write to '" + path + "' failed");
}

AnyState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

Json to_json(const OptimizerConfig& cfg) {
  return Json{{"restarts", cfg.restarts}, {"max_evals", cfg.max_evals},
              {"n_extra", cfg.n_extra},   {"tol", cfg.tol},
              {"seed", cfg.seed},         {"value_floor", cfg.value_floor},
              {"threads", cfg.threads}};
}

OptimizerConfig optimizer_from_json(const Json& j) {
  OptimizerConfig cfg;
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.max_evals = j.value("max_evals", cfg.max_evals);
  cfg.n_extra = j.value("n_extra", cfg.n_extra);
  cfg.tol = j.value("tol", cfg.tol);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.value_floor = j.value("value_floor", cfg.value_floor);
  cfg.threads = j.value("threads", cfg.threads);
  return cfg;
}

Json to_json(const EnsembleSpec& spec) {
  Json j{{"family", spec.family}, {"dims", spec.dims}, {"count", spec.count}};
  if (spec.family == "ginibre") j["rank"] = spec.rank;
  return j;
}

EnsembleSpec ensemble_from_json(const Json& j) {
  EnsembleSpec spec;
  spec.family = j.value("family", spec.family);
  spec.dims = j.value("dims", spec.dims);
  spec.count = j.value("count", spec.count);
  spec.rank = j.value("rank", spec.rank);
  spec.validate();
  return spec;
}

Json to_json(const Decomposition& dec, const DimSignature& sig) {
  (void)sig;
  Json states = Json::array();
  for (const PureState& s : dec.states) states.push_back(state_to_json(s));
  return Json{{"weights", dec.weights}, {"states", states}};
}

Json to_json(const RoofResult& result) {
  Json j{{"value", result.value},
         {"spectral_average", result.spectral_average},
         {"converged", result.converged},
         {"restarts", result.restarts},
         {"evaluations", result.evaluations},
         {"sweeps", result.sweeps},
         {"best_restart", result.best_restart},
         {"best_seed", result.best_seed}};
  if (!result.certificate.states.empty()) {
    j["certificate"] = to_json(result.certificate, result.certificate.states[0].signature());
  }
  return j;
}

Json to_json(const ConcavityReport& report) {
  Json j{{"spec", report.label},
         {"dim", report.dim},
         {"trials", report.trials},
         {"seed", report.seed},
         {"min_margin", report.min_margin},
         {"violation_found", report.violation_found}};
  if (report.violation_found) {
    const DimSignature sig({report.dim});
    Json w{{"trial", report.witness_trial}, {"lambda", report.witness_lambda}};
    w["rho1"] = state_to_json(DensityMatrix(report.witness_rho1, sig, DensityMatrix::unchecked_t{}));
    w["rho2"] = state_to_json(DensityMatrix(report.witness_rho2, sig, DensityMatrix::unchecked_t{}));
    j["witness"] = w;
  }
  return j;
}

Json to_json(const AuditRecord& record) {
  Json j{{"state", record.state},
         {"seed", record.seed},
         {"measure", record.measure},
         {"pure", record.pure},
         {"e_abc", record.e_abc},
         {"e_ab", record.e_ab},
         {"e_ac", record.e_ac},
         {"gap", record.gap},
         {"eps_gap", record.eps_gap},
         {"disentangled", record.disentangled},
         {"roofs_converged", record.roofs_converged}};
  if (record.product_distance) j["product_distance"] = *record.product_distance;
  if (record.witness) j["witness"] = to_string(*record.witness);
  if (record.alpha_result) j["alpha"] = *record.alpha_result;
  return j;
}

Json to_json(const CkwResult& result) {
  return Json{{"tau_abc", result.tau_abc},
              {"tau_ab", result.tau_ab},
              {"tau_ac", result.tau_ac},
              {"residual", result.residual}};
}

Json to_json(const AlphaSearchResult& result) {
  return Json{{"found", result.found},   {"alpha", result.alpha},
              {"lo", result.lo},         {"hi", result.hi},
              {"resolution", result.resolution}, {"samples", result.samples}};
}

Json to_json(const FactorizationResult& result) {
  Json j{{"found", result.found}};
  if (!result.found) {
    j["fail_stage"] = result.fail_stage;
    j["fail_deviation"] = result.fail_deviation;
    return j;
  }
  const FactorizationWitness& w = *result.witness;
  j["dim_b1"] = w.dim_b1;
  j["dim_b2"] = w.dim_b2;
  j["phi"] = state_to_json(w.phi);
  j["eta"] = state_to_json(w.eta);
  j["u_b"] = packed_complex(w.u_b.data(), w.u_b.size());
  j["u_b"]["rows"] = w.u_b.rows();
  j["reconstruction_error"] = w.reconstruction_error;
  return j;
}

}  // namespace entmono
