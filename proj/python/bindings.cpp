#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entmono/core.hpp"
#include "entmono/ensemble.hpp"
#include "entmono/entropy.hpp"
#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/roof.hpp"
#include "entmono/serialize.hpp"
#include "entmono/structure.hpp"
#include "entmono/types.hpp"
#include "entmono/version.hpp"

namespace py = pybind11;
using namespace entmono;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      return py::none();
  }
}

OptimizerConfig make_opt(int restarts, long max_evals, int n_extra, double tol,
                         std::uint64_t seed, int threads) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_evals = max_evals;
  cfg.n_extra = n_extra;
  cfg.tol = tol;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

py::object any_to_py(AnyState state) {
  if (std::holds_alternative<PureState>(state)) {
    return py::cast(std::get<PureState>(std::move(state)));
  }
  return py::cast(std::get<DensityMatrix>(std::move(state)));
}

}  // namespace

PYBIND11_MODULE(_entmono, m) {
  m.doc() = "entanglement measures, convex roofs, and split comparisons";
  m.attr("__version__") = kVersion;

  py::register_exception<signature_error>(m, "SignatureError", PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<io_error>(m, "StateIOError", PyExc_OSError);

  py::class_<PureState>(m, "PureState")
      .def(py::init([](const Vec& amplitudes, const std::vector<int>& dims) {
             return PureState(amplitudes, DimSignature(dims));
           }),
           py::arg("amplitudes"), py::arg("dims"))
      .def_property_readonly("amplitudes",
                             [](const PureState& s) -> Vec { return s.amplitudes(); })
      .def_property_readonly("dims",
                             [](const PureState& s) { return s.signature().dims(); })
      .def("projector", &PureState::projector)
      .def("__repr__", [](const PureState& s) {
        return "PureState(dims=" + s.signature().to_string() + ")";
      });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const Mat& matrix, const std::vector<int>& dims) {
             return DensityMatrix(matrix, DimSignature(dims));
           }),
           py::arg("matrix"), py::arg("dims"))
      .def_property_readonly("matrix",
                             [](const DensityMatrix& r) -> Mat { return r.matrix(); })
      .def_property_readonly("dims",
                             [](const DensityMatrix& r) { return r.signature().dims(); })
      .def("spectrum", [](const DensityMatrix& r) -> RVec { return r.spectrum(); })
      .def("rank", &DensityMatrix::rank)
      .def("__repr__", [](const DensityMatrix& r) {
        return "DensityMatrix(dims=" + r.signature().to_string() + ")";
      });

  // linear-algebra layer
  m.def(
      "partial_trace",
      [](const DensityMatrix& rho, const std::vector<int>& keep) {
        return partial_trace(rho, keep);
      },
      py::arg("rho"), py::arg("keep"));
  m.def(
      "reduced_density",
      [](const PureState& psi, const std::vector<int>& keep) {
        return reduced_density(psi, keep);
      },
      py::arg("psi"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const DensityMatrix& rho, const std::vector<int>& transposed) -> Mat {
        return partial_transpose(rho, transposed);
      },
      py::arg("rho"), py::arg("transposed"));
  m.def("purify", &purify, py::arg("rho"));
  m.def(
      "schmidt",
      [](const PureState& psi, const std::vector<int>& left) {
        const SchmidtDecomposition s = schmidt(psi, left);
        return py::make_tuple(s.coefficients, s.left, s.right);
      },
      py::arg("psi"), py::arg("left"),
      "Returns (coefficients, left_vectors, right_vectors), coefficients descending.");

  // states and sampling
  m.def("bell_pair", &bell_pair);
  m.def("ghz_state", &ghz_state, py::arg("local_dim") = 2);
  m.def("w_state", &w_state);
  m.def("bell_with_spectator", &bell_with_spectator, py::arg("dim_c") = 2);
  m.def(
      "random_pure",
      [](const std::vector<int>& dims, std::uint64_t seed) {
        return random_pure(DimSignature(dims), seed);
      },
      py::arg("dims"), py::arg("seed"));
  m.def(
      "random_density",
      [](const std::vector<int>& dims, int rank, std::uint64_t seed) {
        return random_density(DimSignature(dims), rank, seed);
      },
      py::arg("dims"), py::arg("rank"), py::arg("seed"));
  m.def(
      "random_unitary",
      [](int dim, std::uint64_t seed) -> Mat {
        Rng rng(seed);
        return random_unitary(dim, rng);
      },
      py::arg("dim"), py::arg("seed"));
  m.def(
      "make_product_family",
      [](const PureState& phi, const PureState& eta, const Mat& u_b, int dim_b) {
        return make_product_family(phi, eta, u_b, dim_b);
      },
      py::arg("phi"), py::arg("eta"), py::arg("u_b"), py::arg("dim_b"));
  m.def(
      "ensemble_state",
      [](const std::string& family, const std::vector<int>& dims, int count, int rank,
         std::uint64_t seed, int index) {
        EnsembleSpec spec;
        spec.family = family;
        spec.dims = dims;
        spec.count = count;
        spec.rank = rank;
        if (spec.pure()) return any_to_py(ensemble_pure(spec, seed, index));
        return any_to_py(ensemble_density(spec, seed, index));
      },
      py::arg("family"), py::arg("dims"), py::arg("count"), py::arg("rank"), py::arg("seed"),
      py::arg("index"),
      "Member `index` of the deterministic ensemble; see the CLI gen command.");

  // entropies and measures
  m.def(
      "entropy",
      [](const DensityMatrix& rho, const std::string& spec) {
        return entropy(rho, parse_entropy_spec(spec));
      },
      py::arg("rho"), py::arg("spec") = "vn");
  m.def(
      "pure_measure",
      [](const PureState& psi, const std::vector<int>& cut, const std::string& spec) {
        return pure_measure(psi, cut, parse_measure_spec(spec));
      },
      py::arg("psi"), py::arg("cut"), py::arg("spec") = "eoe");
  m.def(
      "negativity",
      [](const DensityMatrix& rho, const std::vector<int>& transposed) {
        return negativity(rho, transposed);
      },
      py::arg("rho"), py::arg("transposed"));
  m.def(
      "concavity_probe",
      [](const std::string& spec, int dim, int trials, std::uint64_t seed) {
        return json_to_py(to_json(concavity_probe(parse_entropy_spec(spec), dim, trials, seed)));
      },
      py::arg("spec"), py::arg("dim"), py::arg("trials"), py::arg("seed"));
  m.def(
      "measure_concavity_probe",
      [](const std::string& spec, int dim, int trials, std::uint64_t seed) {
        return json_to_py(
            to_json(measure_concavity_probe(parse_measure_spec(spec), dim, trials, seed)));
      },
      py::arg("spec"), py::arg("dim"), py::arg("trials"), py::arg("seed"));

  // convex roof
  m.def(
      "roof_value",
      [](const DensityMatrix& rho, const std::vector<int>& cut, const std::string& spec,
         int restarts, long max_evals, int n_extra, double tol, std::uint64_t seed, int threads) {
        const RoofResult res = roof_value(rho, cut, parse_measure_spec(spec),
                                          make_opt(restarts, max_evals, n_extra, tol, seed,
                                                   threads));
        return json_to_py(to_json(res));
      },
      py::arg("rho"), py::arg("cut"), py::arg("spec") = "eoe", py::arg("restarts") = 32,
      py::arg("max_evals") = 10000, py::arg("n_extra") = 2, py::arg("tol") = 1e-8,
      py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "e_g_roof",
      [](const DensityMatrix& rho, const std::vector<int>& cut, const std::string& spec,
         const std::string& g, int restarts, long max_evals, int n_extra, double tol,
         std::uint64_t seed, int threads) {
        const RoofResult res = e_g_roof(rho, cut, parse_measure_spec(spec), g,
                                        make_opt(restarts, max_evals, n_extra, tol, seed,
                                                 threads));
        return json_to_py(to_json(res));
      },
      py::arg("rho"), py::arg("cut"), py::arg("spec"), py::arg("g"), py::arg("restarts") = 32,
      py::arg("max_evals") = 10000, py::arg("n_extra") = 2, py::arg("tol") = 1e-8,
      py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "wootters_eof",
      [](const DensityMatrix& rho) {
        const WoottersResult w = wootters_eof(rho);
        return py::make_tuple(w.concurrence, w.eof);
      },
      py::arg("rho"), "Returns (concurrence, eof) for a two-qubit state.");

  // split comparison and structure
  m.def(
      "disentangling_gap",
      [](py::object state, const std::string& spec) {
        const MeasureSpec ms = parse_measure_spec(spec);
        if (py::isinstance<PureState>(state)) {
          return json_to_py(to_json(disentangling_gap(state.cast<const PureState&>(), ms)));
        }
        return json_to_py(to_json(disentangling_gap(state.cast<const DensityMatrix&>(), ms)));
      },
      py::arg("state"), py::arg("spec") = "eoe");
  m.def(
      "ckw_check",
      [](const PureState& psi) { return json_to_py(to_json(ckw_check(psi))); }, py::arg("psi"));
  m.def(
      "alpha_search",
      [](const std::vector<PureState>& samples, const std::string& spec, double lo, double hi,
         double resolution) {
        AuditConfig cfg;
        cfg.alpha_lo = lo;
        cfg.alpha_hi = hi;
        cfg.alpha_resolution = resolution;
        std::vector<AuditRecord> records;
        const AlphaSearchResult res =
            alpha_search(samples, parse_measure_spec(spec), cfg, &records);
        Json j = to_json(res);
        Json recs = Json::array();
        for (const AuditRecord& rec : records) recs.push_back(to_json(rec));
        j["records"] = recs;
        return json_to_py(j);
      },
      py::arg("samples"), py::arg("spec") = "eoe", py::arg("lo") = 0.05, py::arg("hi") = 16.0,
      py::arg("resolution") = 1e-3);
  m.def(
      "witness_factorization",
      [](const PureState& psi, double eps) {
        return json_to_py(to_json(witness_factorization(psi, eps)));
      },
      py::arg("psi"), py::arg("eps") = 1e-6);
  m.def(
      "is_product",
      [](const DensityMatrix& rho, double eps) {
        const ProductCheck c = is_product(rho, eps);
        return py::make_tuple(c.product, c.distance);
      },
      py::arg("rho"), py::arg("eps") = 1e-8, "Returns (is_product, trace_distance).");
  m.def(
      "ppt_separable",
      [](const DensityMatrix& rho, const std::vector<int>& cut) {
        return to_string(ppt_separable(rho, cut));
      },
      py::arg("rho"), py::arg("cut"));
  m.def(
      "biseparable_form_check",
      [](const PureState& psi, double eps) { return to_string(biseparable_form_check(psi, eps)); },
      py::arg("psi"), py::arg("eps") = 1e-6);

  // state files
  m.def(
      "load_state", [](const std::string& path) { return any_to_py(load_state(path)); },
      py::arg("path"));
  m.def(
      "save_state",
      [](py::object state, const std::string& path) {
        if (py::isinstance<PureState>(state)) {
          write_json_file(state_to_json(state.cast<const PureState&>()), path);
        } else {
          write_json_file(state_to_json(state.cast<const DensityMatrix&>()), path);
        }
      },
      py::arg("state"), py::arg("path"));
}
