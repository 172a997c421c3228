#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>

#include "entmono/core.hpp"
#include "entmono/serialize.hpp"
#include "entmono/types.hpp"

using namespace entmono;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("entmono_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("pure state round-trips through json") {
  PureState psi = random_pure(DimSignature({2, 3}), 33);
  Json j = state_to_json(psi);
  CHECK(j["signature"] == Json::array({2, 3}));
  AnyState back = state_from_json(j);
  REQUIRE(std::holds_alternative<PureState>(back));
  const PureState& got = std::get<PureState>(back);
  CHECK((got.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(got.signature() == psi.signature());
}

TEST_CASE("density matrix round-trips through json") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 3, 34);
  AnyState back = state_from_json(state_to_json(rho));
  REQUIRE(std::holds_alternative<DensityMatrix>(back));
  CHECK((std::get<DensityMatrix>(back).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("state json rejects malformed payloads as io errors") {
  Json j = state_to_json(random_pure(DimSignature({2, 2}), 1));
  Json wrong_len = j;
  wrong_len["re"].push_back(0.0);
  CHECK_THROWS_AS(state_from_json(wrong_len), io_error);
  Json bad_sig = j;
  bad_sig["signature"] = Json::array({2, 3});
  CHECK_THROWS_AS(state_from_json(bad_sig), io_error);
  Json unnormalized = j;
  for (auto& x : unnormalized["re"]) x = 5.0 * x.get<double>();
  CHECK_THROWS_AS(state_from_json(unnormalized), io_error);
  // density payload violating positivity also lands as io_error
  Json dens = state_to_json(DensityMatrix(Mat::Identity(2, 2) / 2.0, DimSignature({2})));
  dens["re"][0] = 1.5;
  dens["re"][3] = -0.5;
  CHECK_THROWS_AS(state_from_json(dens), io_error);
}

TEST_CASE("file io reports the path on failure") {
  CHECK_THROWS_WITH_AS(read_json_file("no_such_file.json"),
                       doctest::Contains("no_such_file.json"), io_error);
  TempFile tmp("garbage.json");
  {
    std::ofstream out(tmp.path);
    out << "{not json";
  }
  CHECK_THROWS_AS(read_json_file(tmp.path), io_error);
}

TEST_CASE("state files round-trip through disk") {
  TempFile tmp("state.json");
  DensityMatrix rho = random_density(DimSignature({2, 2}), 2, 90);
  write_json_file(state_to_json(rho), tmp.path);
  AnyState back = load_state(tmp.path);
  REQUIRE(std::holds_alternative<DensityMatrix>(back));
  CHECK((std::get<DensityMatrix>(back).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("optimizer config round-trips and fills defaults") {
  OptimizerConfig cfg;
  cfg.restarts = 5;
  cfg.seed = 99;
  OptimizerConfig back = optimizer_from_json(to_json(cfg));
  CHECK(back.restarts == 5);
  CHECK(back.seed == 99);
  CHECK(back.max_evals == cfg.max_evals);
  // a sparse document keeps defaults for missing keys
  OptimizerConfig sparse = optimizer_from_json(Json{{"restarts", 3}});
  CHECK(sparse.restarts == 3);
  CHECK(sparse.max_evals == OptimizerConfig{}.max_evals);
}

TEST_CASE("ensemble spec round-trips and validates on load") {
  EnsembleSpec es;
  es.family = "ginibre";
  es.dims = {2, 2};
  es.count = 7;
  es.rank = 2;
  EnsembleSpec back = ensemble_from_json(to_json(es));
  CHECK(back.family == "ginibre");
  CHECK(back.rank == 2);
  Json bad = to_json(es);
  bad["family"] = "unheard-of";
  CHECK_THROWS(ensemble_from_json(bad));
}

TEST_CASE("roof result serializes the certificate") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 2, 21);
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_evals = 500;
  cfg.seed = 21;
  RoofResult r = roof_value(rho, {0}, MeasureSpec::eoe(), cfg);
  Json j = to_json(r);
  CHECK(j["value"].get<double>() == r.value);
  CHECK(j.contains("certificate"));
  CHECK(j["certificate"]["weights"].size() == r.certificate.weights.size());
  // serialized output is key-sorted, hence byte-deterministic
  CHECK(j.dump() == to_json(r).dump());
}

TEST_CASE("audit record omits absent optionals") {
  AuditRecord rec;
  rec.state = "x";
  rec.measure = "eoe";
  Json j = to_json(rec);
  CHECK(!j.contains("product_distance"));
  CHECK(!j.contains("witness"));
  rec.product_distance = 0.25;
  rec.witness = WitnessOutcome::none;
  Json j2 = to_json(rec);
  CHECK(j2["product_distance"].get<double>() == 0.25);
  CHECK(j2["witness"].get<std::string>() == "none");
}
