#include <doctest.h>

#include <cmath>

#include "entmono/core.hpp"
#include "entmono/measures.hpp"
#include "entmono/roof.hpp"
#include "entmono/types.hpp"

using namespace entmono;

namespace {

OptimizerConfig light(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_evals = 2000;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("roof of a pure state equals the direct measure") {
  for (int trial = 0; trial < 5; ++trial) {
    PureState psi = random_pure(DimSignature({3, 3}), 70u + trial);
    RoofResult r = roof_value(psi.projector(), {0}, MeasureSpec::eoe(), light(trial));
    CHECK(r.value ==
          doctest::Approx(pure_measure(psi, {0}, MeasureSpec::eoe())).epsilon(1e-10));
    CHECK(r.converged);
    CHECK(r.certificate.size() == 1);
  }
}

TEST_CASE("two-qubit roof matches the closed form") {
  for (int rank = 2; rank <= 4; ++rank) {
    for (int i = 0; i < 3; ++i) {
      const std::uint64_t seed = 7000u * rank + i;
      DensityMatrix rho = random_density(DimSignature({2, 2}), rank, seed);
      WoottersResult w = wootters_eof(rho);
      OptimizerConfig cfg;  // defaults
      cfg.seed = seed;
      RoofResult r = roof_value(rho, {0}, MeasureSpec::eoe(), cfg);
      CHECK(std::abs(r.value - w.eof) < 1e-4);
      CHECK(r.value >= w.eof - 1e-9);  // the roof reports an upper bound
    }
  }
}

TEST_CASE("closed form on frozen mixtures") {
  Mat bell = bell_pair().projector().matrix();
  DensityMatrix mix(0.9 * bell + 0.1 * Mat::Identity(4, 4) / 4.0, DimSignature({2, 2}));
  WoottersResult w = wootters_eof(mix);
  CHECK(w.concurrence == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(w.eof == doctest::Approx(0.7893549609887847).epsilon(1e-12));
  // separable mixture reports zero
  DensityMatrix sep(Mat::Identity(4, 4) / 4.0, DimSignature({2, 2}));
  CHECK(wootters_eof(sep).eof == 0.0);
}

TEST_CASE("certificate averages to the value and rebuilds the state") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 3, 912);
  RoofResult r = roof_value(rho, {0}, MeasureSpec::eoe(), light(912));
  CHECK(r.certificate.reconstruction_error(rho) < 1e-8);
  double avg = 0.0, wsum = 0.0;
  for (int j = 0; j < r.certificate.size(); ++j) {
    avg += r.certificate.weights[j] *
           pure_measure(r.certificate.states[j], {0}, MeasureSpec::eoe());
    wsum += r.certificate.weights[j];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(avg == doctest::Approx(r.value).epsilon(1e-9));
}

TEST_CASE("roof value never exceeds the spectral-ensemble average") {
  for (int trial = 0; trial < 5; ++trial) {
    DensityMatrix rho = random_density(DimSignature({2, 3}), 6, 300u + trial);
    RoofResult r = roof_value(rho, {0}, MeasureSpec::eoe(), light(trial));
    CHECK(r.value <= r.spectral_average + 1e-12);
  }
}

TEST_CASE("roof is convex under state mixing") {
  DensityMatrix a = random_density(DimSignature({2, 2}), 2, 51);
  DensityMatrix b = random_density(DimSignature({2, 2}), 2, 52);
  const double lam = 0.3;
  DensityMatrix mix(lam * a.matrix() + (1.0 - lam) * b.matrix(), a.signature(),
                    DensityMatrix::unchecked_t{});
  // closed form gives the exact roof on all three states
  const double ea = wootters_eof(a).eof;
  const double eb = wootters_eof(b).eof;
  const double em = wootters_eof(mix).eof;
  CHECK(em <= lam * ea + (1.0 - lam) * eb + 1e-10);
}

TEST_CASE("more restarts never increase the reported value") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 4, 640);
  OptimizerConfig small = light(640);
  small.restarts = 2;
  OptimizerConfig big = light(640);
  big.restarts = 8;
  const double v_small = roof_value(rho, {0}, MeasureSpec::eoe(), small).value;
  const double v_big = roof_value(rho, {0}, MeasureSpec::eoe(), big).value;
  CHECK(v_big <= v_small + 1e-12);
}

TEST_CASE("identical seeds reproduce the result exactly") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 3, 1001);
  RoofResult r1 = roof_value(rho, {0}, MeasureSpec::eoe(), light(5));
  RoofResult r2 = roof_value(rho, {0}, MeasureSpec::eoe(), light(5));
  CHECK(r1.value == r2.value);
  CHECK(r1.evaluations == r2.evaluations);
  CHECK(r1.best_restart == r2.best_restart);
  RoofResult r3 = roof_value(rho, {0}, MeasureSpec::eoe(), light(6));
  CHECK(r3.value == doctest::Approx(r1.value).epsilon(1e-4));  // same optimum, other path
}

TEST_CASE("threaded runs agree with serial runs exactly") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 3, 777);
  OptimizerConfig serial = light(777);
  OptimizerConfig par = light(777);
  par.threads = 4;
  RoofResult r1 = roof_value(rho, {0}, MeasureSpec::eoe(), serial);
  RoofResult r2 = roof_value(rho, {0}, MeasureSpec::eoe(), par);
  CHECK(r1.value == r2.value);
  CHECK(r1.best_restart == r2.best_restart);
}

TEST_CASE("decomposition_from_unitary mixes without changing the state") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 3, 41);
  Rng rng(9);
  Mat u = random_unitary(5, rng).leftCols(3);
  Decomposition d = decomposition_from_unitary(rho, u);
  CHECK(d.reconstruction_error(rho) < 1e-10);
  CHECK_THROWS_AS(decomposition_from_unitary(rho, Mat::Identity(4, 2)), signature_error);
}

TEST_CASE("composed roofs respect the convex registry") {
  CHECK(lookup_convex_g("square").fn(0.5) == doctest::Approx(0.25));
  CHECK(lookup_convex_g("cube").fn(0.5) == doctest::Approx(0.125));
  CHECK(lookup_convex_g("power:1.5").fn(4.0) == doctest::Approx(8.0));
  CHECK_THROWS_AS(lookup_convex_g("power:0.5"), signature_error);
  CHECK_THROWS_AS(lookup_convex_g("exp"), signature_error);

  // tangle as the square composition over concurrence
  DensityMatrix rho = random_density(DimSignature({2, 2}), 2, 4242);
  WoottersResult w = wootters_eof(rho);
  RoofResult eg = e_g_roof(rho, {0}, parse_measure_spec("concurrence"), "square", light(4242));
  CHECK(std::abs(eg.value - w.concurrence * w.concurrence) < 1e-3);
  CHECK(eg.value >= w.concurrence * w.concurrence - 1e-4);
}

TEST_CASE("config validation raises on nonsense") {
  DensityMatrix rho = random_density(DimSignature({2, 2}), 2, 1);
  OptimizerConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(roof_value(rho, {0}, MeasureSpec::eoe(), bad), signature_error);
  bad = OptimizerConfig{};
  bad.tol = 0.0;
  CHECK_THROWS_AS(roof_value(rho, {0}, MeasureSpec::eoe(), bad), signature_error);
  CHECK_THROWS_AS(roof_value(rho, {0, 1}, MeasureSpec::eoe(), OptimizerConfig{}),
                  signature_error);  // cut must be a proper subset
}
