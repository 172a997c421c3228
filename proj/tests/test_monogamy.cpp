#include <doctest.h>

#include <cmath>

#include "entmono/core.hpp"
#include "entmono/ensemble.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/types.hpp"

using namespace entmono;

namespace {

AuditConfig light(std::uint64_t seed) {
  AuditConfig cfg;
  cfg.opt.restarts = 8;
  cfg.opt.max_evals = 2000;
  cfg.opt.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("W-state audit hits the frozen values") {
  AuditRecord rec = disentangling_gap(w_state(), MeasureSpec::eoe(), light(7));
  CHECK(rec.pure);
  CHECK(rec.e_abc == doctest::Approx(0.9182958340544896).epsilon(1e-10));
  CHECK(rec.e_ab == doctest::Approx(0.5500477595827576).epsilon(1e-7));
  CHECK(rec.e_ac == doctest::Approx(0.5500477595827576).epsilon(1e-7));
  CHECK(rec.gap == doctest::Approx(rec.e_abc - rec.e_ab).epsilon(1e-12));
  CHECK(!rec.disentangled);
  CHECK(rec.roofs_converged);
}

TEST_CASE("spectator construction is disentangled by construction") {
  // Bell on AB with |0> on C: E(A|BC) equals E(AB) and the AC marginal is
  // a product
  AuditConfig cfg = light(12);
  cfg.with_witness = true;
  AuditRecord rec = disentangling_gap(bell_with_spectator(2), MeasureSpec::eoe(), cfg);
  CHECK(rec.e_abc == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(rec.gap) < 1e-6);
  CHECK(rec.disentangled);
  REQUIRE(rec.witness.has_value());
  CHECK(*rec.witness == WitnessOutcome::factored);
  REQUIRE(rec.product_distance.has_value());
  CHECK(*rec.product_distance < 1e-10);
}

TEST_CASE("product families audit as disentangled across measures") {
  EnsembleSpec es;
  es.family = "product-family";
  es.dims = {2, 4, 2};
  es.count = 3;
  for (int i = 0; i < es.count; ++i) {
    PureState psi = ensemble_pure(es, 31337, i);
    for (const char* spec : {"eoe", "tangle", "gconc"}) {
      AuditRecord rec = disentangling_gap(psi, parse_measure_spec(spec), light(50u + i));
      CHECK(std::abs(rec.gap) < 1e-8);
      CHECK(rec.disentangled);
    }
  }
}

TEST_CASE("mixed-state audit uses roofs on every term") {
  DensityMatrix rho = random_density(DimSignature({2, 2, 2}), 2, 515);
  AuditRecord rec = disentangling_gap(rho, MeasureSpec::eoe(), light(515));
  CHECK(!rec.pure);
  CHECK(rec.eps_gap == doctest::Approx(1e-3));  // mixed threshold
  CHECK(rec.e_abc >= -1e-12);
  CHECK(rec.e_ab >= -1e-12);
  // the one-sided roof can only undershoot the pairwise terms by slack
  CHECK(rec.gap >= -1e-3);
}

TEST_CASE("ckw saturates on W and is positive on GHZ") {
  CkwResult w = ckw_check(w_state());
  CHECK(w.tau_abc == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
  CHECK(w.tau_ab == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
  CHECK(w.tau_ac == doctest::Approx(4.0 / 9.0).epsilon(1e-10));
  CHECK(std::abs(w.residual) < 1e-8);

  CkwResult ghz = ckw_check(ghz_state(2));
  CHECK(ghz.tau_abc == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ghz.tau_ab == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ghz.residual == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ckw rejects non-three-qubit input") {
  CHECK_THROWS_AS(ckw_check(random_pure(DimSignature({2, 2}), 3)), signature_error);
  CHECK_THROWS_AS(ckw_check(random_pure(DimSignature({2, 3, 2}), 3)), signature_error);
}

TEST_CASE("ckw residual is nonnegative on random three-qubit states") {
  for (int i = 0; i < 50; ++i) {
    CkwResult r = ckw_check(random_pure(DimSignature({2, 2, 2}), 9000u + i));
    CHECK(r.residual >= -1e-8);
  }
}

TEST_CASE("alpha search on the W singleton brackets the closed form") {
  AuditConfig cfg = light(3);
  std::vector<AuditRecord> records;
  AlphaSearchResult res = alpha_search({w_state()}, MeasureSpec::eoe(), cfg, &records);
  CHECK(res.found);
  // closed form: log 2 / log(e_abc / e_ab)
  CHECK(std::abs(res.alpha - 1.3524440710244505) < 0.01);
  CHECK(res.samples == 1);
  REQUIRE(records.size() == 1);
  CHECK(records[0].alpha_result.has_value());
}

TEST_CASE("alpha search treats clamped zeros as exact") {
  // a disentangled state satisfies the power inequality at every alpha, so
  // the search returns the lower endpoint
  AuditConfig cfg = light(4);
  AlphaSearchResult res = alpha_search({bell_with_spectator(2)}, MeasureSpec::eoe(), cfg);
  CHECK(res.found);
  CHECK(res.alpha == doctest::Approx(cfg.alpha_lo));
}

TEST_CASE("alpha search reports failure honestly when no alpha works") {
  // records engineered so e_ab = e_ac = e_abc > 0: no positive power can
  // satisfy additivity, the search must say not-found at the ceiling
  std::vector<AuditRecord> recs(1);
  recs[0].e_abc = 0.5;
  recs[0].e_ab = 0.5;
  recs[0].e_ac = 0.5;
  AuditConfig cfg;
  AlphaSearchResult res = alpha_from_records(recs, cfg);
  CHECK(!res.found);
}
