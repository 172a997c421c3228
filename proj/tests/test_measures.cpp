#include <doctest.h>

#include <cmath>

#include "entmono/core.hpp"
#include "entmono/measures.hpp"
#include "entmono/types.hpp"
#include "helpers.hpp"

using namespace entmono;

TEST_CASE("named states hit their frozen values") {
  PureState bell = bell_pair();
  CHECK(pure_measure(bell, {0}, MeasureSpec::eoe()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure_measure(bell, {0}, parse_measure_spec("concurrence")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure_measure(bell, {0}, parse_measure_spec("tangle")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure_measure(bell, {0}, parse_measure_spec("neg")) ==
        doctest::Approx(0.4999999999999998).epsilon(1e-12));

  PureState w = w_state();
  CHECK(pure_measure(w, {0}, MeasureSpec::eoe()) ==
        doctest::Approx(0.9182958340544896).epsilon(1e-12));
  CHECK(pure_measure(w, {0}, parse_measure_spec("tangle")) ==
        doctest::Approx(0.8888888888888888).epsilon(1e-12));

  PureState ghz = ghz_state(3);
  CHECK(pure_measure(ghz, {0}, parse_measure_spec("gconc")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure_measure(ghz, {0}, MeasureSpec::eoe()) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("product states measure zero across the cut") {
  PureState prod = tensor(random_pure(DimSignature({3}), 5), random_pure(DimSignature({3}), 6));
  for (const char* spec : {"eoe", "concurrence", "tangle", "gconc", "neg"}) {
    CHECK(pure_measure(prod, {0}, parse_measure_spec(spec)) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("pure measures are invariant under local unitaries") {
  Rng rng(2718);
  for (int trial = 0; trial < 5; ++trial) {
    DimSignature sig({3, 4});
    PureState psi = random_pure(sig, 600u + trial);
    Mat u = entmono::testing::local_unitary(sig, rng);
    PureState rotated(u * psi.amplitudes(), sig);
    for (const char* spec : {"eoe", "concurrence", "tangle", "gconc", "neg", "renyi:0.7"}) {
      CHECK(pure_measure(psi, {0}, parse_measure_spec(spec)) ==
            doctest::Approx(pure_measure(rotated, {0}, parse_measure_spec(spec)))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("pure measures are symmetric in the cut") {
  PureState psi = random_pure(DimSignature({2, 5}), 42);
  for (const char* spec : {"eoe", "concurrence", "tangle", "neg"}) {
    CHECK(pure_measure(psi, {0}, parse_measure_spec(spec)) ==
          doctest::Approx(pure_measure(psi, {1}, parse_measure_spec(spec))).epsilon(1e-10));
  }
  // gconc scales with the marginal's own dimension, so it is only symmetric
  // when the two sides match; the larger side's singular marginal gives 0
  PureState even = random_pure(DimSignature({3, 3}), 43);
  CHECK(pure_measure(even, {0}, parse_measure_spec("gconc")) ==
        doctest::Approx(pure_measure(even, {1}, parse_measure_spec("gconc"))).epsilon(1e-10));
  CHECK(pure_measure(psi, {1}, parse_measure_spec("gconc")) == 0.0);
}

TEST_CASE("algebraic relations between the reductions") {
  for (int trial = 0; trial < 10; ++trial) {
    PureState psi = random_pure(DimSignature({3, 3}), 900u + trial);
    const double conc = pure_measure(psi, {0}, parse_measure_spec("concurrence"));
    const double tangle = pure_measure(psi, {0}, parse_measure_spec("tangle"));
    CHECK(tangle == doctest::Approx(conc * conc).epsilon(1e-10));
    DensityMatrix red = reduced_density(psi, {0});
    CHECK(h_value(red, parse_measure_spec("concurrence")) ==
          doctest::Approx(std::sqrt(2.0 * (1.0 - red.matrix().squaredNorm()))).epsilon(1e-10));
  }
}

TEST_CASE("negativity agrees with the partial-transpose trace norm") {
  DensityMatrix rho = random_density(DimSignature({2, 3}), 6, 1234);
  Mat pt = partial_transpose(rho, {1});
  RVec ev = hermitian_eigenvalues(pt);
  double neg_sum = 0.0;
  for (int k = 0; k < ev.size(); ++k) neg_sum += std::abs(ev[k]);
  CHECK(negativity(rho, {0}) == doctest::Approx((neg_sum - 1.0) / 2.0).epsilon(1e-10));
  // frozen value on the 0.9 singlet-fraction mixture
  Mat bell = bell_pair().projector().matrix();
  DensityMatrix mix(0.9 * bell + 0.1 * Mat::Identity(4, 4) / 4.0, DimSignature({2, 2}));
  CHECK(negativity(mix, {0}) == doctest::Approx(0.4249999999999998).epsilon(1e-12));
}

TEST_CASE("measure parsing and rejection") {
  CHECK(parse_measure_spec("eoe").kind == MeasureKind::entropyOfEntanglement);
  CHECK(parse_measure_spec("eoe:tsallis:2").entropy.kind == EntropyKind::tsallis);
  CHECK(parse_measure_spec("renyi:0.5").param == doctest::Approx(0.5));
  CHECK(parse_measure_spec("neg").kind == MeasureKind::negativity);
  CHECK_THROWS_AS(parse_measure_spec("nope"), signature_error);
  CHECK_THROWS_AS(h_value(random_density(DimSignature({2}), 2, 1), parse_measure_spec("neg")),
                  signature_error);
}

TEST_CASE("strict concavity flags follow the probe catalog") {
  CHECK(MeasureSpec::eoe().strictly_concave_flag());
  CHECK(parse_measure_spec("tangle").strictly_concave_flag());
  CHECK(parse_measure_spec("gconc").strictly_concave_flag());
  CHECK(parse_measure_spec("renyi:0.5").strictly_concave_flag());
  CHECK(!parse_measure_spec("renyi:2").strictly_concave_flag());
  CHECK(!parse_measure_spec("neg").strictly_concave_flag());
}

TEST_CASE("measure concavity probe mirrors the entropy probe") {
  ConcavityReport rep = measure_concavity_probe(MeasureSpec::eoe(), 3, 200, 11);
  CHECK(!rep.violation_found);
  CHECK(rep.min_margin >= 0.0);
  ConcavityReport gc = measure_concavity_probe(parse_measure_spec("gconc"), 3, 200, 12);
  CHECK(!gc.violation_found);
}
