#include <doctest.h>

#include <array>
#include <cmath>

#include "entmono/core.hpp"
#include "entmono/ensemble.hpp"
#include "entmono/structure.hpp"
#include "entmono/types.hpp"

using namespace entmono;

TEST_CASE("product check separates products from entangled marginals") {
  DensityMatrix a = random_density(DimSignature({2}), 2, 1);
  DensityMatrix c = random_density(DimSignature({3}), 3, 2);
  DensityMatrix prod = tensor(a, c);
  ProductCheck pc = is_product(prod, 1e-8);
  CHECK(pc.product);
  CHECK(pc.distance < 1e-10);

  ProductCheck bell = is_product(bell_pair().projector(), 1e-8);
  CHECK(!bell.product);
  CHECK(bell.distance > 0.1);
}

TEST_CASE("factorization witness recovers wired products") {
  Rng rng(2020);
  for (const auto& dims : std::vector<std::array<int, 4>>{{2, 2, 2, 4}, {2, 3, 2, 6}, {3, 3, 3, 9}}) {
    PureState phi = random_pure(DimSignature({dims[0], dims[1]}), 800);
    PureState eta = random_pure(DimSignature({dims[2], 3}), 801);
    Mat u = random_unitary(dims[3], rng);
    PureState psi = make_product_family(phi, eta, u, dims[3]);
    FactorizationResult fr = witness_factorization(psi, 1e-6);
    REQUIRE(fr.found);
    CHECK(fr.witness->dim_b1 * fr.witness->dim_b2 <= dims[3]);
    CHECK(fr.witness->reconstruction_error < 1e-6);
    // the embedded unitary is an isometry on the used columns
    const Mat& ub = fr.witness->u_b;
    CHECK((ub.adjoint() * ub - Mat::Identity(ub.cols(), ub.cols())).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("factorization failure names the first broken stage") {
  PureState haar = random_pure(DimSignature({2, 4, 2}), 606);
  FactorizationResult fr = witness_factorization(haar, 1e-6);
  CHECK(!fr.found);
  CHECK((fr.fail_stage == "marginal-equality" || fr.fail_stage == "gram" ||
         fr.fail_stage == "reconstruction"));
  CHECK(fr.fail_deviation > 1e-6);
  CHECK(!fr.witness.has_value());
}

TEST_CASE("witness survives a local unitary on the middle system") {
  Rng rng(77);
  PureState phi = random_pure(DimSignature({2, 2}), 1);
  PureState eta = random_pure(DimSignature({2, 2}), 2);
  PureState psi = make_product_family(phi, eta, random_unitary(4, rng), 4);
  // rotate B only; the factorized structure must persist
  Mat rot = kron(kron(Mat::Identity(2, 2), random_unitary(4, rng)), Mat::Identity(2, 2));
  PureState rotated(rot * psi.amplitudes(), psi.signature());
  FactorizationResult fr = witness_factorization(rotated, 1e-6);
  REQUIRE(fr.found);
  CHECK(fr.witness->reconstruction_error < 1e-6);
}

TEST_CASE("ppt classifies the qubit pair cases") {
  CHECK(ppt_separable(bell_pair().projector(), {0}) == Separability::entangled);
  DensityMatrix mixed(Mat::Identity(4, 4) / 4.0, DimSignature({2, 2}));
  CHECK(ppt_separable(mixed, {0}) == Separability::separable);
  // PPT is only necessary beyond 2x2 / 2x3: a positive transpose there is
  // inconclusive
  DensityMatrix big(Mat::Identity(9, 9) / 9.0, DimSignature({3, 3}));
  CHECK(ppt_separable(big, {0}) == Separability::inconclusive);
  DensityMatrix qutrit_pair = random_density(DimSignature({2, 3}), 6, 42);
  Separability s = ppt_separable(qutrit_pair, {0});
  CHECK((s == Separability::separable || s == Separability::entangled));
}

TEST_CASE("werner mixtures cross the ppt threshold at one third") {
  Mat bell = bell_pair().projector().matrix();
  const auto werner = [&](double p) {
    return DensityMatrix(p * bell + (1.0 - p) * Mat::Identity(4, 4) / 4.0, DimSignature({2, 2}));
  };
  CHECK(ppt_separable(werner(0.32), {0}) == Separability::separable);
  CHECK(ppt_separable(werner(0.34), {0}) == Separability::entangled);
}

TEST_CASE("biseparable form detection on constructed states") {
  // A|BC product
  PureState a_rest = tensor(random_pure(DimSignature({2}), 10),
                            random_pure(DimSignature({2, 2}), 11));
  CHECK(biseparable_form_check(a_rest, 1e-6) == BiseparableForm::A_BC_product);
  // AB|C product
  PureState ab_c = tensor(random_pure(DimSignature({2, 3}), 12),
                          random_pure(DimSignature({2}), 13));
  CHECK(biseparable_form_check(ab_c, 1e-6) == BiseparableForm::AB_C_product);
  // fully product reports the A|BC side
  PureState all_prod = tensor(tensor(random_pure(DimSignature({2}), 14),
                                     random_pure(DimSignature({2}), 15)),
                              random_pure(DimSignature({2}), 16));
  CHECK(biseparable_form_check(all_prod, 1e-6) == BiseparableForm::A_BC_product);
  // genuinely tripartite states are neither
  CHECK(biseparable_form_check(ghz_state(2), 1e-6) == BiseparableForm::neither);
  CHECK(biseparable_form_check(w_state(), 1e-6) == BiseparableForm::neither);
}

TEST_CASE("biseparable check rejects a large middle system") {
  CHECK_THROWS_AS(biseparable_form_check(random_pure(DimSignature({2, 4, 2}), 1), 1e-6),
                  signature_error);
}

TEST_CASE("string renderings stay stable") {
  CHECK(to_string(Separability::separable) == "separable");
  CHECK(to_string(Separability::entangled) == "entangled");
  CHECK(to_string(Separability::inconclusive) == "inconclusive");
  CHECK(to_string(BiseparableForm::A_BC_product) == "A|BC-product");
  CHECK(to_string(BiseparableForm::AB_C_product) == "AB|C-product");
  CHECK(to_string(BiseparableForm::neither) == "neither");
}
