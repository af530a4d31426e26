#include <gtest/gtest.h>

#include "nctorus/forms.hpp"
#include "nctorus/random.hpp"

using namespace nct;

namespace {

DeformationPtr quarter() { return Deformation::make(2, {0.0, 0.25, -0.25, 0.0}); }

TorusForm du(const DeformationPtr& xi, int j) { return TorusForm::one_form(TorusElement::scalar(xi, 1.0), j); }

int sgn(int k) { return (k & 1) ? -1 : 1; }

}  // namespace

TEST(Masks, ShuffleSign) {
  EXPECT_EQ(shuffle_sign(0b01, 0b10), 1);
  EXPECT_EQ(shuffle_sign(0b10, 0b01), -1);
  EXPECT_EQ(shuffle_sign(0b11, 0b01), 0);
  EXPECT_EQ(shuffle_sign(0b101, 0b010), -1);
  EXPECT_THROW(axes_to_mask({2, 1}, 2), ContractError);
  EXPECT_THROW(axes_to_mask({3}, 2), ContractError);
}

TEST(Wedge, Antisymmetry) {
  auto xi = quarter();
  const TorusForm a = wedge(du(xi, 1), du(xi, 2)), b = wedge(du(xi, 2), du(xi, 1));
  EXPECT_EQ(a.component(0b11).coeff({0, 0}), cplx(1.0));
  EXPECT_EQ(b.component(0b11).coeff({0, 0}), cplx(-1.0));
}

TEST(Wedge, ProductRule) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1), u2 = TorusElement::generator(xi, 2);
  const TorusForm w = wedge(TorusForm::one_form(u1, 1), TorusForm::one_form(u2, 2));
  EXPECT_LE(distance(w, TorusForm::basis(multiply(u1, u2), {1, 2})), 1e-15);
}

TEST(Wedge, ConstantOneFormSquaresToZero) {
  Rng rng(1);
  auto xi = random_deformation(3, rng);
  const TorusForm mu = random_constant_one_form(xi, rng);
  EXPECT_TRUE(wedge(mu, mu).is_zero());
}

TEST(Differential, Values) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  const TorusForm d = differential(TorusForm::from_element(u1));
  EXPECT_LE(distance(d, TorusForm::one_form(cplx(-2 * kPi) * u1, 1)), 1e-14);
  // -(1/2pi) u_1^* d u_1 = dU_1
  EXPECT_LE(distance(cplx(-1.0 / (2 * kPi)) * left_multiply(star(u1), d), du(xi, 1)), 1e-15);
  EXPECT_TRUE(differential(du(xi, 1)).is_zero());
}

TEST(Hodge, Values) {
  auto xi = quarter();
  EXPECT_LE(distance(hodge(TorusForm::from_element(TorusElement::scalar(xi, 1.0))), TorusForm::dvol(xi)), 0.0);
  EXPECT_LE(distance(hodge(du(xi, 1)), du(xi, 2)), 0.0);
  EXPECT_LE(distance(hodge(du(xi, 2)), -du(xi, 1)), 0.0);
}

TEST(Hodge, SquareSignAndInverse) {
  Rng rng(2);
  for (int n : {2, 3, 4}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 30; ++t) {
      const int k = uniform_int(rng, 0, n);
      const TorusForm a = random_form(xi, k, 2, 3, rng);
      EXPECT_LE(distance(hodge(hodge(a)), double(sgn(k * (n - k))) * a), 0.0);
      EXPECT_LE(distance(hodge_inverse(hodge(a)), a), 0.0);
    }
  }
}

TEST(Integrate, Values) {
  auto xi = quarter();
  EXPECT_EQ(integrate(TorusForm::dvol(xi)), cplx(1.0));
  EXPECT_EQ(integrate(TorusForm::basis(TorusElement::generator(xi, 1), {1, 2})), cplx(0.0));
  EXPECT_EQ(integrate(du(xi, 1)), cplx(0.0));
}

TEST(Integrate, Stokes) {
  Rng rng(3);
  for (int n : {2, 3}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 50; ++t) EXPECT_LE(std::abs(integrate(differential(random_form(xi, n - 1, 2, 4, rng)))), 1e-12);
  }
}

TEST(InnerProduct, BasisAndPositivity) {
  auto xi = quarter();
  EXPECT_NEAR(std::abs(inner_product(du(xi, 1), du(xi, 1)) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(inner_product(du(xi, 1), du(xi, 2)), cplx(0.0));
  EXPECT_NEAR(std::abs(inner_product(TorusForm::dvol(xi), TorusForm::dvol(xi)) - 1.0), 0.0, 1e-15);
  Rng rng(4);
  auto xi3 = random_deformation(3, rng);
  for (int t = 0; t < 50; ++t) {
    const TorusForm a = random_mixed_form(xi3, 2, 4, rng);
    const cplx v = inner_product(a, a);
    EXPECT_GT(v.real(), 0.0);
    EXPECT_LE(std::abs(v.imag()), 1e-12);
  }
}

TEST(FormStar, ValuesAndInvolution) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_LE(distance(form_star(TorusForm::one_form(u1, 1)), TorusForm::one_form(star(u1), 1)), 0.0);
  EXPECT_LE(distance(form_star(TorusForm::dvol(xi)), TorusForm::dvol(xi)), 0.0);
  Rng rng(5);
  auto xi3 = random_deformation(3, rng);
  for (int t = 0; t < 50; ++t) {
    const TorusForm a = random_mixed_form(xi3, 2, 3, rng);
    EXPECT_LE(distance(form_star(form_star(a)), a), 1e-15);
  }
}

TEST(FormStar, GradedAntiMultiplicative) {
  Rng rng(6);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 50; ++t) {
    const int p = uniform_int(rng, 0, 3), q = uniform_int(rng, 0, 3);
    const TorusForm a = random_form(xi, p, 2, 3, rng), b = random_form(xi, q, 2, 3, rng);
    EXPECT_LE(distance(form_star(wedge(a, b)), double(sgn(p * q)) * wedge(form_star(b), form_star(a))), 1e-12);
  }
}

TEST(FormStar, DifferentialAntiCommutes) {
  Rng rng(7);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 50; ++t) {
    const TorusForm a = random_mixed_form(xi, 2, 3, rng);
    EXPECT_LE(distance(differential(form_star(a)), -form_star(differential(a))), 1e-12);
  }
}

TEST(Calculus, DSquaredAndLeibniz) {
  Rng rng(8);
  for (int n : {2, 3}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 50; ++t) {
      const TorusForm a = random_mixed_form(xi, 2, 4, rng);
      EXPECT_LE(differential(differential(a)).max_abs(), 1e-12);
      const int p = uniform_int(rng, 0, n);
      const TorusForm x = random_form(xi, p, 2, 3, rng), y = random_mixed_form(xi, 2, 3, rng);
      const TorusForm rhs = wedge(differential(x), y) + double(sgn(p)) * wedge(x, differential(y));
      EXPECT_LE(distance(differential(wedge(x, y)), rhs), 1e-11);
    }
  }
}

TEST(Codifferential, Values) {
  auto xi = quarter();
  EXPECT_TRUE(codifferential(du(xi, 1)).is_zero());
  // d* d is a positive operator: +4 pi^2 on u_1 dU_2
  auto u1 = TorusElement::generator(xi, 1);
  const TorusForm a = TorusForm::one_form(u1, 2);
  EXPECT_LE(distance(codifferential(differential(a)), cplx(4 * kPi * kPi) * a), 1e-12);
}

TEST(Codifferential, AdjointOfD) {
  Rng rng(9);
  for (int n : {2, 3, 4}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 30; ++t) {
      const int k = uniform_int(rng, 0, n - 1);
      const TorusForm a = random_form(xi, k, 2, 3, rng), b = random_form(xi, k + 1, 2, 3, rng);
      const cplx l = inner_product(differential(a), b), r = inner_product(a, codifferential(b));
      EXPECT_LE(std::abs(l - r), 1e-9 * std::max(1.0, std::abs(l)));
    }
  }
}

TEST(Forms, Hermitian) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_TRUE(is_hermitian(TorusForm::one_form(u1 + star(u1), 2)));
  EXPECT_FALSE(is_hermitian(TorusForm::one_form(u1, 2)));
}

TEST(Forms, EmbedRestrictRoundTrip) {
  Rng rng(10);
  auto xi = random_deformation(2, rng);
  auto big = xi->extended({0.3, -0.1});
  const TorusForm a = random_mixed_form(xi, 2, 3, rng);
  const TorusForm e = embed_form(a, big);
  EXPECT_EQ(e.dim(), 3);
  EXPECT_LE(distance(restrict_form(e, xi), a), 0.0);
  EXPECT_THROW(restrict_form(TorusForm::one_form(TorusElement::scalar(big, 1.0), 3), xi), ContractError);
}

TEST(Forms, DegreeBookkeeping) {
  auto xi = quarter();
  EXPECT_EQ(TorusForm(xi).pure_degree(), -1);
  EXPECT_EQ(du(xi, 1).pure_degree(), 1);
  EXPECT_EQ((du(xi, 1) + TorusForm::dvol(xi)).pure_degree(), -2);
  EXPECT_EQ((du(xi, 1) + TorusForm::dvol(xi)).degrees(), (std::vector<int>{1, 2}));
}
