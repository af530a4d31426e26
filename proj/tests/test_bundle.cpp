#include <gtest/gtest.h>

#include "nctorus/bundle.hpp"
#include "nctorus/random.hpp"
#include "nctorus/yang_mills.hpp"

using namespace nct;

namespace {

DeformationPtr quarter() { return Deformation::make(2, {0.0, 0.25, -0.25, 0.0}); }

TorusForm u1_plus_adjoint_du2(const DeformationPtr& xi) {
  auto u1 = TorusElement::generator(xi, 1);
  return TorusForm::one_form(u1 + star(u1), 2);
}

TotalForm base_element(const BundleModel& m, const TorusElement& b) {
  return TotalForm::from_base(m, TorusForm::from_element(b));
}

}  // namespace

TEST(Models, Pairing) {
  EXPECT_NO_THROW(validate_pairing(ModelTag::A, CalculusKind::Classical));
  EXPECT_NO_THROW(validate_pairing(ModelTag::B, CalculusKind::NonStandard));
  EXPECT_THROW(validate_pairing(ModelTag::A, CalculusKind::NonStandard), ContractError);
  EXPECT_THROW(validate_pairing(ModelTag::B, CalculusKind::Classical), ContractError);
}

TEST(Connections, Validation) {
  auto xi = quarter();
  const BundleModel mb = BundleModel::model_b(xi);
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_THROW(validate_connection({mb, TorusForm::one_form(u1, 2)}), ContractError);
  EXPECT_THROW(validate_connection({mb, TorusForm::dvol(xi)}), ContractError);
  EXPECT_THROW(validate_connection({mb, u1_plus_adjoint_du2(Deformation::zero(2))}), StructuralError);
  EXPECT_NO_THROW(validate_connection({mb, u1_plus_adjoint_du2(xi)}));
}

TEST(Connections, CanonicalValues) {
  auto xi = quarter();
  const BundleModel ma = BundleModel::model_a(xi), mb = BundleModel::model_b(xi);
  const TotalForm wa = evaluate_connection(canonical_connection(ma));
  const TorusForm expected = TorusForm::one_form(TorusElement::scalar(ma.total, -2 * kPi), 3);
  EXPECT_LE(distance(wa.total_form(), expected), 1e-14);
  const TotalForm wb = evaluate_connection(canonical_connection(mb));
  ASSERT_EQ(wb.tensor_terms().size(), 1u);
  EXPECT_EQ(wb.tensor_terms().begin()->first, (EnvelopeKey{0, 1}));
  EXPECT_LE(distance(wb.tensor_terms().begin()->second, TorusForm::from_element(TorusElement::scalar(xi, 1.0))),
            0.0);
}

TEST(Connections, CoactionProperty) {
  Rng rng(1);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 20; ++t) {
    const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
    EXPECT_LE(connection_coaction_defect({BundleModel::model_a(xi), mu}), 1e-12);
    EXPECT_LE(connection_coaction_defect({BundleModel::model_b(xi), mu}), 1e-12);
  }
}

TEST(Curvature, CanonicalIsZero) {
  Rng rng(2);
  for (int n : {2, 3}) {
    auto xi = random_deformation(n, rng);
    const std::vector<double> row{0.2, -0.1, 0.05};
    const BundleModel ma = BundleModel::model_a(xi, std::vector<double>(row.begin(), row.begin() + n));
    EXPECT_TRUE(curvature(canonical_connection(ma)).is_zero());
    EXPECT_TRUE(curvature(canonical_connection(BundleModel::model_b(xi))).is_zero());
  }
}

TEST(Curvature, KnownValues) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  const TorusForm ra = curvature({BundleModel::model_a(xi), u1_plus_adjoint_du2(xi)});
  EXPECT_LE(distance(ra, TorusForm::basis(cplx(2 * kPi) * (star(u1) - u1), {1, 2})), 1e-12);
  const TorusForm flat = TorusForm::one_form(TorusElement::scalar(xi, 2 * kPi), 1);
  EXPECT_TRUE(curvature({BundleModel::model_b(xi), flat}).is_zero());
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const TorusForm shift = random_flat_shift(xi, 2, 3, rng);
    EXPECT_LE(curvature({BundleModel::model_a(xi), shift}).max_abs(), 1e-12);
  }
}

TEST(Curvature, TotalSpaceArithmeticMatchesClosedForm) {
  Rng rng(4);
  for (int n : {2, 3}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 50; ++t) {
      const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
      for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
        const ConnectionSpec w{m, mu};
        const TorusForm r = curvature(w);
        EXPECT_LE(distance(r, curvature_closed_form(w)), 1e-10);
        EXPECT_LE(distance(form_star(r), -r), 1e-10);
      }
      // independent expansion for Model B: d mu + mu mu
      EXPECT_LE(distance(curvature({BundleModel::model_b(xi), mu}), differential(mu) + wedge(mu, mu)), 1e-10);
    }
  }
}

TEST(CovariantDerivative, OnBaseIsD) {
  Rng rng(5);
  auto xi = random_deformation(2, rng);
  for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
    const ConnectionSpec w{m, random_hermitian_one_form(xi, 1, 3, rng)};
    const TorusElement b = random_element(xi, 2, 3, rng);
    const TotalForm db = TotalForm::from_base(m, differential(TorusForm::from_element(b)));
    EXPECT_LE(distance(covariant_derivative(w, base_element(m, b)), db), 1e-12);
    EXPECT_LE(distance(dual_covariant_derivative(w, base_element(m, b)), db), 1e-12);
  }
}

TEST(CovariantDerivative, CanonicalOnFiberGenerator) {
  auto xi = quarter();
  const BundleModel ma = BundleModel::model_a(xi, {0.3, 0.1});
  const ConnectionSpec wc = canonical_connection(ma);
  const TotalForm u = TotalForm::from_total(ma, TorusForm::from_element(TorusElement::generator(ma.total, 3)));
  EXPECT_LE(dual_covariant_derivative(wc, u).max_abs(), 1e-12);
  EXPECT_LE(covariant_derivative(wc, u).max_abs(), 1e-12);
}

TEST(CovariantDerivative, DualIsConjugate) {
  Rng rng(6);
  auto xi = random_deformation(2, rng);
  for (const BundleModel& m : {BundleModel::model_a(xi, {0.1, 0.2}), BundleModel::model_b(xi)}) {
    for (int t = 0; t < 20; ++t) {
      const ConnectionSpec w{m, random_hermitian_one_form(xi, 1, 3, rng)};
      const TotalForm phi = random_horizontal(m, uniform_int(rng, 0, 2), rng);
      const TotalForm lhs = dual_covariant_derivative(w, phi);
      const TotalForm rhs = -1.0 * total_star(covariant_derivative(w, total_star(phi)));
      EXPECT_LE(distance(lhs, rhs), 1e-10);
    }
  }
}

TEST(CovariantDerivative, CanonicalSquaresToZero) {
  Rng rng(7);
  auto xi = random_deformation(3, rng);
  for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
    const ConnectionSpec wc = canonical_connection(m);
    for (int t = 0; t < 20; ++t) {
      const TotalForm phi = random_horizontal(m, uniform_int(rng, 0, 1), rng);
      EXPECT_LE(covariant_derivative(wc, covariant_derivative(wc, phi)).max_abs(), 1e-10);
    }
  }
}

TEST(SOperator, Values) {
  auto xi = quarter();
  const TorusForm mu = u1_plus_adjoint_du2(xi);
  const TorusForm du1 = TorusForm::one_form(TorusElement::scalar(xi, 1.0), 1);
  EXPECT_TRUE(s_operator({BundleModel::model_a(xi), mu}, du1).is_zero());
  EXPECT_LE(s_operator({BundleModel::model_b(xi), mu}, du1).max_abs(), 1e-14);
  const TorusForm b = TorusForm::from_element(TorusElement::generator(xi, 2));
  const TorusForm expected = wedge(mu, b) - wedge(b, mu);
  EXPECT_GT(expected.max_abs(), 0.1);
  EXPECT_LE(distance(s_operator({BundleModel::model_b(xi), mu}, b), expected), 1e-12);
}

TEST(TwistedDerivative, IsDPlusS) {
  Rng rng(8);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 30; ++t) {
    const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
    const TorusForm tau = random_form(xi, uniform_int(rng, 0, 3), 1, 3, rng);
    for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
      const ConnectionSpec w{m, mu};
      EXPECT_LE(distance(twisted_covariant_derivative(w, tau), differential(tau) + s_operator(w, tau)), 1e-10);
      EXPECT_LE(distance(s_operator(w, tau), s_derivative_apply(w, tau)), 1e-10);
    }
    // on connection displacements the dual twisted derivative is the negative
    const ConnectionSpec wb{BundleModel::model_b(xi), mu};
    const TorusForm lambda = random_hermitian_one_form(xi, 1, 3, rng);
    EXPECT_LE(distance(dual_twisted_covariant_derivative(wb, lambda), -twisted_covariant_derivative(wb, lambda)),
              1e-10);
  }
}

TEST(Bianchi, ModelsAAndB) {
  Rng rng(9);
  for (int n : {2, 3, 4}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 20; ++t) {
      const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
      const ConnectionSpec wb{BundleModel::model_b(xi), mu};
      const TorusForm r = curvature(wb);
      EXPECT_LE(distance(twisted_covariant_derivative(wb, r), bianchi_rhs(wb)), 1e-9);
      // d R alone is not zero in general; the S-operator term cancels it
      const ConnectionSpec wa{BundleModel::model_a(xi), mu};
      EXPECT_LE(twisted_covariant_derivative(wa, curvature(wa)).max_abs(), 1e-9);
      EXPECT_LE(bianchi_rhs(wa).max_abs(), 1e-9);
    }
  }
}

TEST(Regularity, CanonicalConnectionsAreRegular) {
  Rng rng(10);
  auto xi = random_deformation(3, rng);
  for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
    const CheckReport r = check_regular(canonical_connection(m), 30, 1);
    EXPECT_TRUE(r.passed) << r.witness;
    EXPECT_TRUE(r.witness.empty());
  }
}

TEST(Regularity, ModelBNonRegularWitness) {
  auto xi = quarter();
  const CheckReport r = check_regular({BundleModel::model_b(xi), u1_plus_adjoint_du2(xi)}, 10, 0);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witness.empty());
  EXPECT_GT(r.max_defect, 1e-3);
}

TEST(Multiplicativity, Canonical) {
  auto xi = quarter();
  for (const BundleModel& m : {BundleModel::model_a(xi), BundleModel::model_b(xi)}) {
    const CheckReport r = check_multiplicative(canonical_connection(m));
    EXPECT_TRUE(r.passed) << r.witness;
    EXPECT_FALSE(r.rationale.empty());
  }
}

TEST(TotalForms, HorizontalRoundTrip) {
  Rng rng(11);
  auto xi = random_deformation(2, rng);
  const BundleModel mb = BundleModel::model_b(xi);
  const TorusForm a = random_mixed_form(xi, 1, 3, rng);
  EXPECT_LE(distance(TotalForm::from_base(mb, a).to_base(), a), 0.0);
  EXPECT_THROW(evaluate_connection(canonical_connection(mb)).to_base(), ConsistencyError);
  const TotalForm phi = random_horizontal(mb, 1, rng);
  EXPECT_TRUE(phi.is_horizontal());
  EXPECT_FALSE(evaluate_connection(canonical_connection(mb)).is_horizontal());
}
