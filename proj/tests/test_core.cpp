#include <gtest/gtest.h>

#include "nctorus/core.hpp"
#include "nctorus/random.hpp"

using namespace nct;

namespace {

DeformationPtr quarter() { return Deformation::make(2, {0.0, 0.25, -0.25, 0.0}); }

const cplx I(0.0, 1.0);

}  // namespace

TEST(Deformation, RejectsNonAntisymmetric) {
  EXPECT_THROW(Deformation::make(2, {0.0, 0.25, 0.25, 0.0}), ContractError);
  EXPECT_THROW(Deformation::make(2, {0.1, 0.0, 0.0, 0.0}), ContractError);
  EXPECT_THROW(Deformation::make(2, {0.0, 0.25, -0.25}), ContractError);
}

TEST(Deformation, ExtensionAndRestriction) {
  auto xi = quarter();
  auto big = xi->extended({0.1, -0.3});
  EXPECT_EQ(big->dim(), 3);
  EXPECT_DOUBLE_EQ((*big)(3, 1), 0.1);
  EXPECT_DOUBLE_EQ((*big)(1, 3), -0.1);
  EXPECT_DOUBLE_EQ((*big)(1, 2), 0.25);
  EXPECT_TRUE(*big->restricted(2) == *xi);
}

TEST(Multiply, CommutationPhase) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1), u2 = TorusElement::generator(xi, 2);
  const TorusElement r = multiply(u2, u1);
  ASSERT_EQ(r.terms().size(), 1u);
  EXPECT_NEAR(std::abs(r.coeff({1, 1}) - (-I)), 0.0, 1e-15);
  EXPECT_EQ(multiply(u1, u2).coeff({1, 1}), cplx(1.0));
}

TEST(Multiply, Unitarity) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_LE(distance(multiply(u1, star(u1)), TorusElement::scalar(xi, 1.0)), 1e-15);
  EXPECT_LE(distance(multiply(star(u1), u1), TorusElement::scalar(xi, 1.0)), 1e-15);
}

TEST(Multiply, ZeroThresholdDropsCancelledTerms) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  const TorusElement z = u1 - u1;
  EXPECT_TRUE(z.is_zero());
  TorusElement tiny = TorusElement::monomial(xi, {1, 0}, 1e-15);
  EXPECT_TRUE(tiny.normalize().is_zero());
}

TEST(Multiply, StructuralMismatch) {
  auto a = TorusElement::generator(quarter(), 1);
  auto b = TorusElement::generator(Deformation::zero(2), 1);
  auto c = TorusElement::generator(Deformation::zero(3), 1);
  EXPECT_THROW(multiply(a, b), StructuralError);
  EXPECT_THROW(multiply(b, c), StructuralError);
}

TEST(Star, ScalarAndMonomial) {
  auto xi = quarter();
  const TorusElement c = TorusElement::scalar(xi, cplx(2.0, 3.0));
  EXPECT_EQ(star(c).coeff({0, 0}), cplx(2.0, -3.0));
  const TorusElement r = star(TorusElement::monomial(xi, {1, 1}));
  const cplx expected = std::exp(cplx(0.0, -2.0 * kPi * 0.25));
  EXPECT_LE(std::abs(r.coeff({-1, -1}) - expected), 1e-15);
}

TEST(Star, AgreesWithMatrixAdjoint) {
  // The adjoint of the left-regular matrix of a is the matrix of a* on the vacuum column.
  Rng rng(7);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 20; ++t) {
    const TorusElement a = random_element(xi, 1, 3, rng);
    const MatrixRepresentation m = matrix_representation(a, 2);
    const MatrixRepresentation ms = matrix_representation(star(a), 2);
    const int vac = m.index_of({0, 0, 0});
    // <u^k | a* u^0> = conj(<u^0 | a u^k>) for every k whose image of a stays inside.
    for (int k = 0; k < static_cast<int>(m.basis.size()); ++k) {
      if (m.column_exits[k]) continue;
      EXPECT_NEAR(std::abs(ms.matrix(k, vac) - std::conj(m.matrix(vac, k))), 0.0, 1e-12);
    }
  }
}

TEST(Trace, Values) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_EQ(trace_tau0(TorusElement::scalar(xi, 1.0)), cplx(1.0));
  EXPECT_EQ(trace_tau0(u1), cplx(0.0));
  EXPECT_NEAR(std::abs(trace_tau0(multiply(u1, star(u1))) - 1.0), 0.0, 1e-15);
}

TEST(Derivation, Values) {
  auto xi = quarter();
  auto u1 = TorusElement::generator(xi, 1), u2 = TorusElement::generator(xi, 2);
  EXPECT_LE(distance(derivation(1, u1), cplx(0, 2 * kPi) * u1), 1e-15);
  EXPECT_TRUE(derivation(1, u2).is_zero());
  const TorusElement p = multiply(u1, u2);
  EXPECT_LE(distance(derivation(1, p), cplx(0, 2 * kPi) * p), 1e-14);
}

TEST(Derivation, LeibnizOnRandomElements) {
  Rng rng(11);
  auto xi = random_deformation(3, rng);
  for (int t = 0; t < 50; ++t) {
    const TorusElement a = random_element(xi, 2, 3, rng), b = random_element(xi, 2, 3, rng);
    for (int j = 1; j <= 3; ++j) {
      const TorusElement lhs = derivation(j, multiply(a, b));
      const TorusElement rhs = multiply(derivation(j, a), b) + multiply(a, derivation(j, b));
      EXPECT_LE(distance(lhs, rhs), 1e-12);
    }
  }
}

TEST(Laplacian, Values) {
  auto xi = quarter();
  EXPECT_TRUE(laplacian(TorusElement::scalar(xi, 1.0)).is_zero());
  auto u1 = TorusElement::generator(xi, 1);
  EXPECT_LE(distance(laplacian(u1), cplx(-4 * kPi * kPi) * u1), 1e-12);
}

TEST(Laplacian, KernelOnWindowIsConstants) {
  auto xi = quarter();
  const auto basis = truncated_basis(2, 2);
  int zero = 0;
  for (const auto& m : basis) {
    const TorusElement e = TorusElement::monomial(xi, m);
    const TorusElement l = laplacian(e);
    // each monomial is an eigenvector; count zero eigenvalues
    if (l.is_zero()) {
      ++zero;
      EXPECT_EQ(m, (Exponent{0, 0}));
    }
  }
  EXPECT_EQ(zero, 1);
}

TEST(MatrixRepresentation, IdentityAndUnitarity) {
  auto xi = quarter();
  const MatrixRepresentation one = matrix_representation(TorusElement::scalar(xi, 1.0), 2);
  EXPECT_LE((one.matrix - Eigen::MatrixXcd::Identity(25, 25)).cwiseAbs().maxCoeff(), 0.0);
  const MatrixRepresentation u = matrix_representation(TorusElement::generator(xi, 1), 2);
  const Eigen::MatrixXcd uu = u.matrix.adjoint() * u.matrix;
  for (int c = 0; c < 25; ++c) {
    if (u.column_exits[c]) continue;
    for (int r = 0; r < 25; ++r) EXPECT_NEAR(std::abs(uu(r, c) - (r == c ? 1.0 : 0.0)), 0.0, 1e-14);
  }
}

TEST(MatrixRepresentation, OracleMatchesProductsOnInterior) {
  Rng rng(5);
  for (int n : {2, 3}) {
    auto xi = random_deformation(n, rng);
    for (int t = 0; t < 100; ++t) {
      const TorusElement a = random_element(xi, 1, 3, rng), b = random_element(xi, 1, 3, rng);
      const int cutoff = 3;
      const auto ma = matrix_representation(a, cutoff), mb = matrix_representation(b, cutoff);
      const auto mab = matrix_representation(multiply(a, b), cutoff);
      const Eigen::MatrixXcd prod = ma.matrix * mb.matrix;
      for (int c = 0; c < static_cast<int>(ma.basis.size()); ++c) {
        int r = 0;
        for (int x : ma.basis[c]) r = std::max(r, std::abs(x));
        if (r > cutoff - 2) continue;  // interior: neither factor leaves the window
        EXPECT_LE((prod.col(c) - mab.matrix.col(c)).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(TruncatedBasis, LexicographicOrder) {
  const auto b = truncated_basis(2, 1);
  ASSERT_EQ(b.size(), 9u);
  EXPECT_EQ(b.front(), (Exponent{-1, -1}));
  EXPECT_EQ(b[1], (Exponent{-1, 0}));
  EXPECT_EQ(b.back(), (Exponent{1, 1}));
}
