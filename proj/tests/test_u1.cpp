#include <gtest/gtest.h>

#include "nctorus/random.hpp"
#include "nctorus/u1.hpp"

using namespace nct;

namespace {

constexpr CalculusKind kC = CalculusKind::Classical;
constexpr CalculusKind kN = CalculusKind::NonStandard;

EnvelopeElement mono(int a, int k, cplx c = 1.0, CalculusKind kind = kN) {
  return EnvelopeElement::monomial(kind, a, k, c);
}

int sgn(int k) { return (k & 1) ? -1 : 1; }

}  // namespace

TEST(Hopf, CoproductCounitAntipode) {
  const LaurentTensor d = hopf_coproduct(LaurentElement::monomial(1));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.begin()->first, std::make_pair(1, 1));
  const LaurentElement g = LaurentElement::monomial(3) + LaurentElement::monomial(-1, 2.0);
  EXPECT_EQ(counit(g), cplx(3.0));
  EXPECT_EQ(antipode(LaurentElement::monomial(2)).coeff(-2), cplx(1.0));
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const LaurentElement h = random_laurent(3, 4, rng);
    EXPECT_LE(distance(antipode(antipode(h)), h), 0.0);
    EXPECT_LE(distance(counit_left(hopf_coproduct(h)), h), 0.0);
    EXPECT_LE(distance(antipode_left_multiply(hopf_coproduct(h)), LaurentElement::monomial(0, counit(h))), 1e-14);
    EXPECT_LE(distance(laurent_star(laurent_star(h)), h), 0.0);
  }
}

TEST(Germs, Values) {
  EXPECT_EQ(germs_map(kN, LaurentElement::monomial(3)), cplx(1.0));
  EXPECT_EQ(germs_map(kN, LaurentElement::monomial(2)), cplx(0.0));
  EXPECT_EQ(germs_map(kN, LaurentElement::monomial(-1)), cplx(1.0));
  for (int m = -3; m <= 3; ++m) EXPECT_EQ(germs_map(kC, LaurentElement::monomial(m)), cplx(m));
  EXPECT_EQ(germs_map(kC, LaurentElement::monomial(0)), cplx(0.0));
  EXPECT_EQ(germs_map(kN, LaurentElement::monomial(0)), cplx(0.0));
}

TEST(Germs, ClassicalMatchesQuotientByKerSquared) {
  // z^m - 1 = m (z - 1) + (z - 1)^2 q(z): compute the quotient by polynomial division.
  for (int m = 1; m <= 6; ++m) {
    std::vector<double> p(m + 1, 0.0);
    p[m] = 1.0, p[0] = -1.0;  // z^m - 1
    // divide by (z - 1) once: synthetic division at z = 1
    std::vector<double> q(m, 0.0);
    double carry = 0.0;
    for (int i = m; i >= 1; --i) carry = q[i - 1] = p[i] + carry;
    // the class modulo (z - 1)^2 is q(1) (z - 1)
    double q1 = 0.0;
    for (double c : q) q1 += c;
    EXPECT_EQ(germs_map(kC, LaurentElement::monomial(m)), cplx(q1));
  }
}

TEST(Germs, EmbeddedDifferential) {
  EXPECT_EQ(embedded_differential(kC), cplx(0.0));
  EXPECT_EQ(embedded_differential(kN), cplx(-1.0));
}

TEST(Germs, ModuleRule) {
  Rng rng(2);
  for (CalculusKind kind : {kC, kN})
    for (int t = 0; t < 50; ++t) {
      const LaurentElement g = random_laurent(3, 3, rng), h = random_laurent(3, 3, rng);
      const cplx lhs = germs_map(kind, g * h);
      const cplx rhs = counit(g) * germs_map(kind, h) + germs_map(kind, g) * germ_module_action(kind, h);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12);
    }
  EXPECT_EQ(germ_module_action(kN, LaurentElement::monomial(1)), cplx(-1.0));
  EXPECT_EQ(germ_module_action(kN, LaurentElement::monomial(2)), cplx(1.0));
  EXPECT_EQ(germ_module_action(kC, LaurentElement::monomial(5)), cplx(1.0));
}

TEST(Envelope, Products) {
  EXPECT_LE(distance(mono(0, 1) * mono(1, 0), mono(1, 1, -1.0)), 0.0);
  EXPECT_LE(distance(mono(0, 1) * mono(2, 0), mono(2, 1)), 0.0);
  EXPECT_LE(distance(mono(2, 0) * mono(-5, 0), mono(-3, 0)), 0.0);
  // classical: theta commutes with z and theta^2 = 0
  EXPECT_LE(distance(mono(0, 1, 1.0, kC) * mono(1, 0, 1.0, kC), mono(1, 1, 1.0, kC)), 0.0);
  EXPECT_TRUE((mono(0, 1, 1.0, kC) * mono(0, 1, 1.0, kC)).is_zero());
}

TEST(Envelope, Differentials) {
  EXPECT_LE(distance(envelope_differential(mono(1, 0)), mono(1, 1)), 0.0);
  EXPECT_LE(distance(envelope_differential(mono(0, 1)), mono(0, 2, -1.0)), 0.0);
  EXPECT_TRUE(envelope_differential(mono(1, 0) * mono(-1, 0)).is_zero());
  // Leibniz expansion: d(z) z^{-1} + z d(z^{-1}) = z theta z^{-1} + z z^{-1} theta = -theta + theta
  const EnvelopeElement lhs =
      envelope_differential(mono(1, 0)) * mono(-1, 0) + mono(1, 0) * envelope_differential(mono(-1, 0));
  EXPECT_TRUE(lhs.is_zero());
  EXPECT_LE(distance(envelope_differential(mono(1, 0)) * mono(-1, 0), mono(0, 1, -1.0)), 0.0);
  // classical: d(z^3) = 3 z^3 theta
  EXPECT_LE(distance(envelope_differential(mono(3, 0, 1.0, kC)), mono(3, 1, 3.0, kC)), 0.0);
}

TEST(Envelope, Star) {
  EXPECT_LE(distance(envelope_star(mono(0, 1)), mono(0, 1)), 0.0);
  // (z theta)^* = theta z^{-1} = -z^{-1} theta, and equals -d(z^*)
  const EnvelopeElement zs = envelope_star(mono(1, 1));
  EXPECT_LE(distance(zs, mono(-1, 1, -1.0)), 0.0);
  EXPECT_LE(distance(zs, mono(0, 1) * mono(-1, 0)), 0.0);
  EXPECT_LE(distance(zs, -1.0 * envelope_differential(envelope_star(mono(1, 0)))), 0.0);
}

TEST(Envelope, AxiomsOnRandomElements) {
  Rng rng(3);
  for (CalculusKind kind : {kC, kN})
    for (int t = 0; t < 50; ++t) {
      const EnvelopeElement x = random_envelope(kind, 2, 1, 3, rng), y = random_envelope(kind, 2, 1, 3, rng);
      EXPECT_TRUE(envelope_differential(envelope_differential(x)).is_zero());
      EXPECT_LE(distance(envelope_star(envelope_star(x)), x), 0.0);
      EXPECT_LE(distance(envelope_differential(envelope_star(x)), -1.0 * envelope_star(envelope_differential(x))),
                1e-14);
      for (int j = 0; j <= 1; ++j)
        for (int k = 0; k <= 1; ++k) {
          const EnvelopeElement a = x.degree_part(j), b = y.degree_part(k);
          EXPECT_LE(distance(envelope_star(a * b), double(sgn(j * k)) * (envelope_star(b) * envelope_star(a))),
                    1e-14);
          const EnvelopeElement rhs = envelope_differential(a) * b + double(sgn(j)) * (a * envelope_differential(b));
          EXPECT_LE(distance(envelope_differential(a * b), rhs), 1e-14);
        }
    }
}

TEST(Envelope, Truncation) {
  EnvelopeElement e = mono(0, 3);
  EXPECT_FALSE(e.truncated());
  const EnvelopeElement f = e * mono(0, 1);
  EXPECT_TRUE(f.truncated());
}

TEST(Envelope, Coproduct) {
  // theta -> theta (x) 1 + 1 (x) theta
  const EnvelopeTensor t = envelope_coproduct(kN, 0, 1, 3);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at({{0, 1}, {0, 0}}), cplx(1.0));
  EXPECT_EQ(t.at({{0, 0}, {0, 1}}), cplx(1.0));
  // z^2 theta^0 -> z^2 (x) z^2
  const EnvelopeTensor z = envelope_coproduct(kN, 2, 0, 3);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z.begin()->first, (EnvelopeTensorKey{{2, 0}, {2, 0}}));
}
