#include "nctorus/u1.hpp"

#include <algorithm>
#include <cmath>

namespace nct {

namespace {

bool odd(int a) { return (a % 2) != 0; }

}  // namespace

const char* to_string(CalculusKind k) {
  return k == CalculusKind::Classical ? "Classical" : "NonStandard";
}

LaurentElement LaurentElement::monomial(int a, cplx c) {
  LaurentElement g;
  g.add_term(a, c);
  return g.normalize();
}

cplx LaurentElement::coeff(int a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void LaurentElement::add_term(int a, cplx c) {
  if (c != 0.0) terms_[a] += c;
}

LaurentElement& LaurentElement::normalize(double threshold) {
  std::erase_if(terms_, [&](const auto& t) { return std::abs(t.second) < threshold; });
  return *this;
}

LaurentElement& LaurentElement::operator+=(const LaurentElement& o) {
  for (const auto& [a, c] : o.terms_) terms_[a] += c;
  return normalize();
}

LaurentElement& LaurentElement::operator-=(const LaurentElement& o) {
  for (const auto& [a, c] : o.terms_) terms_[a] -= c;
  return normalize();
}

LaurentElement& LaurentElement::operator*=(cplx c) {
  for (auto& t : terms_) t.second *= c;
  return normalize();
}

LaurentElement operator+(LaurentElement a, const LaurentElement& b) { return a += b; }
LaurentElement operator-(LaurentElement a, const LaurentElement& b) { return a -= b; }
LaurentElement operator*(cplx c, LaurentElement a) { return a *= c; }

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
  LaurentElement r;
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) r.add_term(x + y, c * d);
  return r.normalize();
}

double distance(const LaurentElement& a, const LaurentElement& b) {
  double d = 0.0;
  for (const auto& [x, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(x)));
  for (const auto& [x, c] : b.terms())
    if (!a.terms().count(x)) d = std::max(d, std::abs(c));
  return d;
}

LaurentTensor hopf_coproduct(const LaurentElement& g) {
  LaurentTensor t;
  for (const auto& [a, c] : g.terms()) t[{a, a}] += c;
  return t;
}

cplx counit(const LaurentElement& g) {
  cplx s = 0.0;
  for (const auto& [a, c] : g.terms()) s += c;
  return s;
}

LaurentElement antipode(const LaurentElement& g) {
  LaurentElement r;
  for (const auto& [a, c] : g.terms()) r.add_term(-a, c);
  return r;
}

LaurentElement laurent_star(const LaurentElement& g) {
  LaurentElement r;
  for (const auto& [a, c] : g.terms()) r.add_term(-a, std::conj(c));
  return r;
}

LaurentElement counit_left(const LaurentTensor& t) {
  LaurentElement r;
  for (const auto& [ab, c] : t) r.add_term(ab.second, c);
  return r.normalize();
}

LaurentElement antipode_left_multiply(const LaurentTensor& t) {
  LaurentElement r;
  for (const auto& [ab, c] : t) r.add_term(-ab.first + ab.second, c);
  return r.normalize();
}

GermsVector germs_map(CalculusKind kind, const LaurentElement& g) {
  cplx s = 0.0;
  for (const auto& [a, c] : g.terms()) {
    if (kind == CalculusKind::Classical)
      s += c * double(a);
    else if (odd(a))
      s += c;
  }
  return s;
}

cplx embedded_differential(CalculusKind kind) {
  return kind == CalculusKind::Classical ? 0.0 : -1.0;
}

GermsVector germ_module_action(CalculusKind kind, const LaurentElement& g) {
  // theta o g = pi((z - 1) g)
  return germs_map(kind, LaurentElement::monomial(1) * g) - germs_map(kind, g);
}

EnvelopeElement::EnvelopeElement(CalculusKind kind, int max_degree)
    : kind_(kind), max_degree_(max_degree) {}

EnvelopeElement EnvelopeElement::monomial(CalculusKind kind, int a, int k, cplx c, int max_degree) {
  EnvelopeElement e(kind, max_degree);
  e.add_term(a, k, c);
  return e.normalize();
}

cplx EnvelopeElement::coeff(int a, int k) const {
  auto it = terms_.find({a, k});
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void EnvelopeElement::add_term(int a, int k, cplx c) {
  if (c == 0.0) return;
  if (k > max_degree_) {
    truncated_ = true;
    return;
  }
  // the classical envelope is the exterior algebra of a line
  if (kind_ == CalculusKind::Classical && k > 1) return;
  terms_[{a, k}] += c;
}

EnvelopeElement& EnvelopeElement::normalize(double threshold) {
  std::erase_if(terms_, [&](const auto& t) { return std::abs(t.second) < threshold; });
  return *this;
}

EnvelopeElement EnvelopeElement::degree_part(int k) const {
  EnvelopeElement r(kind_, max_degree_);
  for (const auto& [key, c] : terms_)
    if (key.k == k) r.terms_.emplace(key, c);
  r.truncated_ = truncated_;
  return r;
}

EnvelopeElement& EnvelopeElement::operator+=(const EnvelopeElement& o) {
  if (o.kind_ != kind_) throw StructuralError("calculus kind mismatch");
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [key, c] : o.terms_) add_term(key.a, key.k, c);
  return normalize();
}

EnvelopeElement& EnvelopeElement::operator-=(const EnvelopeElement& o) {
  if (o.kind_ != kind_) throw StructuralError("calculus kind mismatch");
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [key, c] : o.terms_) add_term(key.a, key.k, -c);
  return normalize();
}

EnvelopeElement& EnvelopeElement::operator*=(cplx c) {
  for (auto& t : terms_) t.second *= c;
  return normalize();
}

EnvelopeElement operator+(EnvelopeElement a, const EnvelopeElement& b) { return a += b; }
EnvelopeElement operator-(EnvelopeElement a, const EnvelopeElement& b) { return a -= b; }
EnvelopeElement operator*(cplx c, EnvelopeElement a) { return a *= c; }
EnvelopeElement operator*(const EnvelopeElement& a, const EnvelopeElement& b) {
  return envelope_multiply(a, b);
}

double distance(const EnvelopeElement& a, const EnvelopeElement& b) {
  double d = 0.0;
  for (const auto& [key, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(key.a, key.k)));
  for (const auto& [key, c] : b.terms())
    if (!a.terms().count(key)) d = std::max(d, std::abs(c));
  return d;
}

int envelope_monomial_sign(CalculusKind kind, int j, int b, int k) {
  if (kind == CalculusKind::Classical) return j + k > 1 ? 0 : 1;
  // theta z^b = (-1)^b z^b theta, moved past j copies
  return (j % 2 != 0 && odd(b)) ? -1 : 1;
}

EnvelopeElement envelope_multiply(const EnvelopeElement& a, const EnvelopeElement& b) {
  if (a.kind() != b.kind()) throw StructuralError("calculus kind mismatch");
  EnvelopeElement r(a.kind(), std::min(a.max_degree(), b.max_degree()));
  if (a.truncated() || b.truncated()) r.mark_truncated();
  for (const auto& [x, c] : a.terms())
    for (const auto& [y, d] : b.terms()) {
      const int s = envelope_monomial_sign(a.kind(), x.k, y.a, y.k);
      if (s != 0) r.add_term(x.a + y.a, x.k + y.k, double(s) * c * d);
    }
  return r.normalize();
}

namespace {

EnvelopeElement d_of_power(CalculusKind kind, int a, int md) {
  // d z^a = z^a pi(z^a)
  return EnvelopeElement::monomial(kind, a, 1, germs_map(kind, LaurentElement::monomial(a)), md);
}

EnvelopeElement d_of_theta(CalculusKind kind, int md) {
  return EnvelopeElement::monomial(kind, 0, 2, embedded_differential(kind), md);
}

}  // namespace

EnvelopeElement envelope_monomial_differential(CalculusKind kind, int a, int k, int md) {
  // z^a theta^k = z^a * theta * ... * theta; graded Leibniz over the factors.
  const EnvelopeElement theta = EnvelopeElement::monomial(kind, 0, 1, 1.0, md);
  EnvelopeElement r = d_of_power(kind, a, md);
  for (int i = 0; i < k; ++i) r = r * theta;
  EnvelopeElement prefix = EnvelopeElement::monomial(kind, a, 0, 1.0, md);
  for (int i = 0; i < k; ++i) {
    // factor i sits after the z^a block and i thetas: total degree i
    EnvelopeElement term = prefix * d_of_theta(kind, md);
    for (int j = i + 1; j < k; ++j) term = term * theta;
    r += (i % 2 != 0 ? -1.0 : 1.0) * term;
    prefix = prefix * theta;
  }
  if (k + 1 > md) r.mark_truncated();
  return r;
}

EnvelopeElement envelope_differential(const EnvelopeElement& a) {
  EnvelopeElement r(a.kind(), a.max_degree());
  if (a.truncated()) r.mark_truncated();
  for (const auto& [key, c] : a.terms())
    r += c * envelope_monomial_differential(a.kind(), key.a, key.k, a.max_degree());
  return r;
}

EnvelopeElement envelope_star(const EnvelopeElement& a) {
  // (z^a theta^k)* = (theta^k)* z^{-a} = (-1)^{k(k-1)/2} theta^k z^{-a}
  EnvelopeElement r(a.kind(), a.max_degree());
  if (a.truncated()) r.mark_truncated();
  for (const auto& [key, c] : a.terms()) {
    int s = ((key.k * (key.k - 1) / 2) % 2) ? -1 : 1;
    s *= envelope_monomial_sign(a.kind(), key.k, -key.a, 0);
    r.add_term(-key.a, key.k, double(s) * std::conj(c));
  }
  return r.normalize();
}

EnvelopeTensor envelope_coproduct(CalculusKind kind, int a, int k, int md) {
  // Graded tensor product: (x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'.
  auto mul = [&](const EnvelopeTensor& p, const EnvelopeTensor& q) {
    EnvelopeTensor out;
    for (const auto& [u, c] : p)
      for (const auto& [v, d] : q) {
        const int s1 = envelope_monomial_sign(kind, u.left.k, v.left.a, v.left.k);
        const int s2 = envelope_monomial_sign(kind, u.right.k, v.right.a, v.right.k);
        if (s1 == 0 || s2 == 0) continue;
        const int kl = u.left.k + v.left.k, kr = u.right.k + v.right.k;
        if (kl > md || kr > md) continue;
        const int g = ((u.right.k * v.left.k) % 2) ? -1 : 1;
        out[{{u.left.a + v.left.a, kl}, {u.right.a + v.right.a, kr}}] += double(s1 * s2 * g) * c * d;
      }
    return out;
  };
  EnvelopeTensor r{{{{a, 0}, {a, 0}}, 1.0}};
  const EnvelopeTensor theta{{{{0, 1}, {0, 0}}, 1.0}, {{{0, 0}, {0, 1}}, 1.0}};
  for (int i = 0; i < k; ++i) r = mul(r, theta);
  std::erase_if(r, [](const auto& t) { return std::abs(t.second) < kZeroThreshold; });
  return r;
}

}  // namespace nct
