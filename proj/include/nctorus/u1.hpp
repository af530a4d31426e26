#pragma once

#include <map>
#include <utility>

#include "nctorus/core.hpp"

namespace nct {

enum class CalculusKind { Classical, NonStandard };

const char* to_string(CalculusKind k);

// Laurent polynomials C[z, z^{-1}], the function algebra of U(1).
class LaurentElement {
 public:
  using Terms = std::map<int, cplx>;

  LaurentElement() = default;
  static LaurentElement monomial(int a, cplx c = 1.0);

  const Terms& terms() const { return terms_; }
  cplx coeff(int a) const;
  void add_term(int a, cplx c);
  LaurentElement& normalize(double threshold = kZeroThreshold);
  bool is_zero() const { return terms_.empty(); }

  LaurentElement& operator+=(const LaurentElement& o);
  LaurentElement& operator-=(const LaurentElement& o);
  LaurentElement& operator*=(cplx c);

 private:
  Terms terms_;
};

LaurentElement operator+(LaurentElement a, const LaurentElement& b);
LaurentElement operator-(LaurentElement a, const LaurentElement& b);
LaurentElement operator*(cplx c, LaurentElement a);
LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);
double distance(const LaurentElement& a, const LaurentElement& b);

// G (x) G, keyed by (left exponent, right exponent).
using LaurentTensor = std::map<std::pair<int, int>, cplx>;

LaurentTensor hopf_coproduct(const LaurentElement& g);
cplx counit(const LaurentElement& g);
LaurentElement antipode(const LaurentElement& g);
LaurentElement laurent_star(const LaurentElement& g);
// (eps (x) id) and m o (S (x) id) on a tensor.
LaurentElement counit_left(const LaurentTensor& t);
LaurentElement antipode_left_multiply(const LaurentTensor& t);

// Coefficient c of the germ c * theta, theta = pi(z).
using GermsVector = cplx;

GermsVector germs_map(CalculusKind kind, const LaurentElement& g);
// Theta(theta) = s * theta (x) theta; returns s.
cplx embedded_differential(CalculusKind kind);
// theta o g, the right G-module structure of the germ space, as a multiple of theta.
GermsVector germ_module_action(CalculusKind kind, const LaurentElement& g);

struct EnvelopeKey {
  int a;  // Laurent exponent
  int k;  // germ degree
  auto operator<=>(const EnvelopeKey&) const = default;
};

// Truncated universal envelope: combinations of z^a theta^k, k <= max_degree.
class EnvelopeElement {
 public:
  using Terms = std::map<EnvelopeKey, cplx>;

  explicit EnvelopeElement(CalculusKind kind = CalculusKind::NonStandard, int max_degree = 3);
  static EnvelopeElement monomial(CalculusKind kind, int a, int k, cplx c = 1.0, int max_degree = 3);

  CalculusKind kind() const { return kind_; }
  int max_degree() const { return max_degree_; }
  bool truncated() const { return truncated_; }
  const Terms& terms() const { return terms_; }
  cplx coeff(int a, int k) const;
  bool is_zero() const { return terms_.empty(); }

  // Adds c z^a theta^k; degrees beyond max_degree set the truncation flag instead.
  void add_term(int a, int k, cplx c);
  void mark_truncated() { truncated_ = true; }
  EnvelopeElement& normalize(double threshold = kZeroThreshold);
  EnvelopeElement degree_part(int k) const;

  EnvelopeElement& operator+=(const EnvelopeElement& o);
  EnvelopeElement& operator-=(const EnvelopeElement& o);
  EnvelopeElement& operator*=(cplx c);

 private:
  CalculusKind kind_;
  int max_degree_;
  bool truncated_ = false;
  Terms terms_;
};

EnvelopeElement operator+(EnvelopeElement a, const EnvelopeElement& b);
EnvelopeElement operator-(EnvelopeElement a, const EnvelopeElement& b);
EnvelopeElement operator*(cplx c, EnvelopeElement a);
EnvelopeElement operator*(const EnvelopeElement& a, const EnvelopeElement& b);
double distance(const EnvelopeElement& a, const EnvelopeElement& b);

// (z^a theta^j)(z^b theta^k) = sign z^{a+b} theta^{j+k}; returns the sign (0 when the
// relations kill the product). Degree bounds are not applied here.
int envelope_monomial_sign(CalculusKind kind, int j, int b, int k);

EnvelopeElement envelope_multiply(const EnvelopeElement& a, const EnvelopeElement& b);
EnvelopeElement envelope_differential(const EnvelopeElement& a);
EnvelopeElement envelope_star(const EnvelopeElement& a);

// d(z^a theta^k) as an element, computed from d(z^a) and d(theta) by graded Leibniz.
EnvelopeElement envelope_monomial_differential(CalculusKind kind, int a, int k, int max_degree);

// Graded coproduct on the envelope: z^a -> z^a (x) z^a, theta -> theta (x) 1 + 1 (x) theta.
struct EnvelopeTensorKey {
  EnvelopeKey left;
  EnvelopeKey right;
  auto operator<=>(const EnvelopeTensorKey&) const = default;
};
using EnvelopeTensor = std::map<EnvelopeTensorKey, cplx>;
EnvelopeTensor envelope_coproduct(CalculusKind kind, int a, int k, int max_degree);

}  // namespace nct
