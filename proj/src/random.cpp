#include "nctorus/random.hpp"

#include <algorithm>

namespace nct {

// Explicit transforms of the raw engine output keep sequences identical across
// standard library implementations.
double uniform(Rng& rng, double lo, double hi) {
  const double u = double(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int uniform_int(Rng& rng, int lo, int hi) {
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  return lo + int(rng() % span);
}

DeformationPtr random_deformation(int n, Rng& rng) {
  std::vector<double> e(n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j) {
      e[k * n + j] = uniform(rng, -0.5, 0.5);
      e[j * n + k] = -e[k * n + j];
    }
  return Deformation::make(n, std::move(e));
}

namespace {

cplx random_coeff(Rng& rng) {
  const double re = uniform(rng, -1.0, 1.0);
  const double im = uniform(rng, -1.0, 1.0);
  return {re, im};
}

Mask random_mask_of_degree(int n, int degree, Rng& rng) {
  std::vector<int> axes(n);
  for (int i = 0; i < n; ++i) axes[i] = i;
  for (int i = 0; i < degree; ++i) std::swap(axes[i], axes[uniform_int(rng, i, n - 1)]);
  Mask s = 0;
  for (int i = 0; i < degree; ++i) s |= Mask(1) << axes[i];
  return s;
}

}  // namespace

TorusElement random_element(const DeformationPtr& xi, int radius, int count, Rng& rng) {
  TorusElement x(xi);
  Exponent m(xi->dim());
  for (int t = 0; t < count; ++t) {
    for (auto& v : m) v = uniform_int(rng, -radius, radius);
    x.add_term(m, random_coeff(rng));
  }
  return x.normalize();
}

TorusForm random_form(const DeformationPtr& xi, int degree, int radius, int count, Rng& rng) {
  TorusForm f(xi);
  const int n = xi->dim();
  if (degree < 0 || degree > n) return f;
  for (int t = 0; t < count; ++t)
    f.add_component(random_mask_of_degree(n, degree, rng), random_element(xi, radius, 1, rng));
  return f;
}

TorusForm random_mixed_form(const DeformationPtr& xi, int radius, int count, Rng& rng) {
  TorusForm f(xi);
  for (int k = 0; k <= xi->dim(); ++k) f += random_form(xi, k, radius, count, rng);
  return f;
}

TorusForm random_hermitian_one_form(const DeformationPtr& xi, int radius, int count, Rng& rng) {
  TorusForm a = random_form(xi, 1, radius, count, rng);
  return 0.5 * (a + form_star(a));
}

TorusForm random_constant_one_form(const DeformationPtr& xi, Rng& rng) {
  TorusForm f(xi);
  for (int j = 1; j <= xi->dim(); ++j)
    f += TorusForm::one_form(TorusElement::scalar(xi, uniform(rng, -3.0, 3.0)), j);
  return f;
}

TorusForm random_flat_shift(const DeformationPtr& xi, int radius, int count, Rng& rng) {
  TorusElement b = random_element(xi, radius, count, rng);
  b = 0.5 * (b - star(b));
  return random_constant_one_form(xi, rng) + differential(TorusForm::from_element(b));
}

LaurentElement random_laurent(int radius, int count, Rng& rng) {
  LaurentElement g;
  for (int t = 0; t < count; ++t) g.add_term(uniform_int(rng, -radius, radius), random_coeff(rng));
  return g.normalize();
}

EnvelopeElement random_envelope(CalculusKind kind, int radius, int max_k, int count, Rng& rng) {
  EnvelopeElement e(kind);
  for (int t = 0; t < count; ++t)
    e.add_term(uniform_int(rng, -radius, radius), uniform_int(rng, 0, max_k), random_coeff(rng));
  return e.normalize();
}

}  // namespace nct
