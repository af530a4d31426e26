#include "nctorus/forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace nct {

Mask axes_to_mask(const std::vector<int>& axes, int n) {
  Mask s = 0;
  int prev = 0;
  for (int a : axes) {
    if (a <= prev || a > n) throw ContractError("form axes must be strictly increasing within 1..n");
    s |= Mask(1) << (a - 1);
    prev = a;
  }
  return s;
}

std::vector<int> mask_to_axes(Mask s) {
  std::vector<int> out;
  for (int j = 0; s; ++j, s >>= 1)
    if (s & 1) out.push_back(j + 1);
  return out;
}

int mask_degree(Mask s) { return std::popcount(s); }

int shuffle_sign(Mask s, Mask t) {
  if (s & t) return 0;
  // count pairs (a in S, b in T) with a > b
  int inversions = 0;
  for (Mask rest = t; rest; rest &= rest - 1) {
    const int b = std::countr_zero(rest);
    inversions += std::popcount(s >> (b + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

TorusForm::TorusForm(DeformationPtr xi) : xi_(std::move(xi)) {}

TorusForm TorusForm::from_element(const TorusElement& x) { return basis(x, {}); }

TorusForm TorusForm::basis(const TorusElement& x, const std::vector<int>& axes) {
  TorusForm f(x.deformation());
  f.add_component(axes_to_mask(axes, x.dim()), x);
  return f;
}

TorusForm TorusForm::one_form(const TorusElement& x, int j) { return basis(x, {j}); }

TorusForm TorusForm::dvol(DeformationPtr xi) {
  const int n = xi->dim();
  TorusForm f(xi);
  f.add_component((Mask(1) << n) - 1, TorusElement::scalar(xi, 1.0));
  return f;
}

TorusElement TorusForm::component(Mask s) const {
  auto it = comps_.find(s);
  return it == comps_.end() ? TorusElement(xi_) : it->second;
}

void TorusForm::add_component(Mask s, const TorusElement& x) {
  if (x.is_zero()) return;
  if (!xi_) xi_ = x.deformation();
  if (x.dim() != dim() || !same_deformation(x.deformation(), xi_))
    throw StructuralError("form component deformation mismatch");
  if (s >> dim()) throw ContractError("form axis beyond dimension");
  auto it = comps_.find(s);
  if (it == comps_.end()) {
    comps_.emplace(s, x);
    return;
  }
  it->second += x;
  if (it->second.is_zero()) comps_.erase(it);
}

TorusForm TorusForm::degree_part(int k) const {
  TorusForm f(xi_);
  for (const auto& [s, x] : comps_)
    if (mask_degree(s) == k) f.comps_.emplace(s, x);
  return f;
}

int TorusForm::pure_degree() const {
  int k = -1;
  for (const auto& [s, x] : comps_) {
    const int d = mask_degree(s);
    if (k == -1)
      k = d;
    else if (k != d)
      return -2;
  }
  return k;
}

std::vector<int> TorusForm::degrees() const {
  std::vector<int> out;
  for (const auto& [s, x] : comps_) out.push_back(mask_degree(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double TorusForm::max_abs() const {
  double r = 0.0;
  for (const auto& [s, x] : comps_) r = std::max(r, x.max_abs());
  return r;
}

int TorusForm::radius() const {
  int r = 0;
  for (const auto& [s, x] : comps_) r = std::max(r, x.radius());
  return r;
}

void check_compatible(const TorusForm& a, const TorusForm& b) {
  if (!a.deformation() || !b.deformation()) return;
  if (a.dim() != b.dim()) throw StructuralError("form dimension mismatch");
  if (!same_deformation(a.deformation(), b.deformation()))
    throw StructuralError("form deformation mismatch");
}

TorusForm& TorusForm::operator+=(const TorusForm& o) {
  check_compatible(*this, o);
  for (const auto& [s, x] : o.comps_) add_component(s, x);
  return *this;
}

TorusForm& TorusForm::operator-=(const TorusForm& o) {
  check_compatible(*this, o);
  for (const auto& [s, x] : o.comps_) add_component(s, -x);
  return *this;
}

TorusForm& TorusForm::operator*=(cplx c) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
  }
  return *this;
}

TorusForm operator+(TorusForm a, const TorusForm& b) { return a += b; }
TorusForm operator-(TorusForm a, const TorusForm& b) { return a -= b; }
TorusForm operator-(TorusForm a) { return a *= -1.0; }
TorusForm operator*(cplx c, TorusForm a) { return a *= c; }
TorusForm operator*(const TorusForm& a, const TorusForm& b) { return wedge(a, b); }

TorusForm wedge(const TorusForm& a, const TorusForm& b) {
  check_compatible(a, b);
  TorusForm r(a.deformation() ? a.deformation() : b.deformation());
  for (const auto& [s, x] : a.components())
    for (const auto& [t, y] : b.components()) {
      const int sg = shuffle_sign(s, t);
      if (sg == 0) continue;
      r.add_component(s | t, cplx(sg) * multiply(x, y));
    }
  return r;
}

TorusForm left_multiply(const TorusElement& x, const TorusForm& a) {
  TorusForm r(a.deformation());
  for (const auto& [s, y] : a.components()) r.add_component(s, multiply(x, y));
  return r;
}

TorusForm right_multiply(const TorusForm& a, const TorusElement& x) {
  TorusForm r(a.deformation());
  for (const auto& [s, y] : a.components()) r.add_component(s, multiply(y, x));
  return r;
}

TorusForm differential(const TorusForm& a) {
  TorusForm r(a.deformation());
  const int n = a.dim();
  for (const auto& [s, x] : a.components())
    for (int j = 1; j <= n; ++j) {
      const Mask e = Mask(1) << (j - 1);
      const int sg = shuffle_sign(e, s);
      if (sg == 0) continue;
      r.add_component(s | e, cplx(0.0, sg) * derivation(j, x));
    }
  return r;
}

TorusForm hodge(const TorusForm& a) {
  TorusForm r(a.deformation());
  const Mask full = (Mask(1) << a.dim()) - 1;
  for (const auto& [s, x] : a.components()) {
    const Mask c = full & ~s;
    r.add_component(c, cplx(shuffle_sign(s, c)) * x);
  }
  return r;
}

TorusForm hodge_inverse(const TorusForm& a) {
  // star star = (-1)^{k(n-k)} on degree k, so star^{-1} = (-1)^{k(n-k)} star there.
  TorusForm r(a.deformation());
  const int n = a.dim();
  const Mask full = (Mask(1) << n) - 1;
  for (const auto& [s, x] : a.components()) {
    const int k = mask_degree(s);
    const Mask c = full & ~s;
    const int sg = shuffle_sign(s, c) * (((k * (n - k)) & 1) ? -1 : 1);
    r.add_component(c, cplx(sg) * x);
  }
  return r;
}

cplx integrate(const TorusForm& a) {
  if (!a.deformation()) return 0.0;
  return trace_tau0(a.component((Mask(1) << a.dim()) - 1));
}

cplx inner_product(const TorusForm& a, const TorusForm& b) {
  check_compatible(a, b);
  return integrate(wedge(form_star(a), hodge(b)));
}

TorusForm form_star(const TorusForm& a) {
  TorusForm r(a.deformation());
  for (const auto& [s, x] : a.components()) r.add_component(s, star(x));
  return r;
}

TorusForm codifferential(const TorusForm& a) {
  TorusForm r(a.deformation());
  for (int p : a.degrees()) {
    if (p == 0) continue;
    const int k = p - 1;
    TorusForm t = hodge_inverse(differential(hodge(a.degree_part(p))));
    if (k & 1) t *= -1.0;
    r += t;
  }
  return r;
}

bool is_hermitian(const TorusForm& a, double tol) { return distance(form_star(a), a) <= tol; }

double form_norm(const TorusForm& a) { return std::sqrt(std::max(0.0, inner_product(a, a).real())); }

double distance(const TorusForm& a, const TorusForm& b) {
  double d = 0.0;
  for (const auto& [s, x] : a.components()) d = std::max(d, distance(x, b.component(s)));
  for (const auto& [s, y] : b.components())
    if (!a.components().count(s)) d = std::max(d, y.max_abs());
  return d;
}

TorusElement embed_element(const TorusElement& x, const DeformationPtr& big) {
  TorusElement r(big);
  for (const auto& [m, c] : x.terms()) {
    Exponent e = m;
    e.resize(big->dim(), 0);
    r.add_term(e, c);
  }
  return r;
}

TorusForm embed_form(const TorusForm& a, const DeformationPtr& big) {
  TorusForm r(big);
  for (const auto& [s, x] : a.components()) r.add_component(s, embed_element(x, big));
  return r;
}

TorusElement restrict_element(const TorusElement& x, const DeformationPtr& small) {
  const int n = small->dim();
  TorusElement r(small);
  for (const auto& [m, c] : x.terms()) {
    for (std::size_t i = n; i < m.size(); ++i)
      if (m[i] != 0) throw ContractError("element involves generators outside the base");
    r.add_term(Exponent(m.begin(), m.begin() + n), c);
  }
  return r.normalize();
}

TorusForm restrict_form(const TorusForm& a, const DeformationPtr& small) {
  TorusForm r(small);
  for (const auto& [s, x] : a.components()) {
    if (s >> small->dim()) throw ContractError("form involves directions outside the base");
    r.add_component(s, restrict_element(x, small));
  }
  return r;
}

}  // namespace nct
