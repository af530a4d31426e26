#include "nctorus/core.hpp"

#include <algorithm>
#include <cmath>

namespace nct {

Deformation::Deformation(int n, std::vector<double> entries) : n_(n), xi_(std::move(entries)) {
  if (n < 1) throw ContractError("deformation dimension must be positive");
  if (static_cast<int>(xi_.size()) != n * n)
    throw ContractError("deformation needs " + std::to_string(n * n) + " entries");
  for (int k = 0; k < n; ++k) {
    if (xi_[k * n + k] != 0.0) throw ContractError("deformation diagonal must vanish");
    for (int j = 0; j < k; ++j)
      if (std::abs(xi_[k * n + j] + xi_[j * n + k]) > 1e-15)
        throw ContractError("deformation matrix is not antisymmetric");
  }
}

DeformationPtr Deformation::zero(int n) {
  return std::make_shared<const Deformation>(n, std::vector<double>(n * n, 0.0));
}

DeformationPtr Deformation::make(int n, std::vector<double> entries) {
  return std::make_shared<const Deformation>(n, std::move(entries));
}

DeformationPtr Deformation::extended(const std::vector<double>& row) const {
  if (static_cast<int>(row.size()) != n_) throw ContractError("fiber row must have n entries");
  const int m = n_ + 1;
  std::vector<double> e(m * m, 0.0);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) e[k * m + j] = xi_[k * n_ + j];
  for (int j = 0; j < n_; ++j) {
    e[n_ * m + j] = row[j];
    e[j * m + n_] = -row[j];
  }
  return make(m, std::move(e));
}

DeformationPtr Deformation::restricted(int k) const {
  std::vector<double> e(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) e[a * k + b] = xi_[a * n_ + b];
  return make(k, std::move(e));
}

bool same_deformation(const DeformationPtr& a, const DeformationPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

cplx product_phase(const Deformation& xi, const Exponent& m, const Exponent& mp) {
  const int n = xi.dim();
  double s = 0.0;
  for (int k = 2; k <= n; ++k) {
    if (m[k - 1] == 0) continue;
    for (int j = 1; j < k; ++j) s += m[k - 1] * xi(k, j) * mp[j - 1];
  }
  if (s == 0.0) return 1.0;
  return std::polar(1.0, 2.0 * kPi * s);
}

TorusElement::TorusElement(DeformationPtr xi) : xi_(std::move(xi)) {}

TorusElement TorusElement::scalar(DeformationPtr xi, cplx c) {
  Exponent z(xi->dim(), 0);
  return monomial(std::move(xi), std::move(z), c);
}

TorusElement TorusElement::monomial(DeformationPtr xi, Exponent m, cplx c) {
  if (static_cast<int>(m.size()) != xi->dim()) throw StructuralError("exponent length mismatch");
  TorusElement e(std::move(xi));
  e.add_term(m, c);
  return e.normalize();
}

TorusElement TorusElement::generator(DeformationPtr xi, int k, int power) {
  if (k < 1 || k > xi->dim()) throw ContractError("generator index out of range");
  Exponent m(xi->dim(), 0);
  m[k - 1] = power;
  return monomial(std::move(xi), std::move(m));
}

cplx TorusElement::coeff(const Exponent& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void TorusElement::add_term(const Exponent& m, cplx c) {
  if (c == 0.0) return;
  terms_[m] += c;
}

TorusElement& TorusElement::normalize(double threshold) {
  std::erase_if(terms_, [&](const auto& t) { return std::abs(t.second) < threshold; });
  return *this;
}

double TorusElement::max_abs() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

int TorusElement::radius() const {
  int r = 0;
  for (const auto& [m, c] : terms_)
    for (int v : m) r = std::max(r, std::abs(v));
  return r;
}

void check_compatible(const TorusElement& a, const TorusElement& b) {
  if (a.dim() != b.dim()) throw StructuralError("torus dimension mismatch");
  if (!same_deformation(a.deformation(), b.deformation()))
    throw StructuralError("deformation mismatch");
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  if (!xi_) *this = TorusElement(o.xi_);
  if (!o.xi_) return *this;
  check_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  return normalize();
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  if (!xi_) *this = TorusElement(o.xi_);
  if (!o.xi_) return *this;
  check_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) terms_[m] -= c;
  return normalize();
}

TorusElement& TorusElement::operator*=(cplx c) {
  for (auto& t : terms_) t.second *= c;
  return normalize();
}

TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
TorusElement operator-(TorusElement a) { return a *= -1.0; }
TorusElement operator*(cplx c, TorusElement a) { return a *= c; }
TorusElement operator*(const TorusElement& a, const TorusElement& b) { return multiply(a, b); }

TorusElement multiply(const TorusElement& a, const TorusElement& b) {
  check_compatible(a, b);
  const Deformation& xi = *a.deformation();
  TorusElement r(a.deformation());
  Exponent sum(a.dim());
  for (const auto& [m, c] : a.terms())
    for (const auto& [mp, cp] : b.terms()) {
      for (int i = 0; i < a.dim(); ++i) sum[i] = m[i] + mp[i];
      r.add_term(sum, c * cp * product_phase(xi, m, mp));
    }
  return r.normalize();
}

TorusElement star(const TorusElement& a) {
  // (u_1^{m_1}...u_n^{m_n})* = u_n^{-m_n}...u_1^{-m_1}; fold the reversed word back
  // into normal order one generator block at a time.
  const int n = a.dim();
  const Deformation& xi = *a.deformation();
  TorusElement r(a.deformation());
  for (const auto& [m, c] : a.terms()) {
    Exponent acc(n, 0);
    cplx phase = 1.0;
    for (int k = n; k >= 1; --k) {
      Exponent g(n, 0);
      g[k - 1] = -m[k - 1];
      phase *= product_phase(xi, acc, g);
      acc[k - 1] = -m[k - 1];
    }
    r.add_term(acc, std::conj(c) * phase);
  }
  return r.normalize();
}

cplx trace_tau0(const TorusElement& a) {
  if (!a.deformation()) return 0.0;
  return a.coeff(Exponent(a.dim(), 0));
}

TorusElement derivation(int j, const TorusElement& a) {
  if (j < 1 || j > a.dim()) throw ContractError("derivation axis out of range");
  TorusElement r(a.deformation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, cplx(0.0, 2.0 * kPi * m[j - 1]) * c);
  return r.normalize();
}

TorusElement laplacian(const TorusElement& a) {
  TorusElement r(a.deformation());
  for (int j = 1; j <= a.dim(); ++j) r += derivation(j, derivation(j, a));
  return r;
}

double distance(const TorusElement& a, const TorusElement& b) {
  double d = 0.0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(m)));
  for (const auto& [m, c] : b.terms())
    if (!a.terms().count(m)) d = std::max(d, std::abs(c));
  return d;
}

std::vector<Exponent> truncated_basis(int n, int cutoff) {
  std::vector<Exponent> out;
  Exponent m(n, -cutoff);
  while (true) {
    out.push_back(m);
    int i = n - 1;
    while (i >= 0 && m[i] == cutoff) m[i--] = -cutoff;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

int MatrixRepresentation::index_of(const Exponent& m) const {
  const int n = static_cast<int>(m.size());
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(m[i]) > cutoff) return -1;
    idx = idx * (2 * cutoff + 1) + (m[i] + cutoff);
  }
  return idx;
}

namespace {

// Applies u_k^{+-1} to the basis vector phase * u^m in place.
void apply_generator(const Deformation& xi, int k, int sign, Exponent& m, cplx& phase) {
  double s = 0.0;
  for (int j = 1; j < k; ++j) s += xi(k, j) * m[j - 1];
  if (sign > 0) {
    phase *= std::polar(1.0, 2.0 * kPi * s);
    m[k - 1] += 1;
  } else {
    // u_k^{-1} is the inverse of the map above.
    m[k - 1] -= 1;
    phase *= std::polar(1.0, -2.0 * kPi * s);
  }
}

}  // namespace

MatrixRepresentation matrix_representation(const TorusElement& a, int cutoff) {
  const int n = a.dim();
  const Deformation& xi = *a.deformation();
  MatrixRepresentation rep;
  rep.cutoff = cutoff;
  rep.basis = truncated_basis(n, cutoff);
  const int dim = static_cast<int>(rep.basis.size());
  rep.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  rep.column_exits.assign(dim, false);
  for (int col = 0; col < dim; ++col) {
    for (const auto& [w, c] : a.terms()) {
      // u^w = u_1^{w_1}...u_n^{w_n}: rightmost block acts first.
      Exponent m = rep.basis[col];
      cplx phase = 1.0;
      for (int k = n; k >= 1; --k) {
        const int steps = std::abs(w[k - 1]);
        const int sign = w[k - 1] > 0 ? 1 : -1;
        for (int s = 0; s < steps; ++s) apply_generator(xi, k, sign, m, phase);
      }
      const int row = rep.index_of(m);
      if (row < 0)
        rep.column_exits[col] = true;
      else
        rep.matrix(row, col) += c * phase;
    }
  }
  return rep;
}

}  // namespace nct
