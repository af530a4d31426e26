#include "nctorus/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace nct {

const char* to_string(ModelTag m) { return m == ModelTag::A ? "A" : "B"; }

void validate_pairing(ModelTag model, CalculusKind kind) {
  if (model == ModelTag::A && kind != CalculusKind::Classical)
    throw ContractError("model A requires the classical calculus");
  if (model == ModelTag::B && kind != CalculusKind::NonStandard)
    throw ContractError("model B requires the non-standard calculus");
}

BundleModel BundleModel::model_a(DeformationPtr base, std::vector<double> fiber_row) {
  BundleModel m;
  m.tag = ModelTag::A;
  m.n = base->dim();
  if (fiber_row.empty()) fiber_row.assign(m.n, 0.0);
  m.total = base->extended(fiber_row);
  m.base = std::move(base);
  m.fiber_row = std::move(fiber_row);
  return m;
}

BundleModel BundleModel::model_b(DeformationPtr base) {
  BundleModel m;
  m.tag = ModelTag::B;
  m.n = base->dim();
  m.total = base;
  m.base = std::move(base);
  return m;
}

bool same_model(const BundleModel& a, const BundleModel& b) {
  return a.tag == b.tag && a.n == b.n && same_deformation(a.total, b.total) &&
         a.max_degree == b.max_degree;
}

namespace {

void require_same(const TotalForm& x, const TotalForm& y) {
  if (!same_model(x.model(), y.model())) throw StructuralError("total forms over different bundles");
}

int sign_of(int k) { return (k & 1) ? -1 : 1; }

// Splits a base form into even and odd degree parts.
std::pair<TorusForm, TorusForm> parity_split(const TorusForm& f) {
  TorusForm even(f.deformation()), odd(f.deformation());
  for (const auto& [s, x] : f.components()) (mask_degree(s) % 2 ? odd : even).add_component(s, x);
  return {even, odd};
}

Mask fiber_axis(const BundleModel& m) { return Mask(1) << m.n; }

}  // namespace

TotalForm::TotalForm(const BundleModel& model) : model_(model) {
  if (model_.tag == ModelTag::A) a_ = TorusForm(model_.total);
}

TotalForm TotalForm::from_base(const BundleModel& model, const TorusForm& base) {
  if (!base.is_zero() && (base.dim() != model.n || !same_deformation(base.deformation(), model.base)))
    throw StructuralError("base form does not live on the bundle's base");
  TotalForm t(model);
  if (model.tag == ModelTag::A)
    t.a_ = embed_form(base, model.total);
  else
    t.add_tensor({0, 0}, base);
  return t;
}

TotalForm TotalForm::from_total(const BundleModel& model, const TorusForm& total) {
  if (model.tag != ModelTag::A) throw ContractError("total-torus forms exist only in model A");
  if (!total.is_zero() && !same_deformation(total.deformation(), model.total))
    throw StructuralError("form does not live on the total torus");
  TotalForm t(model);
  t.a_ += total;
  return t;
}

TotalForm TotalForm::tensor(const BundleModel& model, const TorusForm& base, int a, int k) {
  if (model.tag != ModelTag::B) throw ContractError("tensor forms exist only in model B");
  TotalForm t(model);
  t.add_tensor({a, k}, base);
  return t;
}

void TotalForm::add_tensor(const EnvelopeKey& key, const TorusForm& f) {
  if (f.is_zero()) return;
  if (key.k > model_.max_degree) {
    truncated_ = true;
    return;
  }
  auto it = b_.find(key);
  if (it == b_.end()) {
    b_.emplace(key, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) b_.erase(it);
}

bool TotalForm::is_zero() const { return model_.tag == ModelTag::A ? a_.is_zero() : b_.empty(); }

double TotalForm::max_abs() const {
  if (model_.tag == ModelTag::A) return a_.max_abs();
  double r = 0.0;
  for (const auto& [key, f] : b_) r = std::max(r, f.max_abs());
  return r;
}

TotalForm TotalForm::degree_part(int k) const {
  TotalForm t(model_);
  t.truncated_ = truncated_;
  if (model_.tag == ModelTag::A) {
    t.a_ = a_.degree_part(k);
    return t;
  }
  for (const auto& [key, f] : b_) t.add_tensor(key, f.degree_part(k - key.k));
  return t;
}

std::vector<int> TotalForm::degrees() const {
  if (model_.tag == ModelTag::A) return a_.degrees();
  std::vector<int> out;
  for (const auto& [key, f] : b_)
    for (int d : f.degrees()) out.push_back(d + key.k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool TotalForm::is_horizontal() const {
  if (model_.tag == ModelTag::A) {
    for (const auto& [s, x] : a_.components())
      if (s & fiber_axis(model_)) return false;
    return true;
  }
  for (const auto& [key, f] : b_)
    if (key.k != 0) return false;
  return true;
}

std::map<int, TotalForm> TotalForm::coaction_pieces() const {
  if (!is_horizontal()) throw ContractError("coaction pieces requested for a non-horizontal form");
  std::map<int, TotalForm> out;
  if (model_.tag == ModelTag::A) {
    // Delta_P(u^m) = u^m (x) z^{m_{n+1}}
    std::map<int, TorusForm> parts;
    for (const auto& [s, x] : a_.components())
      for (const auto& [m, c] : x.terms()) {
        auto [it, fresh] = parts.try_emplace(m[model_.n], TorusForm(model_.total));
        it->second.add_component(s, TorusElement::monomial(model_.total, m, c));
      }
    for (auto& [p, f] : parts) out.emplace(p, from_total(model_, f));
    return out;
  }
  for (const auto& [key, f] : b_) out.emplace(key.a, tensor(model_, f, key.a, 0));
  return out;
}

TorusForm TotalForm::to_base() const {
  if (truncated_) throw ConsistencyError("envelope truncation reached while evaluating a base form");
  if (model_.tag == ModelTag::A) {
    try {
      return restrict_form(a_, model_.base);
    } catch (const ContractError& e) {
      throw ConsistencyError(std::string("expected a base form: ") + e.what());
    }
  }
  TorusForm r(model_.base);
  for (const auto& [key, f] : b_) {
    if (key.a != 0 || key.k != 0) {
      if (f.max_abs() > 1e-9)
        throw ConsistencyError("expected a base form, found a fiber component of size " +
                               std::to_string(f.max_abs()));
      continue;
    }
    r += f;
  }
  return r;
}

TotalForm& TotalForm::operator+=(const TotalForm& o) {
  require_same(*this, o);
  truncated_ = truncated_ || o.truncated_;
  if (model_.tag == ModelTag::A)
    a_ += o.a_;
  else
    for (const auto& [key, f] : o.b_) add_tensor(key, f);
  return *this;
}

TotalForm& TotalForm::operator-=(const TotalForm& o) {
  require_same(*this, o);
  truncated_ = truncated_ || o.truncated_;
  if (model_.tag == ModelTag::A)
    a_ -= o.a_;
  else
    for (const auto& [key, f] : o.b_) add_tensor(key, -f);
  return *this;
}

TotalForm& TotalForm::operator*=(cplx c) {
  if (model_.tag == ModelTag::A) {
    a_ *= c;
    return *this;
  }
  for (auto it = b_.begin(); it != b_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? b_.erase(it) : std::next(it);
  }
  return *this;
}

TotalForm operator+(TotalForm a, const TotalForm& b) { return a += b; }
TotalForm operator-(TotalForm a, const TotalForm& b) { return a -= b; }
TotalForm operator*(cplx c, TotalForm a) { return a *= c; }
TotalForm operator*(const TotalForm& a, const TotalForm& b) { return multiply(a, b); }

TotalForm multiply(const TotalForm& x, const TotalForm& y) {
  require_same(x, y);
  const BundleModel& m = x.model_;
  TotalForm r(m);
  r.truncated_ = x.truncated_ || y.truncated_;
  if (m.tag == ModelTag::A) {
    r.a_ = wedge(x.a_, y.a_);
    return r;
  }
  // (alpha (x) g)(beta (x) h) = (-1)^{|g||beta|} alpha beta (x) g h
  for (const auto& [kx, fx] : x.b_)
    for (const auto& [ky, fy] : y.b_) {
      const int s = envelope_monomial_sign(m.calculus(), kx.k, ky.a, ky.k);
      if (s == 0) continue;
      auto [even, odd] = parity_split(fy);
      TorusForm prod = wedge(fx, even);
      prod += cplx(sign_of(kx.k)) * wedge(fx, odd);
      prod *= double(s);
      r.add_tensor({kx.a + ky.a, kx.k + ky.k}, prod);
    }
  return r;
}

TotalForm total_differential(const TotalForm& x) {
  const BundleModel& m = x.model_;
  TotalForm r(m);
  r.truncated_ = x.truncated_;
  if (m.tag == ModelTag::A) {
    r.a_ = differential(x.a_);
    return r;
  }
  // d(alpha (x) g) = d alpha (x) g + (-1)^{|alpha|} alpha (x) dg
  for (const auto& [key, f] : x.b_) {
    r.add_tensor(key, differential(f));
    auto [even, odd] = parity_split(f);
    const TorusForm signed_f = even - odd;
    const EnvelopeElement dg = envelope_monomial_differential(m.calculus(), key.a, key.k, m.max_degree);
    if (dg.truncated()) r.truncated_ = true;
    for (const auto& [gk, c] : dg.terms()) r.add_tensor(gk, c * signed_f);
  }
  return r;
}

TotalForm total_star(const TotalForm& x) {
  const BundleModel& m = x.model_;
  TotalForm r(m);
  r.truncated_ = x.truncated_;
  if (m.tag == ModelTag::A) {
    r.a_ = form_star(x.a_);
    return r;
  }
  for (const auto& [key, f] : x.b_) {
    const EnvelopeElement gs =
        envelope_star(EnvelopeElement::monomial(m.calculus(), key.a, key.k, 1.0, m.max_degree));
    for (const auto& [gk, c] : gs.terms()) r.add_tensor(gk, c * form_star(f));
  }
  return r;
}

double distance(const TotalForm& a, const TotalForm& b) {
  require_same(a, b);
  return (a - b).max_abs();
}

void validate_connection(const ConnectionSpec& omega, double tol) {
  const TorusForm& mu = omega.mu;
  if (mu.is_zero()) return;
  if (mu.dim() != omega.model.n || !same_deformation(mu.deformation(), omega.model.base))
    throw StructuralError("connection displacement does not live on the base");
  if (mu.pure_degree() != 1) throw ContractError("connection displacement must be a one-form");
  if (!is_hermitian(mu, tol)) throw ContractError("connection displacement must be Hermitian");
}

ConnectionSpec canonical_connection(const BundleModel& model) {
  return {model, TorusForm(model.base)};
}

TotalForm evaluate_connection(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  TotalForm w = TotalForm::from_base(m, omega.mu);
  if (m.tag == ModelTag::A) {
    // u_{n+1}^* d u_{n+1} = -2 pi dU_{n+1}
    const TorusElement u = TorusElement::generator(m.total, m.n + 1);
    const TorusForm canon = left_multiply(star(u), differential(TorusForm::from_element(u)));
    return w + TotalForm::from_total(m, canon);
  }
  return w + TotalForm::tensor(m, TorusForm::from_element(TorusElement::scalar(m.base, 1.0)), 0, 1);
}

namespace {

struct CoactionKey {
  Mask s;
  EnvelopeKey left;   // Model B envelope leg of the total form
  EnvelopeKey right;  // the coacting Hopf leg
  auto operator<=>(const CoactionKey&) const = default;
};
using CoactionImage = std::map<CoactionKey, TorusElement>;

void add_to(CoactionImage& img, const CoactionKey& key, const TorusElement& x) {
  if (x.is_zero()) return;
  auto [it, fresh] = img.try_emplace(key, x);
  if (!fresh) it->second += x;
}

CoactionImage total_coaction(const TotalForm& f) {
  const BundleModel& m = f.model();
  const CalculusKind kind = m.calculus();
  CoactionImage img;
  if (m.tag == ModelTag::A) {
    const Mask fib = fiber_axis(m);
    for (const auto& [s, x] : f.total_form().components())
      for (const auto& [mm, c] : x.terms()) {
        const int p = mm[m.n];
        const TorusElement mono = TorusElement::monomial(m.total, mm, c);
        add_to(img, {s, {0, 0}, {p, 0}}, mono);
        // dU_{n+1} -> dU_{n+1} (x) 1 - (1/2pi) 1 (x) theta; dU_{n+1} is the last factor.
        if (s & fib) add_to(img, {s & ~fib, {0, 0}, {p, 1}}, (-1.0 / (2.0 * kPi)) * mono);
      }
    return img;
  }
  for (const auto& [key, form] : f.tensor_terms()) {
    const EnvelopeTensor t = envelope_coproduct(kind, key.a, key.k, m.max_degree);
    for (const auto& [tk, c] : t)
      for (const auto& [s, x] : form.components()) add_to(img, {s, tk.left, tk.right}, c * x);
  }
  return img;
}

}  // namespace

double connection_coaction_defect(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  CoactionImage img = total_coaction(w);
  // subtract omega(theta) (x) 1 + 1 (x) theta
  if (m.tag == ModelTag::A) {
    for (const auto& [s, x] : w.total_form().components()) add_to(img, {s, {0, 0}, {0, 0}}, -x);
    add_to(img, {0, {0, 0}, {0, 1}}, TorusElement::scalar(m.total, -1.0));
  } else {
    for (const auto& [key, form] : w.tensor_terms())
      for (const auto& [s, x] : form.components()) add_to(img, {s, key, {0, 0}}, -x);
    add_to(img, {0, {0, 0}, {0, 1}}, TorusElement::scalar(m.total, -1.0));
  }
  double d = 0.0;
  for (const auto& [k, x] : img) d = std::max(d, x.max_abs());
  return d;
}

TotalForm theta_pairing(const BundleModel& model, const TotalForm& psi, const TotalForm& phi) {
  const cplx s = model.theta_coefficient();
  if (s == 0.0) return TotalForm(model);
  return s * multiply(psi, phi);
}

TotalForm curvature_total(const ConnectionSpec& omega) {
  validate_connection(omega);
  const TotalForm w = evaluate_connection(omega);
  return total_differential(w) - theta_pairing(omega.model, w, w);
}

AdSection curvature(const ConnectionSpec& omega) { return curvature_total(omega).to_base(); }

AdSection curvature_closed_form(const ConnectionSpec& omega) {
  const TorusForm dmu = differential(omega.mu);
  if (omega.model.tag == ModelTag::A) return dmu;
  return dmu + wedge(omega.mu, omega.mu);
}

namespace {

void require_horizontal(const ConnectionSpec& omega, const TotalForm& phi) {
  if (!same_model(omega.model, phi.model())) throw StructuralError("form and connection live on different bundles");
  if (!phi.is_horizontal()) throw ContractError("covariant derivative needs a horizontal form");
}

TotalForm checked_horizontal(TotalForm r) {
  if (!r.is_horizontal()) {
    // the vertical part must cancel exactly up to rounding
    double vertical = 0.0;
    if (r.model().tag == ModelTag::A) {
      for (const auto& [s, x] : r.total_form().components())
        if (s & fiber_axis(r.model())) vertical = std::max(vertical, x.max_abs());
    } else {
      for (const auto& [key, f] : r.tensor_terms())
        if (key.k != 0) vertical = std::max(vertical, f.max_abs());
    }
    if (vertical > 1e-9) throw ConsistencyError("covariant derivative produced a vertical component");
  }
  return r;
}

}  // namespace

TotalForm covariant_derivative(const ConnectionSpec& omega, const TotalForm& phi) {
  require_horizontal(omega, phi);
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  TotalForm r = total_differential(phi);
  for (int k : phi.degrees())
    for (const auto& [p, piece] : phi.degree_part(k).coaction_pieces()) {
      const cplx c = germs_map(m.calculus(), LaurentElement::monomial(p));
      if (c == 0.0) continue;
      r -= double(sign_of(k)) * c * multiply(piece, w);
    }
  return checked_horizontal(std::move(r));
}

TotalForm dual_covariant_derivative(const ConnectionSpec& omega, const TotalForm& phi) {
  require_horizontal(omega, phi);
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  TotalForm r = total_differential(phi);
  for (const auto& [p, piece] : phi.coaction_pieces()) {
    // S^{-1}(z^p) = z^{-p}
    const cplx c = germs_map(m.calculus(), LaurentElement::monomial(-p));
    if (c == 0.0) continue;
    r += c * multiply(w, piece);
  }
  return checked_horizontal(std::move(r));
}

namespace {

int require_pure_degree(const AdSection& tau) {
  const int a = tau.pure_degree();
  if (a == -2) throw ContractError("section must have pure degree");
  return a;
}

}  // namespace

AdSection s_operator(const ConnectionSpec& omega, const AdSection& tau) {
  const int a = require_pure_degree(tau);
  if (a < 0) return TorusForm(omega.model.base);
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  const TotalForm t = TotalForm::from_base(m, tau);
  // S(tau) = <omega,tau> - (-1)^a <tau,omega>; the bracket vanishes for U(1).
  const TotalForm s = theta_pairing(m, w, t) - double(sign_of(a)) * theta_pairing(m, t, w);
  return (-1.0 * s).to_base();
}

AdSection twisted_covariant_derivative(const ConnectionSpec& omega, const AdSection& tau) {
  const int a = require_pure_degree(tau);
  if (a < 0) return TorusForm(omega.model.base);
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  const TotalForm t = TotalForm::from_base(m, tau);
  TotalForm r = total_differential(t) - theta_pairing(m, w, t);
  r += double(sign_of(a)) * theta_pairing(m, t, w);
  return r.to_base();
}

AdSection dual_twisted_covariant_derivative(const ConnectionSpec& omega, const AdSection& tau) {
  return form_star(twisted_covariant_derivative(omega, form_star(tau)));
}

AdSection bianchi_rhs(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  const TotalForm ww = theta_pairing(m, w, w);
  return (theta_pairing(m, w, ww) - theta_pairing(m, ww, w)).to_base();
}

TotalForm random_horizontal(const BundleModel& model, int degree, Rng& rng) {
  TotalForm r(model);
  for (int t = 0; t < 3; ++t) {
    const TorusForm base = random_form(model.base, degree, 1, 2, rng);
    const int p = uniform_int(rng, -2, 2);
    if (model.tag == ModelTag::A) {
      const TorusElement u = TorusElement::generator(model.total, model.n + 1, p);
      r += TotalForm::from_total(model, right_multiply(embed_form(base, model.total), u));
    } else {
      r += TotalForm::tensor(model, base, p, 0);
    }
  }
  return r;
}

CheckReport check_regular(const ConnectionSpec& omega, int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw ContractError("regularity check needs at least one sample");
  const BundleModel& m = omega.model;
  const TotalForm w = evaluate_connection(omega);
  CheckReport rep;

  std::vector<std::pair<std::string, TotalForm>> cases;
  for (int j = 1; j <= m.n; ++j)
    cases.emplace_back("u_" + std::to_string(j),
                       TotalForm::from_base(m, TorusForm::from_element(TorusElement::generator(m.base, j))));
  if (m.tag == ModelTag::A)
    cases.emplace_back("u_" + std::to_string(m.n + 1),
                       TotalForm::from_total(m, TorusForm::from_element(TorusElement::generator(m.total, m.n + 1))));
  else
    cases.emplace_back("1 (x) z", TotalForm::tensor(m, TorusForm::from_element(TorusElement::scalar(m.base, 1.0)), 1, 0));
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const int k = i % (m.n + 1);
    cases.emplace_back("random horizontal form #" + std::to_string(i) + " of degree " + std::to_string(k),
                       random_horizontal(m, k, rng));
  }

  for (const auto& [name, phi] : cases) {
    TotalForm defect = multiply(w, phi);
    for (int k : phi.degrees())
      for (const auto& [p, piece] : phi.degree_part(k).coaction_pieces()) {
        const cplx c = germ_module_action(m.calculus(), LaurentElement::monomial(p));
        defect -= double(sign_of(k)) * c * multiply(piece, w);
      }
    const double d = defect.max_abs();
    rep.max_defect = std::max(rep.max_defect, d);
    if (d > tol && rep.passed) {
      rep.passed = false;
      std::ostringstream os;
      os << "omega(theta) phi != (-1)^k phi_(0) omega(theta o phi_(1)) for phi = " << name
         << " (defect " << d << ")";
      rep.witness = os.str();
    }
  }
  return rep;
}

CheckReport check_multiplicative(const ConnectionSpec& omega, double tol) {
  CheckReport rep;
  const BundleModel& m = omega.model;
  if (m.tag == ModelTag::A) {
    rep.rationale = "classical one-dimensional calculus of an abelian group: every connection is multiplicative";
    return rep;
  }
  rep.rationale = "checked on the generators (z^2 - 1) z^b of the right ideal, b in [-3, 3]";
  const TotalForm w = evaluate_connection(omega);
  const double ww = multiply(w, w).max_abs();
  for (int b = -3; b <= 3; ++b) {
    const LaurentElement g = LaurentElement::monomial(b + 2) - LaurentElement::monomial(b);
    cplx coeff = 0.0;
    for (const auto& [ab, c] : hopf_coproduct(g))
      coeff += c * germs_map(m.calculus(), LaurentElement::monomial(ab.first)) *
               germs_map(m.calculus(), LaurentElement::monomial(ab.second));
    const double d = std::abs(coeff) * ww;
    rep.max_defect = std::max(rep.max_defect, d);
    if (d > tol && rep.passed) {
      rep.passed = false;
      rep.witness = "generator (z^2 - 1) z^" + std::to_string(b);
    }
  }
  return rep;
}

}  // namespace nct
