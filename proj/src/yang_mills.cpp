#include "nctorus/yang_mills.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace nct {

const char* to_string(ResidualKind k) {
  switch (k) {
    case ResidualKind::Analytic: return "analytic";
    case ResidualKind::GeometricA: return "geometric_A";
    case ResidualKind::GeometricB: return "geometric_B";
  }
  return "?";
}

namespace {

int sign_of(int k) { return (k & 1) ? -1 : 1; }

int pure_degree_or_throw(const TorusForm& s) {
  const int p = s.pure_degree();
  if (p == -2) throw ContractError("section must have pure degree");
  return p;
}

}  // namespace

TrivializedSection gauge_qlc_apply(const ConnectionSpec& omega, const TorusElement& section) {
  // trivial corepresentation: the Grassmann connection, independent of omega
  (void)omega;
  return differential(TorusForm::from_element(section));
}

TrivializedSection exterior_cov_derivative(const ConnectionSpec& omega, const TrivializedSection& s) {
  (void)omega;
  return differential(s);
}

TorusElement hermitian_structure(const TorusElement& b1, const TorusElement& b2) {
  return multiply(star(b1), b2);
}

TrivializedSection formal_adjoint_apply(const ConnectionSpec& omega, const TrivializedSection& s) {
  const int p = pure_degree_or_throw(s);
  if (p == 0) throw ContractError("formal adjoint needs a section of degree at least one");
  if (p < 0) return TorusForm(omega.model.base);
  TorusForm r = hodge_inverse(exterior_cov_derivative(omega, hodge(s)));
  return double(sign_of(p - 1)) * r;
}

TrivializedSection s_derivative_apply(const ConnectionSpec& omega, const TrivializedSection& s) {
  const int a = pure_degree_or_throw(s);
  if (omega.model.tag == ModelTag::A || a < 0) return TorusForm(omega.model.base);
  return wedge(omega.mu, s) - double(sign_of(a)) * wedge(s, omega.mu);
}

TrivializedSection s_adjoint_apply(const ConnectionSpec& omega, const TrivializedSection& s) {
  const int p = pure_degree_or_throw(s);
  if (omega.model.tag == ModelTag::A || p < 0) return TorusForm(omega.model.base);
  if (p == 0) throw ContractError("S-adjoint needs a section of degree at least one");
  const int a = p - 1;
  const int n = omega.model.n;
  const TorusForm hs = hodge(s);
  TorusForm inner = double(sign_of(a)) * wedge(omega.mu, hs);
  inner -= double(sign_of(n - 1)) * wedge(hs, omega.mu);
  return hodge_inverse(inner);
}

TorusForm yang_mills_closed_form(const TorusForm& mu) {
  const int n = mu.dim();
  const TorusForm f = differential(mu) + wedge(mu, mu);
  const TorusForm hf = hodge(f);
  return differential(hf) + wedge(mu, hf) + double(sign_of(n - 1)) * wedge(hf, mu);
}

TrivializedSection geometric_closed_form(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  if (m.tag == ModelTag::B) return -hodge_inverse(yang_mills_closed_form(omega.mu));
  TorusForm r(m.base);
  const int n = m.n;
  TorusElement div(m.base);
  for (int k = 1; k <= n; ++k) div += derivation(k, omega.mu.component(Mask(1) << (k - 1)));
  for (int j = 1; j <= n; ++j) {
    const TorusElement xj = omega.mu.component(Mask(1) << (j - 1));
    r += TorusForm::one_form(derivation(j, div) - laplacian(xj), j);
  }
  return r;
}

ResidualReport geometric_residual(const ConnectionSpec& omega, double tol, double consistency_tol) {
  validate_connection(omega);
  const TorusForm f = curvature(omega);
  ResidualReport rep;
  rep.kind = omega.model.tag == ModelTag::A ? ResidualKind::GeometricA : ResidualKind::GeometricB;
  rep.residual = formal_adjoint_apply(omega, f) + s_adjoint_apply(omega, f);
  if (rep.residual.is_zero()) rep.residual = TorusForm(omega.model.base);
  rep.consistency_gap = distance(rep.residual, geometric_closed_form(omega));
  if (rep.consistency_gap > consistency_tol)
    throw ConsistencyError("geometric residual: operator pipeline and closed form differ by " +
                           std::to_string(rep.consistency_gap));
  rep.norm = form_norm(rep.residual);
  rep.is_solution = rep.norm <= tol;
  return rep;
}

ResidualReport analytic_residual(const BundleModel& model, const TorusForm& mu, double tol,
                                 double consistency_tol) {
  const ConnectionSpec omega{model, mu.is_zero() ? TorusForm(model.base) : mu};
  validate_connection(omega);
  const int n = model.n;
  // Compatible connection T^triv -> T^triv (x) mu: d^nabla(s) = d s + mu s.
  auto d_nabla = [&](const TorusForm& s) { return differential(s) + wedge(omega.mu, s); };
  const TorusForm f = d_nabla(omega.mu);
  const TorusForm hf = hodge(f);
  // [nabla, star R]: d^nabla(star F) - (-1)^{n-2} (star F) mu
  ResidualReport rep;
  rep.kind = ResidualKind::Analytic;
  rep.residual = d_nabla(hf) - double(sign_of(n - 2)) * wedge(hf, omega.mu);
  if (rep.residual.is_zero()) rep.residual = TorusForm(model.base);
  rep.consistency_gap = distance(rep.residual, yang_mills_closed_form(omega.mu));
  if (rep.consistency_gap > consistency_tol)
    throw ConsistencyError("analytic residual: commutator form and closed form differ by " +
                           std::to_string(rep.consistency_gap));
  rep.norm = form_norm(rep.residual);
  rep.is_solution = rep.norm <= tol;
  return rep;
}

double ym_functional(const ConnectionSpec& omega) {
  const TorusForm r = curvature(omega);
  return std::max(0.0, inner_product(r, r).real());
}

ShiftResult gauge_shift(const ConnectionSpec& omega, const TorusForm& shift, double tol) {
  if (!shift.is_zero()) {
    if (shift.dim() != omega.model.n || !same_deformation(shift.deformation(), omega.model.base))
      throw StructuralError("shift does not live on the base");
    if (shift.pure_degree() != 1) throw ContractError("shift must be a one-form");
    if (!is_hermitian(shift, tol)) throw ContractError("shift must be Hermitian");
  }
  ShiftResult r;
  r.omega = omega;
  r.omega.mu = omega.mu + shift;
  if (omega.model.tag == ModelTag::A) {
    r.ym_invariant = differential(shift).max_abs() <= tol;
  } else {
    bool central = true;
    const Exponent zero(omega.model.n, 0);
    for (const auto& [s, x] : shift.components())
      for (const auto& [m, c] : x.terms())
        if (m != zero) central = false;
    r.ym_invariant = central && (differential(shift) + wedge(shift, shift)).max_abs() <= tol;
  }
  return r;
}

namespace {

// Coordinates {u^m dU_j : |m|_inf <= max_exp} for one-forms.
struct OneFormCoordinates {
  DeformationPtr xi;
  int n;
  MatrixRepresentation window;  // for index_of only

  OneFormCoordinates(DeformationPtr x, int max_exp) : xi(std::move(x)), n(xi->dim()) {
    window.cutoff = max_exp;
    window.basis = truncated_basis(n, max_exp);
  }
  int size() const { return static_cast<int>(window.basis.size()) * n; }
  TorusForm column(int c) const {
    return TorusForm::one_form(TorusElement::monomial(xi, window.basis[c / n]), c % n + 1);
  }
  Eigen::VectorXcd to_vec(const TorusForm& f) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
    for (const auto& [s, x] : f.components()) {
      if (mask_degree(s) != 1) throw ContractError("expected a one-form");
      const int j = std::countr_zero(s);
      for (const auto& [m, c] : x.terms()) {
        const int idx = window.index_of(m);
        if (idx < 0) throw ContractError("one-form outside the coordinate window");
        v(idx * n + j) = c;
      }
    }
    return v;
  }
  TorusForm to_form(const Eigen::VectorXcd& v) const {
    TorusForm f(xi);
    for (int c = 0; c < size(); ++c)
      if (std::abs(v(c)) > 1e-12)
        f.add_component(Mask(1) << (c % n), TorusElement::monomial(xi, window.basis[c / n], v(c)));
    return f;
  }
};

// Assembles the matrix of a linear operator on one-forms; rows are the (axes, exponent)
// coordinates of the images, numbered on first appearance.
template <class Op>
Eigen::MatrixXcd assemble(const OneFormCoordinates& coords, Op op) {
  std::map<std::pair<Mask, Exponent>, int> rows;
  std::vector<std::vector<std::pair<int, cplx>>> cols(coords.size());
  for (int c = 0; c < coords.size(); ++c) {
    for (const TorusForm& img : op(coords.column(c)))
      for (const auto& [s, x] : img.components())
        for (const auto& [m, v] : x.terms()) {
          auto [it, fresh] = rows.try_emplace({s, m}, static_cast<int>(rows.size()));
          cols[c].emplace_back(it->second, v);
        }
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(std::max<int>(1, rows.size()), coords.size());
  for (int c = 0; c < coords.size(); ++c)
    for (const auto& [r, v] : cols[c]) a(r, c) += v;
  return a;
}

KernelResult kernel_of(const Eigen::MatrixXcd& a, const OneFormCoordinates& coords, double threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const int cols = static_cast<int>(a.cols());
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = threshold * std::max(1.0, smax);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  KernelResult k;
  k.dimension = cols - rank;
  for (int i = 0; i < cols; ++i) k.singular_values.push_back(i < sv.size() ? sv(i) : 0.0);
  std::sort(k.singular_values.begin(), k.singular_values.end());
  const double smallest_kept = rank > 0 ? sv(rank - 1) : 0.0;
  const double largest_dropped = rank < sv.size() ? sv(rank) : 0.0;
  k.gap = largest_dropped > 0.0 ? smallest_kept / largest_dropped : INFINITY;
  for (int i = rank; i < cols; ++i) k.basis.push_back(coords.to_form(svd.matrixV().col(i)));
  return k;
}

int hermitian_real_dimension(const KernelResult& k, const OneFormCoordinates& coords) {
  const int d = static_cast<int>(k.basis.size());
  if (d == 0) return 0;
  const int rows = coords.size();
  // v = sum (x_i + i y_i) b_i ; constraint v* - v = 0 as a real system
  Eigen::MatrixXd a(2 * rows, 2 * d);
  for (int i = 0; i < d; ++i) {
    const TorusForm bs = form_star(k.basis[i]);
    const Eigen::VectorXcd cx = coords.to_vec(bs - k.basis[i]);
    const Eigen::VectorXcd cy = coords.to_vec(cplx(0.0, -1.0) * (bs + k.basis[i]));
    a.col(i) << cx.real(), cx.imag();
    a.col(d + i) << cy.real(), cy.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * std::max(1.0, sv(0))) ++rank;
  return 2 * d - rank;
}

}  // namespace

FlatKernelReport flat_kernel_solver(const BundleModel& model, int max_exp, double gap_threshold) {
  if (max_exp < 1) throw ContractError("max_exp must be at least 1");
  const OneFormCoordinates coords(model.base, max_exp);
  // Model B's equation is nonlinear in mu; its linearization at mu = 0 is the same operator.
  const Eigen::MatrixXcd ym = assemble(coords, [](const TorusForm& f) {
    return std::vector<TorusForm>{codifferential(differential(f))};
  });
  const Eigen::MatrixXcd dz = assemble(coords, [](const TorusForm& f) {
    return std::vector<TorusForm>{differential(f)};
  });
  const Eigen::MatrixXcd harm = assemble(coords, [](const TorusForm& f) {
    return std::vector<TorusForm>{differential(f), codifferential(f)};
  });
  FlatKernelReport rep;
  rep.ym = kernel_of(ym, coords, gap_threshold);
  rep.zero_curvature = kernel_of(dz, coords, gap_threshold);
  rep.harmonic = kernel_of(harm, coords, gap_threshold);
  rep.ym_hermitian_real_dimension = hermitian_real_dimension(rep.ym, coords);
  return rep;
}

bool in_span(const std::vector<TorusForm>& basis, const TorusForm& form, int max_exp, double tol) {
  const OneFormCoordinates coords(form.deformation(), max_exp);
  const Eigen::VectorXcd target = coords.to_vec(form);
  if (basis.empty()) return target.norm() <= tol;
  Eigen::MatrixXcd b(coords.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) b.col(i) = coords.to_vec(basis[i]);
  const Eigen::VectorXcd c = b.colPivHouseholderQr().solve(target);
  return (b * c - target).norm() <= tol * std::max(1.0, target.norm());
}

}  // namespace nct
