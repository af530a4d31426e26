#include "nctorus/dirac.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

#include "nctorus/random.hpp"

namespace nct {

namespace {

using Mat = Eigen::MatrixXcd;
const cplx I(0.0, 1.0);

Mat mat2(cplx a, cplx b, cplx c, cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Mat mat4(std::initializer_list<cplx> v) {
  Mat m(4, 4);
  auto it = v.begin();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace

GammaRep gamma_matrices(int n) {
  if (n < 2) throw ContractError("gamma matrices need n >= 2");
  GammaRep rep;
  rep.n = n;
  const Mat s1 = mat2(0, 1, 1, 0), s2 = mat2(0, -I, I, 0), s3 = mat2(1, 0, 0, -1);
  if (n == 2) {
    rep.gamma = {s1, s2};
  } else if (n == 3) {
    rep.gamma = {s1, s2, s3};
  } else if (n == 4) {
    rep.gamma = {
        mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}),
        I * mat4({0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0}),
        I * mat4({0, 0, 0, -I, 0, 0, I, 0, 0, I, 0, 0, -I, 0, 0, 0}),
        I * mat4({0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0}),
    };
  } else if (n % 2 == 0) {
    const GammaRep lower = gamma_matrices(n - 2);
    const Mat id = Mat::Identity(lower.spin_dim, lower.spin_dim);
    for (const Mat& g : lower.gamma) rep.gamma.push_back(kron(g, s1));
    rep.gamma.push_back(kron(id, s2));
    rep.gamma.push_back(kron(id, s3));
  } else {
    // odd: append the normalized product of the even-dimensional generators
    const GammaRep lower = gamma_matrices(n - 1);
    rep.gamma = lower.gamma;
    Mat chir = Mat::Identity(lower.spin_dim, lower.spin_dim);
    for (const Mat& g : lower.gamma) chir = chir * g;
    const int half = (n - 1) / 2;
    if (half % 2 != 0) chir *= I;
    rep.gamma.push_back(chir);
  }
  rep.spin_dim = static_cast<int>(rep.gamma.front().rows());
  if (anticommutation_defect(rep) > 1e-14)
    throw ConsistencyError("constructed gamma matrices fail the anticommutation relations");
  return rep;
}

double anticommutation_defect(const GammaRep& rep) {
  double d = 0.0;
  const int s = rep.spin_dim;
  for (int j = 0; j < rep.n; ++j)
    for (int k = 0; k < rep.n; ++k) {
      Mat a = rep.gamma[j] * rep.gamma[k] + rep.gamma[k] * rep.gamma[j];
      if (j == k) a -= 2.0 * Mat::Identity(s, s);
      d = std::max(d, a.cwiseAbs().maxCoeff());
    }
  return d;
}

Spinor::Spinor(DeformationPtr xi, int spin_dim) : xi_(std::move(xi)), spin_dim_(spin_dim) {}

Spinor Spinor::monomial(DeformationPtr xi, const Exponent& m, const Eigen::VectorXcd& v) {
  Spinor s(std::move(xi), static_cast<int>(v.size()));
  s.add(m, v);
  return s.normalize();
}

Eigen::VectorXcd Spinor::at(const Exponent& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Eigen::VectorXcd::Zero(spin_dim_) : it->second;
}

void Spinor::add(const Exponent& m, const Eigen::VectorXcd& v) {
  if (static_cast<int>(v.size()) != spin_dim_) throw StructuralError("spinor component size mismatch");
  if (static_cast<int>(m.size()) != dim()) throw StructuralError("spinor exponent length mismatch");
  auto [it, fresh] = terms_.try_emplace(m, v);
  if (!fresh) it->second += v;
}

Spinor& Spinor::normalize(double threshold) {
  std::erase_if(terms_, [&](const auto& t) { return t.second.cwiseAbs().maxCoeff() < threshold; });
  return *this;
}

double Spinor::max_abs() const {
  double r = 0.0;
  for (const auto& [m, v] : terms_) r = std::max(r, v.cwiseAbs().maxCoeff());
  return r;
}

int Spinor::radius() const {
  int r = 0;
  for (const auto& [m, v] : terms_)
    for (int x : m) r = std::max(r, std::abs(x));
  return r;
}

namespace {

void check_compatible(const Spinor& a, const Spinor& b) {
  if (a.dim() != b.dim() || a.spin_dim() != b.spin_dim()) throw StructuralError("spinor dimension mismatch");
  if (!same_deformation(a.deformation(), b.deformation())) throw StructuralError("spinor deformation mismatch");
}

}  // namespace

Spinor& Spinor::operator+=(const Spinor& o) {
  check_compatible(*this, o);
  for (const auto& [m, v] : o.terms_) add(m, v);
  return normalize();
}

Spinor& Spinor::operator-=(const Spinor& o) {
  check_compatible(*this, o);
  for (const auto& [m, v] : o.terms_) add(m, -v);
  return normalize();
}

Spinor& Spinor::operator*=(cplx c) {
  for (auto& t : terms_) t.second *= c;
  return normalize();
}

Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
Spinor operator*(cplx c, Spinor a) { return a *= c; }

double distance(const Spinor& a, const Spinor& b) { return (a - b).max_abs(); }

Spinor left_multiply(const TorusElement& b, const Spinor& psi) {
  if (b.dim() != psi.dim() || !same_deformation(b.deformation(), psi.deformation()))
    throw StructuralError("algebra element and spinor live on different tori");
  Spinor r(psi.deformation(), psi.spin_dim());
  const Deformation& xi = *psi.deformation();
  Exponent sum(psi.dim());
  for (const auto& [w, c] : b.terms())
    for (const auto& [m, v] : psi.terms()) {
      for (int i = 0; i < psi.dim(); ++i) sum[i] = w[i] + m[i];
      r.add(sum, (c * product_phase(xi, w, m)) * v);
    }
  return r.normalize();
}

cplx spinor_inner(const Spinor& a, const Spinor& b) {
  check_compatible(a, b);
  cplx s = 0.0;
  for (const auto& [m, v] : a.terms()) {
    auto it = b.terms().find(m);
    if (it != b.terms().end()) s += v.dot(it->second);  // dot conjugates the first argument
  }
  return s;
}

namespace {

void check_rep(const GammaRep& rep, const Spinor& psi) {
  if (rep.n != psi.dim() || rep.spin_dim != psi.spin_dim())
    throw StructuralError("gamma representation does not match the spinor");
}

}  // namespace

Spinor dirac_apply(const GammaRep& rep, const Spinor& psi) {
  check_rep(rep, psi);
  Spinor r(psi.deformation(), psi.spin_dim());
  for (const auto& [m, v] : psi.terms()) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.spin_dim());
    for (int j = 0; j < rep.n; ++j)
      if (m[j] != 0) out += cplx(0.0, 2.0 * kPi * m[j]) * (rep.gamma[j] * v);
    r.add(m, out);
  }
  return r.normalize();
}

Spinor pi_r_apply(const TorusElement& b0, const TorusElement& b1, const GammaRep& rep, const Spinor& psi) {
  check_rep(rep, psi);
  Spinor r(psi.deformation(), psi.spin_dim());
  for (int j = 1; j <= rep.n; ++j) {
    Spinor t = left_multiply(derivation(j, b1), psi);
    for (auto& [m, v] : t.terms()) r.add(m, rep.gamma[j - 1] * v);
  }
  return left_multiply(b0, r.normalize());
}

Spinor clifford_apply(const TorusForm& alpha, const GammaRep& rep, const Spinor& psi) {
  check_rep(rep, psi);
  Spinor r(psi.deformation(), psi.spin_dim());
  for (const auto& [s, x] : alpha.components()) {
    if (mask_degree(s) != 1) throw ContractError("Clifford action needs a one-form");
    const int j = std::countr_zero(s);
    const Spinor t = left_multiply(x, psi);
    for (const auto& [m, v] : t.terms()) r.add(m, -I * (rep.gamma[j] * v));
  }
  return r.normalize();
}

Spinor reduce(const GaugeSpinor& psi) {
  if (psi.pairs.empty()) throw ContractError("empty gauge spinor");
  const Spinor& first = psi.pairs.front().second;
  Spinor r(first.deformation(), first.spin_dim());
  for (const auto& [b, s] : psi.pairs) r += left_multiply(star(b), s);
  return r;
}

TorusForm gauge_connection_form(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  if (m.tag != ModelTag::A) throw ContractError("gauge Dirac operator is defined for model A");
  const TorusElement u = TorusElement::generator(m.total, m.n + 1);
  const TotalForm dh = dual_covariant_derivative(omega, TotalForm::from_total(m, TorusForm::from_element(u)));
  const TorusForm a = left_multiply(star(u), dh.total_form());
  try {
    return restrict_form(a, m.base);
  } catch (const ContractError& e) {
    throw ConsistencyError(std::string("gauge connection form is not a base form: ") + e.what());
  }
}

GaugeSpinor gauge_dirac_apply(const ConnectionSpec& omega, const GammaRep& rep, const GaugeSpinor& psi) {
  validate_connection(omega);
  const TorusForm alpha = gauge_connection_form(omega);
  const Spinor phi = reduce(psi);
  Spinor out = dirac_apply(rep, phi) + clifford_apply(alpha, rep, phi);
  GaugeSpinor r;
  r.pairs.emplace_back(TorusElement::scalar(omega.model.base, 1.0), std::move(out));
  return r;
}

Spinor dirac_residual(const GammaRep& rep, const GaugeSpinor& psi) {
  if (psi.pairs.empty()) throw ContractError("empty gauge spinor");
  const Spinor& first = psi.pairs.front().second;
  Spinor r(first.deformation(), first.spin_dim());
  for (const auto& [b, s] : psi.pairs) {
    r += left_multiply(b, dirac_apply(rep, s));
    r -= pi_r_apply(TorusElement::scalar(b.deformation(), 1.0), b, rep, s);
  }
  return r;
}

cplx gauge_spinor_inner(const GaugeSpinor& a, const GaugeSpinor& b) {
  // <T^R_1 b1^*, T^R_1 b2^*>_R = b1 b2^*
  cplx s = 0.0;
  for (const auto& [b1, s1] : a.pairs)
    for (const auto& [b2, s2] : b.pairs) s += spinor_inner(s1, left_multiply(multiply(b1, star(b2)), s2));
  return s;
}

Eigen::MatrixXcd gauge_dirac_matrix(const ConnectionSpec& omega, const GammaRep& rep, int cutoff) {
  if (cutoff < 1) throw ContractError("cutoff must be at least 1");
  validate_connection(omega);
  const TorusForm alpha = gauge_connection_form(omega);
  const DeformationPtr& xi = omega.model.base;
  MatrixRepresentation win;
  win.cutoff = cutoff;
  win.basis = truncated_basis(omega.model.n, cutoff);
  const int sd = rep.spin_dim;
  const int dim = static_cast<int>(win.basis.size()) * sd;
  Mat a = Mat::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(sd);
    e(c % sd) = 1.0;
    const Spinor phi = Spinor::monomial(xi, win.basis[c / sd], e);
    const Spinor img = dirac_apply(rep, phi) + clifford_apply(alpha, rep, phi);
    for (const auto& [m, v] : img.terms()) {
      const int row = win.index_of(m);
      if (row < 0) continue;  // leaves the truncation
      a.block(row * sd, c, sd, 1) += v;
    }
  }
  return a;
}

SpectrumReport dirac_spectrum(const ConnectionSpec& omega, const GammaRep& rep, int cutoff, std::uint64_t seed) {
  const Mat a = gauge_dirac_matrix(omega, rep, cutoff);
  SpectrumReport out;
  Eigen::ComplexEigenSolver<Mat> es(a, false);
  if (es.info() != Eigen::Success) throw ConsistencyError("eigensolver did not converge");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  auto key = [](cplx z) {
    return std::make_pair(std::llround(std::abs(z) * 1e8), std::llround(std::arg(z) * 1e8));
  };
  for (cplx& z : ev) {
    if (std::abs(z.real()) < 1e-10) z.real(0.0);
    if (std::abs(z.imag()) < 1e-10) z.imag(0.0);
  }
  std::stable_sort(ev.begin(), ev.end(), [&](cplx x, cplx y) { return key(x) < key(y); });
  out.eigenvalues = ev;
  for (cplx z : ev)
    if (std::abs(z) < 1e-9) ++out.kernel_dimension;

  // adjointness on vectors whose images stay inside the window
  const TorusForm alpha = gauge_connection_form(omega);
  const int interior = cutoff - alpha.radius();
  const int sd = rep.spin_dim;
  MatrixRepresentation win;
  win.cutoff = cutoff;
  win.basis = truncated_basis(omega.model.n, cutoff);
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(win.basis.size()); ++i) {
    int r = 0;
    for (int x : win.basis[i]) r = std::max(r, std::abs(x));
    if (r <= interior)
      for (int s = 0; s < sd; ++s) idx.push_back(i * sd + s);
  }
  Rng rng(seed);
  double plus = 0.0, minus = 0.0;
  for (int t = 0; t < 8 && !idx.empty(); ++t) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(a.cols()), y = Eigen::VectorXcd::Zero(a.cols());
    for (int i : idx) {
      x(i) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
      y(i) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    const cplx l = (a * x).dot(y), r = x.dot(a * y);
    const double scale = std::max(1.0, std::abs(l) + std::abs(r));
    plus = std::max(plus, std::abs(l - r) / scale);
    minus = std::max(minus, std::abs(l + r) / scale);
  }
  if (idx.empty()) {
    out.signature = 0;
  } else if (plus <= 1e-10 && minus <= 1e-10) {
    out.signature = 0;  // zero operator; neither sign is distinguished
  } else if (plus <= 1e-10) {
    out.signature = 1;
  } else if (minus <= 1e-10) {
    out.signature = -1;
  }
  out.adjointness_defect = std::min(plus, minus);
  return out;
}

std::vector<SpectrumLine> group_spectrum(const std::vector<cplx>& ev, double tol) {
  std::vector<SpectrumLine> out;
  for (std::size_t i = 0; i < ev.size();) {
    std::size_t j = i;
    cplx sum = 0.0;
    while (j < ev.size() && std::abs(ev[j] - ev[i]) <= tol) sum += ev[j++];
    const cplx mean = sum / double(j - i);
    auto snap = [](double v) { return std::abs(v) < 1e-10 ? 0.0 : std::round(v * 1e10) / 1e10; };
    out.push_back({snap(mean.real()), snap(mean.imag()), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

}  // namespace nct
