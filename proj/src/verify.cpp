#include "nctorus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nctorus/random.hpp"

namespace nct {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void CheckAccumulator::record(double defect, const std::function<std::string()>& describe) {
  ++r_.cases;
  if (!std::isfinite(defect)) defect = INFINITY;
  r_.max_defect = std::max(r_.max_defect, defect);
  if (defect > r_.tolerance && r_.passed) {
    r_.passed = false;
    std::ostringstream os;
    os << describe() << " (defect " << defect << ")";
    r_.witness = os.str();
  }
}

void CheckAccumulator::fail(const std::string& witness) {
  ++r_.cases;
  if (r_.passed) r_.witness = witness;
  r_.passed = false;
}

namespace {

double tol_for(const VerifyConfig& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

std::string case_label(const char* what, int i) { return std::string(what) + " #" + std::to_string(i); }

// Mixes the suite name into the seed so suites are independent of each other's draws.
Rng suite_rng(const VerifyConfig& cfg, std::uint64_t salt) { return Rng(cfg.seed * 0x9E3779B97F4A7C15ULL + salt); }

int sign_of(int k) { return (k & 1) ? -1 : 1; }

}  // namespace

double commutation_defect(const DeformationPtr& xi) {
  double d = 0.0;
  const int n = xi->dim();
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      const TorusElement uk = TorusElement::generator(xi, k), uj = TorusElement::generator(xi, j);
      const cplx q = std::exp(cplx(0.0, 2.0 * kPi * (*xi)(k, j)));
      d = std::max(d, distance(multiply(uk, uj), q * multiply(uj, uk)));
    }
  return d;
}

double oracle_product_defect(const TorusElement& a, const TorusElement& b) {
  // Both matrices act on the vacuum u^0; a window of radius ra + rb keeps every image inside.
  const int cutoff = std::max(1, a.radius() + b.radius());
  const MatrixRepresentation ma = matrix_representation(a, cutoff);
  const MatrixRepresentation mb = matrix_representation(b, cutoff);
  const int vac = ma.index_of(Exponent(a.dim(), 0));
  const Eigen::VectorXcd via_matrices = ma.matrix * mb.matrix.col(vac);
  const TorusElement ab = multiply(a, b);
  Eigen::VectorXcd direct = Eigen::VectorXcd::Zero(via_matrices.size());
  for (const auto& [m, c] : ab.terms()) {
    const int i = ma.index_of(m);
    if (i < 0) return INFINITY;
    direct(i) = c;
  }
  return (via_matrices - direct).cwiseAbs().maxCoeff();
}

TorusForm flat_integer_connection(const DeformationPtr& xi, const std::vector<int>& m) {
  TorusForm mu(xi);
  for (int j = 1; j <= xi->dim(); ++j)
    if (m[j - 1] != 0) mu += TorusForm::one_form(TorusElement::scalar(xi, 2.0 * kPi * m[j - 1]), j);
  return mu;
}

double negation_asymmetry(const std::vector<cplx>& ev) {
  std::vector<cplx> pos = ev, neg;
  for (cplx z : ev) neg.push_back(-z);
  auto less = [](cplx x, cplx y) {
    if (std::abs(x.real() - y.real()) > 1e-7) return x.real() < y.real();
    return x.imag() < y.imag() - 1e-7;
  };
  std::sort(pos.begin(), pos.end(), less);
  std::sort(neg.begin(), neg.end(), less);
  double d = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) d = std::max(d, std::abs(pos[i] - neg[i]));
  return d;
}

SuiteResult verify_algebra(const VerifyConfig& cfg) {
  SuiteResult s{"algebra", {}};
  const DeformationPtr& xi = cfg.xi;
  const int n = xi->dim();
  Rng rng = suite_rng(cfg, 1);
  const double tol = tol_for(cfg, 1e-12);
  const int radius = n <= 2 ? 2 : 1;

  CheckAccumulator rel("generator_relations", tol);
  rel.record(commutation_defect(xi), [] { return std::string("u_k u_j != e^{2 pi i Xi_kj} u_j u_k"); });
  s.checks.push_back(rel.result());

  CheckAccumulator oracle("matrix_oracle_products", tol);
  CheckAccumulator assoc("associativity", tol);
  CheckAccumulator inv("star_involution", tol);
  CheckAccumulator anti("star_antimultiplicative", tol);
  CheckAccumulator trace("trace_property", tol);
  const int pairs = std::max(cfg.samples, 100);
  for (int i = 0; i < pairs; ++i) {
    const TorusElement a = random_element(xi, radius, 3, rng);
    const TorusElement b = random_element(xi, radius, 3, rng);
    oracle.record(oracle_product_defect(a, b), [&] { return case_label("random pair", i); });
    if (i < cfg.samples) {
      const TorusElement c = random_element(xi, 1, 2, rng);
      assoc.record(distance(multiply(multiply(a, b), c), multiply(a, multiply(b, c))),
                   [&] { return case_label("random triple", i); });
      inv.record(distance(star(star(a)), a), [&] { return case_label("random element", i); });
      anti.record(distance(star(multiply(a, b)), multiply(star(b), star(a))),
                  [&] { return case_label("random pair", i); });
      trace.record(std::abs(trace_tau0(multiply(a, b)) - trace_tau0(multiply(b, a))),
                   [&] { return case_label("random pair", i); });
    }
  }
  for (const auto& acc : {oracle, assoc, inv, anti, trace}) s.checks.push_back(acc.result());
  return s;
}

SuiteResult verify_calculus(const VerifyConfig& cfg) {
  SuiteResult s{"calculus", {}};
  const DeformationPtr& xi = cfg.xi;
  const int n = xi->dim();
  Rng rng = suite_rng(cfg, 2);
  const double tol = tol_for(cfg, 1e-12);
  // derivatives scale coefficients by 2 pi |m|; compare relative to the input size
  auto rel = [](double d, double scale) { return d / std::max(1.0, scale); };

  CheckAccumulator dd("d_squared", tol), leib("graded_leibniz", tol), dstar("d_star_degree0", tol),
      stokes("stokes", tol), hh("hodge_squared", tol), adj("codifferential_adjoint", tol);
  for (int i = 0; i < cfg.samples; ++i) {
    const TorusForm a = random_mixed_form(xi, 2, 4, rng);
    dd.record(rel(differential(differential(a)).max_abs(), a.max_abs()),
              [&] { return case_label("random mixed form", i); });

    const int p = uniform_int(rng, 0, n);
    const TorusForm x = random_form(xi, p, 2, 3, rng);
    const TorusForm y = random_mixed_form(xi, 2, 3, rng);
    const TorusForm lhs = differential(wedge(x, y));
    const TorusForm rhs = wedge(differential(x), y) + double(sign_of(p)) * wedge(x, differential(y));
    leib.record(rel(distance(lhs, rhs), x.max_abs() * y.max_abs() * 4 * kPi),
                [&] { return case_label("random pair", i); });

    const TorusForm f = TorusForm::from_element(random_element(xi, 2, 4, rng));
    dstar.record(rel(distance(differential(form_star(f)), -form_star(differential(f))), f.max_abs()),
                 [&] { return case_label("random element", i); });

    const TorusForm top = random_form(xi, n - 1, 2, 4, rng);
    stokes.record(std::abs(integrate(differential(top))), [&] { return case_label("random (n-1)-form", i); });

    const int k = uniform_int(rng, 0, n);
    const TorusForm h = random_form(xi, k, 2, 3, rng);
    hh.record(distance(hodge(hodge(h)), double(sign_of(k * (n - k))) * h),
              [&] { return case_label("random form", i); });

    if (n >= 1) {
      const int q = uniform_int(rng, 0, n - 1);
      const TorusForm al = random_form(xi, q, 2, 3, rng);
      const TorusForm be = random_form(xi, q + 1, 2, 3, rng);
      const cplx l = inner_product(differential(al), be), r = inner_product(al, codifferential(be));
      adj.record(std::abs(l - r) / std::max(1.0, std::abs(l)), [&] { return case_label("random pair", i); });
    }
  }
  for (const auto& acc : {dd, leib, dstar, stokes, hh, adj}) s.checks.push_back(acc.result());
  return s;
}

SuiteResult verify_u1(const VerifyConfig& cfg) {
  SuiteResult s{"u1", {}};
  Rng rng = suite_rng(cfg, 3);
  const double tol = tol_for(cfg, 1e-12);
  CheckAccumulator counit_ax("hopf_counit", tol), antipode_ax("hopf_antipode", tol), germs("germs_map_rule", tol),
      env_dd("envelope_d_squared", tol), env_leib("envelope_leibniz", tol), env_star("envelope_d_star", tol);
  for (int i = 0; i < cfg.samples; ++i) {
    const LaurentElement g = random_laurent(3, 3, rng), h = random_laurent(3, 3, rng);
    const LaurentTensor cg = hopf_coproduct(g);
    counit_ax.record(distance(counit_left(cg), g), [&] { return case_label("random Laurent polynomial", i); });
    antipode_ax.record(distance(antipode_left_multiply(cg), LaurentElement::monomial(0, counit(g))),
                       [&] { return case_label("random Laurent polynomial", i); });
    for (CalculusKind kind : {CalculusKind::Classical, CalculusKind::NonStandard}) {
      const cplx lhs = germs_map(kind, g * h);
      const cplx rhs = counit(g) * germs_map(kind, h) + germs_map(kind, g) * germ_module_action(kind, h);
      germs.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)),
                   [&] { return case_label(to_string(kind), i); });

      const EnvelopeElement x = random_envelope(kind, 2, 1, 3, rng);
      const EnvelopeElement y = random_envelope(kind, 2, 1, 3, rng);
      env_dd.record(distance(envelope_differential(envelope_differential(x)), EnvelopeElement(kind)),
                    [&] { return case_label(to_string(kind), i); });
      for (int k = 0; k <= 1; ++k) {
        const EnvelopeElement xk = x.degree_part(k);
        const EnvelopeElement lhs2 = envelope_differential(xk * y);
        const EnvelopeElement rhs2 = envelope_differential(xk) * y + double(sign_of(k)) * (xk * envelope_differential(y));
        env_leib.record(distance(lhs2, rhs2), [&] { return case_label(to_string(kind), i); });
      }
      env_star.record(distance(envelope_differential(envelope_star(x)), -1.0 * envelope_star(envelope_differential(x))),
                      [&] { return case_label(to_string(kind), i); });
    }
  }
  for (const auto& acc : {counit_ax, antipode_ax, germs, env_dd, env_leib, env_star}) s.checks.push_back(acc.result());
  return s;
}

SuiteResult verify_bundle(const VerifyConfig& cfg) {
  SuiteResult s{"bundle", {}};
  const DeformationPtr& xi = cfg.xi;
  Rng rng = suite_rng(cfg, 4);
  const BundleModel ma = BundleModel::model_a(xi, cfg.fiber_row);
  const BundleModel mb = BundleModel::model_b(xi);

  CheckAccumulator canon("canonical_curvature_zero", tol_for(cfg, 0.0));
  CheckAccumulator regular("canonical_regular", 0.5);
  for (const BundleModel* m : {&ma, &mb}) {
    const ConnectionSpec c = canonical_connection(*m);
    canon.record(curvature(c).max_abs(), [&] { return std::string("model ") + to_string(m->tag); });
    const CheckReport r = check_regular(c, 20, cfg.seed);
    regular.record(r.passed ? 0.0 : 1.0, [&] { return std::string("model ") + to_string(m->tag) + ": " + r.witness; });
  }
  s.checks.push_back(canon.result());
  s.checks.push_back(regular.result());

  CheckAccumulator coaction("connection_coaction", tol_for(cfg, 1e-12)), curv("curvature_total_vs_closed_form", tol_for(cfg, 1e-10)),
      herm("curvature_antihermitian", tol_for(cfg, 1e-10)), bianchi("bianchi_identity", tol_for(cfg, 1e-9)),
      bianchi_a("bianchi_model_A_zero", tol_for(cfg, 1e-9)), metric("metric_compatibility", tol_for(cfg, 1e-10));
  for (int i = 0; i < cfg.samples; ++i) {
    const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
    for (const BundleModel* m : {&ma, &mb}) {
      const ConnectionSpec w{*m, mu};
      const std::string label = std::string("model ") + to_string(m->tag) + ", random Hermitian mu #" + std::to_string(i);
      if (i < 10) coaction.record(connection_coaction_defect(w), [&] { return label; });
      const TorusForm r = curvature(w);
      curv.record(distance(r, curvature_closed_form(w)) / std::max(1.0, r.max_abs()), [&] { return label; });
      herm.record(distance(form_star(r), -r) / std::max(1.0, r.max_abs()), [&] { return label; });
      if (i < 20) {
        const TorusForm lhs = twisted_covariant_derivative(w, r);
        const TorusForm rhs = bianchi_rhs(w);
        const double scale = std::max(1.0, lhs.max_abs());
        if (m->tag == ModelTag::B)
          bianchi.record(distance(lhs, rhs) / scale, [&] { return label; });
        else
          bianchi_a.record(std::max(lhs.max_abs(), rhs.max_abs()) / scale, [&] { return label; });
      }
    }
    if (i < 20) {
      const ConnectionSpec w{mb, mu};
      const TorusElement b1 = random_element(xi, 2, 3, rng), b2 = random_element(xi, 2, 3, rng);
      const TorusForm lhs = left_multiply(hermitian_structure(b1, TorusElement::scalar(xi, 1.0)), gauge_qlc_apply(w, b2)) -
                            right_multiply(form_star(gauge_qlc_apply(w, b1)), b2);
      const TorusForm rhs = differential(TorusForm::from_element(hermitian_structure(b1, b2)));
      metric.record(distance(lhs, rhs) / std::max(1.0, rhs.max_abs()), [&] { return case_label("random section pair", i); });
    }
  }
  for (const auto& acc : {coaction, curv, herm, bianchi, bianchi_a, metric}) s.checks.push_back(acc.result());
  return s;
}

SuiteResult verify_yang_mills(const VerifyConfig& cfg) {
  SuiteResult s{"yang_mills", {}};
  const DeformationPtr& xi = cfg.xi;
  const int n = xi->dim();
  Rng rng = suite_rng(cfg, 5);
  const BundleModel ma = BundleModel::model_a(xi, cfg.fiber_row);
  const BundleModel mb = BundleModel::model_b(xi);
  const double tol = tol_for(cfg, 1e-9);

  CheckAccumulator flat("flat_connections_solve", tol), pipeline("pipeline_vs_closed_form", tol),
      agree("analytic_vs_geometric_B", tol), gauge("gauge_invariance", tol_for(cfg, 1e-10)),
      curv_fixed("gauge_curvature_unchanged", tol_for(cfg, 1e-10));
  for (int i = 0; i < cfg.samples; ++i) {
    std::vector<int> m(n);
    for (int& x : m) x = uniform_int(rng, -3, 3);
    const TorusForm muf = flat_integer_connection(xi, m);
    const std::string flabel = case_label("flat integer connection", i);
    try {
      flat.record(analytic_residual(mb, muf).norm, [&] { return flabel + ", analytic"; });
      flat.record(geometric_residual({mb, muf}).norm, [&] { return flabel + ", geometric B"; });
      flat.record(geometric_residual({ma, muf}).norm, [&] { return flabel + ", geometric A"; });
    } catch (const ConsistencyError& e) {
      flat.fail(flabel + ": " + e.what());
    }

    const TorusForm mu = random_hermitian_one_form(xi, 1, 3, rng);
    const std::string label = case_label("random Hermitian mu", i);
    for (const BundleModel* bm : {&ma, &mb}) {
      try {
        const ResidualReport r = geometric_residual({*bm, mu}, 1e-9, INFINITY);
        pipeline.record(r.consistency_gap / std::max(1.0, r.residual.max_abs()),
                        [&] { return label + ", model " + to_string(bm->tag); });
      } catch (const std::exception& e) {
        pipeline.fail(label + ": " + e.what());
      }
    }
    const ResidualReport an = analytic_residual(mb, mu, 1e-9, INFINITY);
    const ResidualReport gb = geometric_residual({mb, mu}, 1e-9, INFINITY);
    agree.record(distance(an.residual, -hodge(gb.residual)) / std::max(1.0, an.residual.max_abs()),
                 [&] { return label; });

    if (i < 20) {
      for (const BundleModel* bm : {&ma, &mb}) {
        const TorusForm shift =
            bm->tag == ModelTag::A ? random_flat_shift(xi, 2, 3, rng) : random_constant_one_form(xi, rng);
        const ConnectionSpec w{*bm, mu};
        const ShiftResult sh = gauge_shift(w, shift, 1e-10);
        const double y0 = ym_functional(w), y1 = ym_functional(sh.omega);
        const std::string glabel = label + ", model " + to_string(bm->tag);
        if (!sh.ym_invariant) gauge.fail(glabel + ": shift not recognised as a gauge shift");
        gauge.record(std::abs(y0 - y1) / std::max(1.0, y0), [&] { return glabel; });
        const TorusForm r0 = curvature(w);
        curv_fixed.record(distance(r0, curvature(sh.omega)) / std::max(1.0, r0.max_abs()), [&] { return glabel; });
      }
    }
  }
  for (const auto& acc : {flat, pipeline, agree, gauge, curv_fixed}) s.checks.push_back(acc.result());

  // harmonic one-forms are exactly the constant span{dU_j}
  const int max_exp = n >= 4 ? 1 : cfg.max_exp;
  const FlatKernelReport k = flat_kernel_solver(ma, max_exp);
  CheckAccumulator harm("harmonic_kernel", 0.5);
  harm.record(std::abs(k.harmonic.dimension - n), [&] {
    return "harmonic kernel has dimension " + std::to_string(k.harmonic.dimension) + ", expected " + std::to_string(n);
  });
  for (int j = 1; j <= n; ++j) {
    const TorusForm du = TorusForm::one_form(TorusElement::scalar(xi, 1.0), j);
    harm.record(in_span(k.harmonic.basis, du, max_exp) ? 0.0 : 1.0,
                [&] { return "dU_" + std::to_string(j) + " outside the harmonic kernel"; });
  }
  s.checks.push_back(harm.result());
  return s;
}

SuiteResult verify_dirac(const VerifyConfig& cfg) {
  SuiteResult s{"dirac", {}};
  const DeformationPtr& xi = cfg.xi;
  const int n = xi->dim();
  Rng rng = suite_rng(cfg, 6);
  if (n < 2) {
    CheckAccumulator skip("gamma_anticommutation", 0.0);
    skip.fail("Dirac operator needs n >= 2");
    s.checks.push_back(skip.result());
    return s;
  }
  const GammaRep rep = gamma_matrices(n);
  const double tol = tol_for(cfg, 1e-10);

  CheckAccumulator anti("gamma_anticommutation", tol_for(cfg, 1e-14)), herm("gamma_hermitian", tol_for(cfg, 1e-14));
  anti.record(anticommutation_defect(rep), [] { return std::string("constructed gamma matrices"); });
  for (int j = 0; j < n; ++j)
    herm.record((rep.gamma[j] - rep.gamma[j].adjoint()).cwiseAbs().maxCoeff(),
                [&] { return "gamma^" + std::to_string(j + 1); });
  s.checks.push_back(anti.result());
  s.checks.push_back(herm.result());

  CheckAccumulator dsq("dirac_squared", tol);
  for (int i = 0; i < cfg.samples; ++i) {
    Exponent m(n);
    double m2 = 0.0;
    for (int& x : m) x = uniform_int(rng, -3, 3), m2 += x * x;
    Eigen::VectorXcd v(rep.spin_dim);
    for (int a = 0; a < rep.spin_dim; ++a) v(a) = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Spinor psi = Spinor::monomial(xi, m, v);
    const Spinor lhs = dirac_apply(rep, dirac_apply(rep, psi));
    const double scale = std::max(1.0, 4 * kPi * kPi * m2);
    dsq.record(distance(lhs, cplx(-4 * kPi * kPi * m2) * psi) / scale, [&] { return case_label("monomial spinor", i); });
  }
  s.checks.push_back(dsq.result());

  const ConnectionSpec wc = canonical_connection(BundleModel::model_a(xi, cfg.fiber_row));
  CheckAccumulator annih("canonical_annihilates_constants", tol);
  for (int a = 0; a < rep.spin_dim; ++a) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.spin_dim);
    v(a) = 1.0;
    GaugeSpinor g;
    g.pairs.emplace_back(TorusElement::scalar(xi, 1.0), Spinor::monomial(xi, Exponent(n, 0), v));
    const GaugeSpinor out = gauge_dirac_apply(wc, rep, g);
    annih.record(out.pairs.front().second.max_abs(), [&] { return "constant spinor e_" + std::to_string(a); });
    annih.record(dirac_residual(rep, g).max_abs(), [&] { return "residual on constant spinor e_" + std::to_string(a); });
  }
  s.checks.push_back(annih.result());

  CheckAccumulator sym("spectrum_negation_symmetry", 1e-8), sig("signature_stable", 0.5);
  std::optional<int> first_sig;
  for (int c = 1; c <= cfg.max_cutoff; ++c) {
    if (std::pow(2 * c + 1, n) * rep.spin_dim > 1500) break;
    const SpectrumReport sp = dirac_spectrum(wc, rep, c, cfg.seed);
    sym.record(negation_asymmetry(sp.eigenvalues), [&] { return "cutoff " + std::to_string(c); });
    if (!first_sig) first_sig = sp.signature;
    sig.record(sp.signature == *first_sig && sp.signature != 0 ? 0.0 : 1.0, [&] {
      return "cutoff " + std::to_string(c) + " has signature " + std::to_string(sp.signature) + ", cutoff 1 has " +
             std::to_string(*first_sig);
    });
  }
  s.checks.push_back(sym.result());
  s.checks.push_back(sig.result());
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "calculus", "u1", "bundle", "yang_mills", "dirac"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "algebra") return verify_algebra(cfg);
  if (name == "calculus") return verify_calculus(cfg);
  if (name == "u1") return verify_u1(cfg);
  if (name == "bundle") return verify_bundle(cfg);
  if (name == "yang_mills") return verify_yang_mills(cfg);
  if (name == "dirac") return verify_dirac(cfg);
  throw ContractError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> verify_all(const VerifyConfig& cfg) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, cfg));
  return out;
}

json suite_to_json(const SuiteResult& s) {
  json checks = json::array();
  for (const auto& c : s.checks) {
    json j = {{"name", c.name},
              {"passed", c.passed},
              {"max_defect", c.max_defect},
              {"tolerance", c.tolerance},
              {"cases", c.cases}};
    if (!c.passed) j["witness"] = c.witness;
    checks.push_back(j);
  }
  return {{"name", s.name}, {"passed", s.passed()}, {"checks", checks}};
}

json verify_report(const VerifyConfig& cfg, const std::vector<SuiteResult>& suites) {
  json js = json::array();
  json first_failure;
  for (const auto& s : suites) {
    js.push_back(suite_to_json(s));
    if (first_failure.is_null())
      for (const auto& c : s.checks)
        if (!c.passed) {
          first_failure = {{"suite", s.name}, {"check", c.name}, {"witness", c.witness}};
          break;
        }
  }
  json out = {{"n", cfg.xi->dim()},
              {"xi", xi_to_json(*cfg.xi)},
              {"seed", cfg.seed},
              {"samples", cfg.samples},
              {"suites", js},
              {"passed", first_failure.is_null()}};
  if (!first_failure.is_null()) out["first_failure"] = first_failure;
  return out;
}

}  // namespace nct
