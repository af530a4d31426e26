// nctorus: curvature, Yang-Mills residuals, Dirac spectra and the verification suites
// for quantum principal U(1)-bundles over noncommutative tori.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "nctorus/io.hpp"
#include "nctorus/verify.hpp"

namespace fs = std::filesystem;
using namespace nct;

namespace {

enum Exit { kOk = 0, kFailed = 1, kValidation = 2, kConsistency = 3 };

struct Flags {
  std::string config;
  std::string mu;
  std::string model;
  std::string out;
  std::string format = "json";
  std::optional<int> n;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

struct RunConfig {
  int n = 2;
  DeformationPtr xi;
  std::vector<double> fiber_row;
  std::string model = "B";
  std::optional<std::string> calculus;
  json mu;  // form document or component list; null for the canonical connection
  int cutoff = 1;
  int max_exp = 2;
  int samples = 50;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
};

DeformationPtr default_deformation(int n) {
  std::vector<double> e(n * n, 0.0);
  if (n >= 2) e[1] = 0.25, e[n] = -0.25;
  return Deformation::make(n, e);
}

RunConfig load_config(const Flags& f) {
  json j = json::object();
  fs::path base_dir = fs::current_path();
  if (!f.config.empty()) {
    j = read_json_file(f.config);
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    base_dir = fs::path(f.config).parent_path();
  }
  RunConfig c;
  try {
    c.n = f.n.value_or(j.value("n", 2));
    if (c.n < 1) throw ParseError("n must be positive");
    c.xi = j.contains("xi") && !f.n ? xi_from_json(j.at("xi"), c.n) : default_deformation(c.n);
    if (f.n && j.contains("n") && j.at("n") != c.n) throw ParseError("--n conflicts with the config dimension");
    if (j.contains("xi_fiber_row")) c.fiber_row = j.at("xi_fiber_row").get<std::vector<double>>();
    c.model = !f.model.empty() ? f.model : j.value("model", std::string("B"));
    if (j.contains("calculus")) c.calculus = j.at("calculus").get<std::string>();
    c.cutoff = f.cutoff.value_or(j.value("cutoff", 1));
    c.max_exp = j.value("max_exp", 2);
    c.samples = j.value("samples", 50);
    c.tolerance = f.tolerance.value_or(j.value("tolerance", 1e-9));
    c.seed = f.seed.value_or(j.value("seed", std::uint64_t{0}));
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (c.model != "A" && c.model != "B") throw ParseError("model must be A or B");
  if (c.calculus) {
    if (*c.calculus != "Classical" && *c.calculus != "NonStandard")
      throw ParseError("calculus must be Classical or NonStandard");
    validate_pairing(c.model == "A" ? ModelTag::A : ModelTag::B,
                     *c.calculus == "Classical" ? CalculusKind::Classical : CalculusKind::NonStandard);
  }
  if (c.cutoff < 1) throw ParseError("cutoff must be at least 1");
  if (c.samples < 1 || c.max_exp < 1) throw ParseError("samples and max_exp must be positive");
  if (!(c.tolerance > 0)) throw ParseError("tolerance must be positive");

  // mu: --mu path, else config "mu" (path relative to the config, or inline)
  if (!f.mu.empty()) {
    c.mu = read_json_file(f.mu);
  } else if (j.contains("mu")) {
    const json& m = j.at("mu");
    c.mu = m.is_string() ? read_json_file((base_dir / m.get<std::string>()).string()) : m;
  }
  return c;
}

ConnectionSpec connection_of(const RunConfig& c) {
  json doc = {{"model", c.model}, {"n", c.n}, {"xi", xi_to_json(*c.xi)}};
  if (c.model == "A") doc["xi_fiber_row"] = c.fiber_row.empty() ? std::vector<double>(c.n, 0.0) : c.fiber_row;
  if (!c.mu.is_null()) doc["mu"] = c.mu;
  return connection_from_json(doc);
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw ParseError("cannot write " + f.out);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_curvature(const Flags& f) {
  const RunConfig c = load_config(f);
  const ConnectionSpec omega = connection_of(c);
  const TorusForm r = curvature(omega);
  const double gap = distance(r, curvature_closed_form(omega));
  if (gap > 1e-9 * std::max(1.0, r.max_abs()))
    throw ConsistencyError("curvature: total-space evaluation and closed form differ");
  emit(f, dump({{"command", "curvature"},
                {"connection", connection_to_json(omega)},
                {"curvature", form_to_json(r)},
                {"norm", form_norm(r)},
                {"is_flat", r.max_abs() <= c.tolerance},
                {"consistency_gap", gap}}));
  return kOk;
}

int cmd_ym(const Flags& f, const std::string& kind) {
  const RunConfig c = load_config(f);
  const ConnectionSpec omega = connection_of(c);
  const ResidualReport r = kind == "analytic" ? analytic_residual(omega.model, omega.mu, c.tolerance)
                                              : geometric_residual(omega, c.tolerance);
  json j = report_to_json(r);
  j["command"] = "ym";
  j["model"] = c.model;
  j["ym_functional"] = ym_functional(omega);
  emit(f, dump(j));
  return kOk;
}

int cmd_verify(const Flags& f, const std::vector<std::string>& suites) {
  const RunConfig c = load_config(f);
  VerifyConfig v;
  v.xi = c.xi;
  v.fiber_row = c.fiber_row;
  v.seed = c.seed;
  v.samples = c.samples;
  v.max_exp = c.max_exp;
  v.max_cutoff = std::max(3, c.cutoff);
  if (f.tolerance) v.tolerance = *f.tolerance;
  std::vector<SuiteResult> res;
  for (const auto& s : suites.empty() ? suite_names() : suites) res.push_back(run_suite(s, v));
  const json report = verify_report(v, res);
  emit(f, dump(report));
  if (!report.at("passed").get<bool>()) {
    const json& ff = report.at("first_failure");
    std::cerr << "verify: " << ff.at("suite").get<std::string>() << "/" << ff.at("check").get<std::string>()
              << " failed: " << ff.at("witness").get<std::string>() << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_dirac(const Flags& f, const std::string& sub, const std::string& spinor_path) {
  const RunConfig c = load_config(f);
  if (c.model != "A") throw ContractError("the gauge Dirac operator is built on model A");
  const ConnectionSpec omega = connection_of(c);
  const GammaRep rep = gamma_matrices(c.n);  // checks anticommutation before use
  if (sub == "spectrum") {
    const SpectrumReport sp = dirac_spectrum(omega, rep, c.cutoff, c.seed);
    const auto lines = group_spectrum(sp.eigenvalues);
    if (f.format == "csv") {
      std::ostringstream os;
      os << "re,im,multiplicity\n" << std::setprecision(12);
      for (const auto& l : lines) os << l.re << "," << l.im << "," << l.multiplicity << "\n";
      emit(f, os.str());
    } else {
      json ls = json::array();
      for (const auto& l : lines) ls.push_back({{"re", l.re}, {"im", l.im}, {"multiplicity", l.multiplicity}});
      emit(f, dump({{"command", "dirac_spectrum"},
                    {"cutoff", c.cutoff},
                    {"spin_dim", rep.spin_dim},
                    {"eigenvalues", ls},
                    {"kernel_dimension", sp.kernel_dimension},
                    {"signature", sp.signature},
                    {"adjointness_defect", sp.adjointness_defect}}));
    }
    return kOk;
  }
  Spinor psi(c.xi, rep.spin_dim);
  if (!spinor_path.empty()) {
    psi = spinor_from_json(read_json_file(spinor_path), c.xi);
  } else {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.spin_dim);
    v(0) = 1.0;
    psi = Spinor::monomial(c.xi, Exponent(c.n, 0), v);
  }
  GaugeSpinor g;
  g.pairs.emplace_back(TorusElement::scalar(c.xi, 1.0), psi);
  const Spinor res = dirac_residual(rep, g);
  const GaugeSpinor out = gauge_dirac_apply(omega, rep, g);
  emit(f, dump({{"command", "dirac_residual"},
                {"residual", spinor_to_json(res)},
                {"norm", res.max_abs()},
                {"is_zero", res.max_abs() <= c.tolerance},
                {"gauge_dirac", spinor_to_json(out.pairs.front().second)}}));
  return kOk;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--mu", f.mu, "JSON file with the connection displacement mu")->check(CLI::ExistingFile);
  cmd->add_option("--model", f.model, "bundle model")->check(CLI::IsMember({"A", "B"}));
  cmd->add_option("--n", f.n, "torus dimension");
  cmd->add_option("--cutoff", f.cutoff, "truncation |m|_inf <= cutoff");
  cmd->add_option("--seed", f.seed, "64-bit seed");
  cmd->add_option("--tolerance", f.tolerance, "solution / check tolerance");
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge theory on quantum principal U(1)-bundles over noncommutative tori"};
  app.require_subcommand(1);
  Flags f;

  auto* curv = app.add_subcommand("curvature", "curvature of a connection");
  add_common(curv, f);

  std::string kind = "geometric";
  auto* ym = app.add_subcommand("ym", "Yang-Mills residual and functional");
  add_common(ym, f);
  ym->add_option("--kind", kind, "residual kind")->check(CLI::IsMember({"analytic", "geometric"}));

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, f);
  verify->add_option("--suite", suites, "restrict to these suites")->check(CLI::IsMember(suite_names()));

  std::string sub, spinor_path;
  auto* dirac = app.add_subcommand("dirac", "gauge Dirac operator");
  add_common(dirac, f);
  dirac->add_option("action", sub, "spectrum or residual")->required()->check(CLI::IsMember({"spectrum", "residual"}));
  dirac->add_option("--spinor", spinor_path, "JSON spinor for the residual")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*curv) return cmd_curvature(f);
    if (*ym) return cmd_ym(f, kind);
    if (*verify) return cmd_verify(f, suites);
    if (*dirac) return cmd_dirac(f, sub, spinor_path);
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::invalid_argument& e) {  // ParseError, ContractError, StructuralError
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kConsistency;
  }
  return kOk;
}
