#include "nctorus/io.hpp"

#include <algorithm>
#include <fstream>

namespace nct {

namespace {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json xi_to_json(const Deformation& xi) {
  json rows = json::array();
  for (int k = 1; k <= xi.dim(); ++k) {
    json row = json::array();
    for (int j = 1; j <= xi.dim(); ++j) row.push_back(xi(k, j));
    rows.push_back(row);
  }
  return rows;
}

DeformationPtr xi_from_json(const json& j, int n) {
  if (n < 1) throw ParseError("n must be positive");
  if (j.is_null()) return Deformation::zero(n);
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("xi must be an n x n array");
  std::vector<double> e;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("xi must be an n x n array");
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("xi entries must be numbers");
      e.push_back(v.get<double>());
    }
  }
  return Deformation::make(n, std::move(e));  // ContractError when not antisymmetric
}

json element_terms_to_json(const TorusElement& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms()) terms.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return terms;
}

TorusElement element_terms_from_json(const json& terms, const DeformationPtr& xi) {
  const json& list = terms.is_object() && terms.contains("terms") ? terms.at("terms") : terms;
  if (!list.is_array()) throw ParseError("element terms must be an array");
  TorusElement x(xi);
  for (const auto& t : list) {
    const auto m = get_field<std::vector<int>>(t, "m");
    if (static_cast<int>(m.size()) != xi->dim()) throw ParseError("exponent length does not match n");
    const double re = t.value("re", 0.0), im = t.value("im", 0.0);
    x.add_term(m, {re, im});
  }
  return x.normalize();
}

json element_to_json(const TorusElement& x) {
  return {{"n", x.dim()}, {"xi", xi_to_json(*x.deformation())}, {"terms", element_terms_to_json(x)}};
}

TorusElement element_from_json(const json& j) {
  const int n = get_field<int>(j, "n");
  const DeformationPtr xi = xi_from_json(j.value("xi", json()), n);
  return element_terms_from_json(j.value("terms", json::array()), xi);
}

json form_components_to_json(const TorusForm& f) {
  std::vector<std::pair<std::vector<int>, const TorusElement*>> items;
  for (const auto& [s, x] : f.components()) items.emplace_back(mask_to_axes(s), &x);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json comps = json::array();
  for (const auto& [axes, x] : items) comps.push_back({{"axes", axes}, {"element", element_terms_to_json(*x)}});
  return comps;
}

json form_to_json(const TorusForm& f) {
  return {{"n", f.dim()}, {"xi", xi_to_json(*f.deformation())}, {"components", form_components_to_json(f)}};
}

TorusForm form_components_from_json(const json& comps, const DeformationPtr& xi) {
  if (!comps.is_array()) throw ParseError("form components must be an array");
  TorusForm f(xi);
  for (const auto& c : comps) {
    const auto axes = get_field<std::vector<int>>(c, "axes");
    if (!c.contains("element")) throw ParseError("form component without element");
    Mask s;
    try {
      s = axes_to_mask(axes, xi->dim());
    } catch (const ContractError& e) {
      throw ParseError(e.what());
    }
    f.add_component(s, element_terms_from_json(c.at("element"), xi));
  }
  return f;
}

TorusForm form_from_json(const json& j) {
  const int n = get_field<int>(j, "n");
  const DeformationPtr xi = xi_from_json(j.value("xi", json()), n);
  return form_components_from_json(j.value("components", json::array()), xi);
}

json connection_to_json(const ConnectionSpec& omega) {
  const BundleModel& m = omega.model;
  json j = {{"model", to_string(m.tag)},
            {"n", m.n},
            {"xi", xi_to_json(*m.base)},
            {"mu", form_to_json(omega.mu.is_zero() ? TorusForm(m.base) : omega.mu)}};
  if (m.tag == ModelTag::A) j["xi_fiber_row"] = m.fiber_row;
  return j;
}

ConnectionSpec connection_from_json(const json& j) {
  const auto model = get_field<std::string>(j, "model");
  if (model != "A" && model != "B") throw ParseError("model must be \"A\" or \"B\"");
  const int n = get_field<int>(j, "n");
  const DeformationPtr xi = xi_from_json(j.value("xi", json()), n);
  BundleModel bm;
  if (model == "A") {
    std::vector<double> row;
    if (j.contains("xi_fiber_row")) row = get_field<std::vector<double>>(j, "xi_fiber_row");
    if (!row.empty() && static_cast<int>(row.size()) != n) throw ParseError("xi_fiber_row must have n entries");
    bm = BundleModel::model_a(xi, row);
  } else {
    if (j.contains("xi_fiber_row")) throw ParseError("xi_fiber_row is only meaningful for model A");
    bm = BundleModel::model_b(xi);
  }
  TorusForm mu(xi);
  if (j.contains("mu")) {
    const json& m = j.at("mu");
    if (m.is_array()) {
      mu = form_components_from_json(m, xi);
    } else {
      if (m.contains("n") && m.at("n") != n) throw ParseError("mu dimension does not match n");
      if (m.contains("xi") && !same_deformation(xi_from_json(m.at("xi"), n), xi))
        throw ParseError("mu deformation does not match xi");
      mu = form_components_from_json(m.value("components", json::array()), xi);
    }
  }
  ConnectionSpec omega{bm, mu};
  validate_connection(omega);
  return omega;
}

json spinor_to_json(const Spinor& s) {
  json terms = json::array();
  for (const auto& [m, v] : s.terms()) {
    json vec = json::array();
    for (int i = 0; i < v.size(); ++i) vec.push_back({v(i).real(), v(i).imag()});
    terms.push_back({{"m", m}, {"vec", vec}});
  }
  return {{"n", s.dim()}, {"spin_dim", s.spin_dim()}, {"terms", terms}};
}

Spinor spinor_from_json(const json& j, const DeformationPtr& xi) {
  const int n = get_field<int>(j, "n");
  if (n != xi->dim()) throw ParseError("spinor dimension does not match n");
  const int sd = get_field<int>(j, "spin_dim");
  if (sd != (1 << (n / 2))) throw ParseError("spin_dim must be 2^floor(n/2)");
  Spinor s(xi, sd);
  for (const auto& t : j.value("terms", json::array())) {
    const auto m = get_field<std::vector<int>>(t, "m");
    const auto vec = get_field<std::vector<std::vector<double>>>(t, "vec");
    if (static_cast<int>(m.size()) != n || static_cast<int>(vec.size()) != sd)
      throw ParseError("spinor term has the wrong shape");
    Eigen::VectorXcd v(sd);
    for (int i = 0; i < sd; ++i) {
      if (vec[i].size() != 2) throw ParseError("spinor entries are [re, im] pairs");
      v(i) = {vec[i][0], vec[i][1]};
    }
    s.add(m, v);
  }
  return s.normalize();
}

json report_to_json(const ResidualReport& r) {
  return {{"kind", to_string(r.kind)},
          {"norm", r.norm},
          {"is_solution", r.is_solution},
          {"residual", form_to_json(r.residual)},
          {"consistency_gap", r.consistency_gap}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace nct
