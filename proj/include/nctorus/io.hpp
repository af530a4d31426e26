#pragma once

#include <string>

#include <json.hpp>

#include "nctorus/bundle.hpp"
#include "nctorus/dirac.hpp"
#include "nctorus/yang_mills.hpp"

namespace nct {

using json = nlohmann::json;

// Malformed input files; the CLI maps these to the validation exit code.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json xi_to_json(const Deformation& xi);
DeformationPtr xi_from_json(const json& j, int n);

json element_terms_to_json(const TorusElement& x);
TorusElement element_terms_from_json(const json& terms, const DeformationPtr& xi);

json element_to_json(const TorusElement& x);
TorusElement element_from_json(const json& j);

json form_components_to_json(const TorusForm& f);
json form_to_json(const TorusForm& f);
// Accepts a full form document or, when `xi` is given, a bare component list.
TorusForm form_from_json(const json& j);
TorusForm form_components_from_json(const json& comps, const DeformationPtr& xi);

json connection_to_json(const ConnectionSpec& omega);
ConnectionSpec connection_from_json(const json& j);

json spinor_to_json(const Spinor& s);
Spinor spinor_from_json(const json& j, const DeformationPtr& xi);

json report_to_json(const ResidualReport& r);

json read_json_file(const std::string& path);

}  // namespace nct
