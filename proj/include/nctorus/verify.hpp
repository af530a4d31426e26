#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nctorus/io.hpp"

namespace nct {

struct CheckResult {
  std::string name;
  bool passed = true;
  double max_defect = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string witness;  // first failing case, empty when passed
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct VerifyConfig {
  DeformationPtr xi;
  std::vector<double> fiber_row;  // Model A extension, zero when empty
  std::uint64_t seed = 0;
  int samples = 50;
  int max_exp = 2;
  int max_cutoff = 3;
  // Overrides every per-check tolerance when set.
  std::optional<double> tolerance;
};

// Accumulates a defect over cases; the first case above tolerance becomes the witness.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tol) { r_.name = std::move(name), r_.tolerance = tol; }
  void record(double defect, const std::function<std::string()>& describe);
  void fail(const std::string& witness);
  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

SuiteResult verify_algebra(const VerifyConfig& cfg);
SuiteResult verify_calculus(const VerifyConfig& cfg);
SuiteResult verify_u1(const VerifyConfig& cfg);
SuiteResult verify_bundle(const VerifyConfig& cfg);
SuiteResult verify_yang_mills(const VerifyConfig& cfg);
SuiteResult verify_dirac(const VerifyConfig& cfg);

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);
std::vector<SuiteResult> verify_all(const VerifyConfig& cfg);

json suite_to_json(const SuiteResult& s);
json verify_report(const VerifyConfig& cfg, const std::vector<SuiteResult>& suites);

// Helpers shared with the acceptance driver.
double oracle_product_defect(const TorusElement& a, const TorusElement& b);
double commutation_defect(const DeformationPtr& xi);
TorusForm flat_integer_connection(const DeformationPtr& xi, const std::vector<int>& m);
// Largest mismatch between the multiset of eigenvalues and its negation.
double negation_asymmetry(const std::vector<cplx>& eigenvalues);

}  // namespace nct
