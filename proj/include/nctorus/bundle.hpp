#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nctorus/forms.hpp"
#include "nctorus/random.hpp"
#include "nctorus/u1.hpp"

namespace nct {

enum class ModelTag { A, B };

const char* to_string(ModelTag m);
// Model A carries the classical calculus, Model B the non-standard one.
void validate_pairing(ModelTag model, CalculusKind kind);

struct BundleModel {
  ModelTag tag = ModelTag::B;
  int n = 0;
  DeformationPtr base;
  // Model A: (n+1)-dimensional extension; Model B: same as base.
  DeformationPtr total;
  std::vector<double> fiber_row;
  int max_degree = 3;

  static BundleModel model_a(DeformationPtr base, std::vector<double> fiber_row = {});
  static BundleModel model_b(DeformationPtr base);

  CalculusKind calculus() const {
    return tag == ModelTag::A ? CalculusKind::Classical : CalculusKind::NonStandard;
  }
  // Coefficient s of Theta(theta) = s theta (x) theta.
  cplx theta_coefficient() const { return embedded_differential(calculus()); }
};

bool same_model(const BundleModel& a, const BundleModel& b);

// Differential forms on the total space.
//   Model A: forms on T^{n+1}; axis n+1 is dU_{n+1}.
//   Model B: sums of (base form) (x) z^a theta^k in the graded tensor product.
class TotalForm {
 public:
  explicit TotalForm(const BundleModel& model);

  static TotalForm from_base(const BundleModel& model, const TorusForm& base);
  // Model A only: a form on T^{n+1}.
  static TotalForm from_total(const BundleModel& model, const TorusForm& total);
  // Model B only: base (x) z^a theta^k.
  static TotalForm tensor(const BundleModel& model, const TorusForm& base, int a, int k);

  const BundleModel& model() const { return model_; }
  bool truncated() const { return truncated_; }
  const TorusForm& total_form() const { return a_; }
  const std::map<EnvelopeKey, TorusForm>& tensor_terms() const { return b_; }

  bool is_zero() const;
  double max_abs() const;
  TotalForm degree_part(int k) const;
  std::vector<int> degrees() const;

  bool is_horizontal() const;
  // Horizontal forms only: phi = sum_p phi_p with coaction phi_p (x) z^p.
  std::map<int, TotalForm> coaction_pieces() const;
  // The form as a base form; throws ConsistencyError if it is not one.
  TorusForm to_base() const;

  TotalForm& operator+=(const TotalForm& o);
  TotalForm& operator-=(const TotalForm& o);
  TotalForm& operator*=(cplx c);

 private:
  void add_tensor(const EnvelopeKey& key, const TorusForm& f);
  BundleModel model_;
  TorusForm a_;
  std::map<EnvelopeKey, TorusForm> b_;
  bool truncated_ = false;

  friend TotalForm multiply(const TotalForm& x, const TotalForm& y);
  friend TotalForm total_differential(const TotalForm& x);
  friend TotalForm total_star(const TotalForm& x);
};

TotalForm operator+(TotalForm a, const TotalForm& b);
TotalForm operator-(TotalForm a, const TotalForm& b);
TotalForm operator*(cplx c, TotalForm a);
TotalForm operator*(const TotalForm& a, const TotalForm& b);

TotalForm multiply(const TotalForm& x, const TotalForm& y);
TotalForm total_differential(const TotalForm& x);
TotalForm total_star(const TotalForm& x);
double distance(const TotalForm& a, const TotalForm& b);

struct ConnectionSpec {
  BundleModel model;
  TorusForm mu;  // Hermitian base one-form; zero is the canonical connection
};

// Throws ContractError unless mu is a Hermitian one-form over the model's base.
void validate_connection(const ConnectionSpec& omega, double tol = 1e-12);

// Values of ad-type sections at theta; ad is trivial, so these are base forms.
using AdSection = TorusForm;

ConnectionSpec canonical_connection(const BundleModel& model);
// omega(theta) as a total one-form.
TotalForm evaluate_connection(const ConnectionSpec& omega);

// Delta(omega(theta)) - omega(theta) (x) 1 - 1 (x) theta, largest coefficient.
double connection_coaction_defect(const ConnectionSpec& omega);

TotalForm curvature_total(const ConnectionSpec& omega);
// d omega(theta) - <omega,omega>(theta), extracted as a base form.
AdSection curvature(const ConnectionSpec& omega);
// d mu (Model A), d mu + mu mu (Model B).
AdSection curvature_closed_form(const ConnectionSpec& omega);

TotalForm covariant_derivative(const ConnectionSpec& omega, const TotalForm& phi);
TotalForm dual_covariant_derivative(const ConnectionSpec& omega, const TotalForm& phi);

// <psi, phi>(theta) = s psi(theta) phi(theta) for total-space values.
TotalForm theta_pairing(const BundleModel& model, const TotalForm& psi, const TotalForm& phi);

// Dual S-operator value: mu eta - (-1)^a eta mu (Model B), 0 (Model A).
AdSection s_operator(const ConnectionSpec& omega, const AdSection& tau);
AdSection twisted_covariant_derivative(const ConnectionSpec& omega, const AdSection& tau);
AdSection dual_twisted_covariant_derivative(const ConnectionSpec& omega, const AdSection& tau);
// <omega,<omega,omega>> - <<omega,omega>,omega> at theta.
AdSection bianchi_rhs(const ConnectionSpec& omega);

struct CheckReport {
  bool passed = true;
  double max_defect = 0.0;
  std::string witness;  // empty when passed
  std::string rationale;
};

CheckReport check_regular(const ConnectionSpec& omega, int samples, std::uint64_t seed = 0,
                          double tol = 1e-10);
CheckReport check_multiplicative(const ConnectionSpec& omega, double tol = 1e-10);

// A random horizontal total form of the given base degree.
TotalForm random_horizontal(const BundleModel& model, int degree, Rng& rng);

}  // namespace nct
