#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/bundle.hpp"

namespace nct {

struct GammaRep {
  int n = 0;
  int spin_dim = 0;
  std::vector<Eigen::MatrixXcd> gamma;  // gamma[j-1] is gamma^j
};

GammaRep gamma_matrices(int n);
// max |{g_j, g_k} - 2 delta_jk I|
double anticommutation_defect(const GammaRep& rep);

// Finitely supported L^2(T^n) (x) C^{spin_dim} vector.
class Spinor {
 public:
  using Terms = std::map<Exponent, Eigen::VectorXcd>;

  Spinor() = default;
  Spinor(DeformationPtr xi, int spin_dim);
  static Spinor monomial(DeformationPtr xi, const Exponent& m, const Eigen::VectorXcd& v);

  int dim() const { return xi_ ? xi_->dim() : 0; }
  int spin_dim() const { return spin_dim_; }
  const DeformationPtr& deformation() const { return xi_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Eigen::VectorXcd at(const Exponent& m) const;
  void add(const Exponent& m, const Eigen::VectorXcd& v);
  Spinor& normalize(double threshold = kZeroThreshold);
  double max_abs() const;
  int radius() const;

  Spinor& operator+=(const Spinor& o);
  Spinor& operator-=(const Spinor& o);
  Spinor& operator*=(cplx c);

 private:
  DeformationPtr xi_;
  int spin_dim_ = 0;
  Terms terms_;
};

Spinor operator+(Spinor a, const Spinor& b);
Spinor operator-(Spinor a, const Spinor& b);
Spinor operator*(cplx c, Spinor a);
double distance(const Spinor& a, const Spinor& b);

// GNS left action of the algebra on spinors.
Spinor left_multiply(const TorusElement& b, const Spinor& psi);
cplx spinor_inner(const Spinor& a, const Spinor& b);

// (D psi)(m) = sum_j 2 pi i m_j gamma^j psi(m)
Spinor dirac_apply(const GammaRep& rep, const Spinor& psi);
// b0 [D, b1] psi = b0 sum_j gamma^j delta_j(b1) psi
Spinor pi_r_apply(const TorusElement& b0, const TorusElement& b1, const GammaRep& rep, const Spinor& psi);
// pi_R(sum_j x_j dU_j) = sum_j -i x_j gamma^j
Spinor clifford_apply(const TorusForm& alpha, const GammaRep& rep, const Spinor& psi);

// sum_k T^R_1 b_k^* (x) psi_k
struct GaugeSpinor {
  std::vector<std::pair<TorusElement, Spinor>> pairs;
};

// phi with sum_k T^R_1 b_k^* (x) psi_k = T^R_1 (x) phi, phi = sum_k b_k^* psi_k.
Spinor reduce(const GaugeSpinor& psi);
// alpha with nabla(T^R_1) = T^R_1 (x) alpha, from u_{n+1}^* Dhat(u_{n+1}).
TorusForm gauge_connection_form(const ConnectionSpec& omega);
GaugeSpinor gauge_dirac_apply(const ConnectionSpec& omega, const GammaRep& rep, const GaugeSpinor& psi);
// sum_k (b_k D - [D, b_k]) psi_k
Spinor dirac_residual(const GammaRep& rep, const GaugeSpinor& psi);
cplx gauge_spinor_inner(const GaugeSpinor& a, const GaugeSpinor& b);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // sorted by magnitude, then argument
  int kernel_dimension = 0;
  int signature = 0;  // +1 self-adjoint, -1 anti-self-adjoint, 0 neither
  double adjointness_defect = 0.0;
};

struct SpectrumLine {
  double re;
  double im;
  int multiplicity;
};

// Matrix of the gauge Dirac operator on {u^m (x) e_s : |m|_inf <= cutoff}.
Eigen::MatrixXcd gauge_dirac_matrix(const ConnectionSpec& omega, const GammaRep& rep, int cutoff);
SpectrumReport dirac_spectrum(const ConnectionSpec& omega, const GammaRep& rep, int cutoff,
                              std::uint64_t seed = 0);
std::vector<SpectrumLine> group_spectrum(const std::vector<cplx>& eigenvalues, double tol = 1e-8);

}  // namespace nct
