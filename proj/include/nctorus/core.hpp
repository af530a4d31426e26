#pragma once

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nct {

using cplx = std::complex<double>;
using Exponent = std::vector<int>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kZeroThreshold = 1e-14;

// Mismatched dimensions, deformations or models.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// A precondition of an operation was violated (bad degree, non-Hermitian input, ...).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Two independent evaluations of the same quantity disagree.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Deformation {
 public:
  // Row-major n x n entries; throws ContractError unless antisymmetric.
  Deformation(int n, std::vector<double> entries);
  static std::shared_ptr<const Deformation> zero(int n);
  static std::shared_ptr<const Deformation> make(int n, std::vector<double> entries);

  int dim() const { return n_; }
  // 1-based indices, as the generators are labelled.
  double operator()(int k, int j) const { return xi_[(k - 1) * n_ + (j - 1)]; }
  const std::vector<double>& entries() const { return xi_; }

  // Appends a row/column for one extra generator; row[j] = Xi_{n+1,j}.
  std::shared_ptr<const Deformation> extended(const std::vector<double>& row) const;
  // Upper-left k x k block.
  std::shared_ptr<const Deformation> restricted(int k) const;

  bool operator==(const Deformation& o) const { return n_ == o.n_ && xi_ == o.xi_; }

 private:
  int n_;
  std::vector<double> xi_;
};

using DeformationPtr = std::shared_ptr<const Deformation>;

bool same_deformation(const DeformationPtr& a, const DeformationPtr& b);

// exp(2 pi i sum_{k>j} m_k Xi_kj m'_j): the phase of u^m u^m' relative to u^{m+m'}.
cplx product_phase(const Deformation& xi, const Exponent& m, const Exponent& mp);

class TorusElement {
 public:
  using Terms = std::map<Exponent, cplx>;

  TorusElement() = default;
  explicit TorusElement(DeformationPtr xi);

  static TorusElement scalar(DeformationPtr xi, cplx c);
  static TorusElement monomial(DeformationPtr xi, Exponent m, cplx c = 1.0);
  // u_k^power, k 1-based.
  static TorusElement generator(DeformationPtr xi, int k, int power = 1);

  int dim() const { return xi_ ? xi_->dim() : 0; }
  const DeformationPtr& deformation() const { return xi_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx coeff(const Exponent& m) const;
  void add_term(const Exponent& m, cplx c);
  TorusElement& normalize(double threshold = kZeroThreshold);

  double max_abs() const;
  // Largest sup-norm of an exponent in the support.
  int radius() const;

  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement& operator*=(cplx c);

 private:
  DeformationPtr xi_;
  Terms terms_;
};

TorusElement operator+(TorusElement a, const TorusElement& b);
TorusElement operator-(TorusElement a, const TorusElement& b);
TorusElement operator-(TorusElement a);
TorusElement operator*(cplx c, TorusElement a);
TorusElement operator*(const TorusElement& a, const TorusElement& b);

TorusElement multiply(const TorusElement& a, const TorusElement& b);
TorusElement star(const TorusElement& a);
cplx trace_tau0(const TorusElement& a);
TorusElement derivation(int j, const TorusElement& a);
TorusElement laplacian(const TorusElement& a);

// Max coefficient difference.
double distance(const TorusElement& a, const TorusElement& b);

void check_compatible(const TorusElement& a, const TorusElement& b);

// Left-regular representation on the truncated GNS basis {u^m : |m|_inf <= cutoff}.
struct MatrixRepresentation {
  int cutoff = 0;
  std::vector<Exponent> basis;  // lexicographic
  Eigen::MatrixXcd matrix;
  // column_exits[c] is true when some image of basis[c] left the window.
  std::vector<bool> column_exits;

  int index_of(const Exponent& m) const;  // -1 outside the window
};

std::vector<Exponent> truncated_basis(int n, int cutoff);

// Built from the generator actions only: u_k u^m = exp(2 pi i sum_{j<k} Xi_kj m_j) u^{m+e_k}.
MatrixRepresentation matrix_representation(const TorusElement& a, int cutoff);

}  // namespace nct
