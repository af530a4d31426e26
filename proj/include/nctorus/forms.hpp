#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nctorus/core.hpp"

namespace nct {

// Sorted subset of axes {1..n}; bit j-1 set means dU_j is present.
using Mask = std::uint32_t;

Mask axes_to_mask(const std::vector<int>& axes, int n);
std::vector<int> mask_to_axes(Mask s);
int mask_degree(Mask s);
// Sign of the permutation sorting the concatenation (S, T); 0 when S and T overlap.
int shuffle_sign(Mask s, Mask t);

class TorusForm {
 public:
  using Components = std::map<Mask, TorusElement>;

  TorusForm() = default;
  explicit TorusForm(DeformationPtr xi);

  static TorusForm from_element(const TorusElement& x);
  static TorusForm basis(const TorusElement& x, const std::vector<int>& axes);
  // x dU_j
  static TorusForm one_form(const TorusElement& x, int j);
  static TorusForm dvol(DeformationPtr xi);

  int dim() const { return xi_ ? xi_->dim() : 0; }
  const DeformationPtr& deformation() const { return xi_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  TorusElement component(Mask s) const;
  void add_component(Mask s, const TorusElement& x);

  TorusForm degree_part(int k) const;
  // -1 for the zero form, -2 for mixed degree.
  int pure_degree() const;
  std::vector<int> degrees() const;
  double max_abs() const;
  int radius() const;

  TorusForm& operator+=(const TorusForm& o);
  TorusForm& operator-=(const TorusForm& o);
  TorusForm& operator*=(cplx c);

 private:
  DeformationPtr xi_;
  Components comps_;
};

TorusForm operator+(TorusForm a, const TorusForm& b);
TorusForm operator-(TorusForm a, const TorusForm& b);
TorusForm operator-(TorusForm a);
TorusForm operator*(cplx c, TorusForm a);
TorusForm operator*(const TorusForm& a, const TorusForm& b);

void check_compatible(const TorusForm& a, const TorusForm& b);

TorusForm wedge(const TorusForm& a, const TorusForm& b);
TorusForm left_multiply(const TorusElement& x, const TorusForm& a);
TorusForm right_multiply(const TorusForm& a, const TorusElement& x);
TorusForm differential(const TorusForm& a);
TorusForm hodge(const TorusForm& a);
TorusForm hodge_inverse(const TorusForm& a);
cplx integrate(const TorusForm& a);
cplx inner_product(const TorusForm& a, const TorusForm& b);
TorusForm form_star(const TorusForm& a);
// (-1)^k star^{-1} d star on each degree-(k+1) part.
TorusForm codifferential(const TorusForm& a);

bool is_hermitian(const TorusForm& a, double tol = 1e-12);
double form_norm(const TorusForm& a);
double distance(const TorusForm& a, const TorusForm& b);

// Base forms of T^n embedded into T^{n+1} (new generator commutes in exponent 0), and back.
TorusElement embed_element(const TorusElement& x, const DeformationPtr& big);
TorusForm embed_form(const TorusForm& a, const DeformationPtr& big);
TorusElement restrict_element(const TorusElement& x, const DeformationPtr& small);
TorusForm restrict_form(const TorusForm& a, const DeformationPtr& small);

}  // namespace nct
