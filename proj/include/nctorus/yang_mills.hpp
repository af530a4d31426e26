#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/bundle.hpp"

namespace nct {

// Coefficient of T^triv under the trivialization of the associated module.
using TrivializedSection = TorusForm;

enum class ResidualKind { Analytic, GeometricA, GeometricB };
const char* to_string(ResidualKind k);

struct ResidualReport {
  ResidualKind kind = ResidualKind::Analytic;
  TrivializedSection residual;
  double norm = 0.0;
  bool is_solution = false;
  // Distance between the two independent evaluations of the residual.
  double consistency_gap = 0.0;
};

TrivializedSection gauge_qlc_apply(const ConnectionSpec& omega, const TorusElement& section);
TrivializedSection exterior_cov_derivative(const ConnectionSpec& omega, const TrivializedSection& s);
// <T1, T2>_R = b1^* b2 for T_i = T^triv b_i.
TorusElement hermitian_structure(const TorusElement& b1, const TorusElement& b2);

TrivializedSection formal_adjoint_apply(const ConnectionSpec& omega, const TrivializedSection& s);
// d^S on a section of degree a: mu eta - (-1)^a eta mu (Model B), 0 (Model A).
TrivializedSection s_derivative_apply(const ConnectionSpec& omega, const TrivializedSection& s);
TrivializedSection s_adjoint_apply(const ConnectionSpec& omega, const TrivializedSection& s);

// Closed forms used as independent cross-checks.
//   Model A: coordinates (d* d mu)_j = -Lap x_j + delta_j(sum_k delta_k x_k).
//   Model B: -star^{-1}(d star F + mu star F + (-1)^{n-1} star F mu), F = d mu + mu mu.
TrivializedSection geometric_closed_form(const ConnectionSpec& omega);
// d star F + mu star F + (-1)^{n-1} star F mu with F = d mu + mu mu (degree n-1).
TorusForm yang_mills_closed_form(const TorusForm& mu);

ResidualReport geometric_residual(const ConnectionSpec& omega, double tol = 1e-9,
                                  double consistency_tol = 1e-9);
ResidualReport analytic_residual(const BundleModel& model, const TorusForm& mu, double tol = 1e-9,
                                 double consistency_tol = 1e-9);

double ym_functional(const ConnectionSpec& omega);

struct ShiftResult {
  ConnectionSpec omega;
  bool ym_invariant = false;
};
ShiftResult gauge_shift(const ConnectionSpec& omega, const TorusForm& shift, double tol = 1e-12);

struct KernelResult {
  int dimension = 0;
  std::vector<TorusForm> basis;
  std::vector<double> singular_values;  // ascending
  double gap = 0.0;                     // smallest kept / largest dropped, inf if those are exact zeros
};

struct FlatKernelReport {
  // kernel of mu -> d* d mu on {u^m dU_j : |m|_inf <= max_exp}
  KernelResult ym;
  // kernel of mu -> d mu
  KernelResult zero_curvature;
  // kernel of mu -> (d mu, d* mu): the harmonic one-forms
  KernelResult harmonic;
  // Hermitian part of the YM kernel, real dimension
  int ym_hermitian_real_dimension = 0;
};

FlatKernelReport flat_kernel_solver(const BundleModel& model, int max_exp, double gap_threshold = 1e-6);

// True when `form` lies in the span of `basis` (least-squares residual below tol).
bool in_span(const std::vector<TorusForm>& basis, const TorusForm& form, int max_exp, double tol = 1e-8);

}  // namespace nct
