#pragma once

#include <cstdint>
#include <random>

#include "nctorus/forms.hpp"
#include "nctorus/u1.hpp"

namespace nct {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

// Antisymmetric matrix with entries in [-0.5, 0.5).
DeformationPtr random_deformation(int n, Rng& rng);

// `count` random monomials with |m|_inf <= radius and complex coefficients in the unit box.
TorusElement random_element(const DeformationPtr& xi, int radius, int count, Rng& rng);
TorusForm random_form(const DeformationPtr& xi, int degree, int radius, int count, Rng& rng);
// Every degree 0..n.
TorusForm random_mixed_form(const DeformationPtr& xi, int radius, int count, Rng& rng);
// (a + a*)/2 over random one-forms.
TorusForm random_hermitian_one_form(const DeformationPtr& xi, int radius, int count, Rng& rng);
// Hermitian, closed: sum t_j dU_j + db with b anti-Hermitian.
TorusForm random_flat_shift(const DeformationPtr& xi, int radius, int count, Rng& rng);
// sum t_j dU_j with real t_j.
TorusForm random_constant_one_form(const DeformationPtr& xi, Rng& rng);

LaurentElement random_laurent(int radius, int count, Rng& rng);
EnvelopeElement random_envelope(CalculusKind kind, int radius, int max_k, int count, Rng& rng);

}  // namespace nct
