#pragma once

#include "casimir/geometry.hpp"
#include "casimir/series.hpp"

namespace casimir {

// The three monopole series entering the correction Delta:
//   Ae = sum_{n>=1} 1/(U_n + alpha U_{n-1}),   alpha = R2/R1,
//   Be = sum_{n>=1} 1/(U_n + beta  U_{n-1}),   beta  = R1/R2,
//   Ao = sqrt(rho1 rho2) sum_{n>=0} 1/U_n   (equals its B-channel twin,
//        stored once).
// All evaluated through the overflow-free reciprocal Chebyshev forms.
struct MonopoleSeries {
  SeriesResult Ae;
  SeriesResult Be;
  SeriesResult Ao;
};

// Two-conductor capacitance matrix in the same length unit as the input
// geometry (Gaussian convention: capacitance has dimension of length).
// c12 = c21 is stored once and is negative.
struct CapacitanceMatrix {
  double c11 = 0.0;
  double c22 = 0.0;
  double c12 = 0.0;
};

MonopoleSeries monopole_series(const GeometryDerived& geom,
                               double tol = kDefaultTol,
                               std::int64_t max_terms = kDefaultMaxTerms);

// Monopole correction Phi_Delta = log[(1 + Ae)(1 + Be) - Ao^2], computed
// as log1p(Ae + Be + Ae*Be - Ao^2). The log argument exceeds 1 for every
// valid geometry; a non-positive argument signals series breakdown and
// throws verification_failure.
SeriesResult monopole_delta(const GeometryDerived& geom,
                            double tol = kDefaultTol,
                            std::int64_t max_terms = kDefaultMaxTerms);

// Capacitance coefficients of the two-sphere conductor system:
//   c11 = R1 (1 + Be),  c22 = R2 (1 + Ae),  c12 = -sqrt(R1 R2) Ao.
// Satisfies det(C) = R1 R2 exp(Phi_Delta).
CapacitanceMatrix capacitance_matrix(const SphereGeometry& g,
                                     double tol = kDefaultTol,
                                     std::int64_t max_terms = kDefaultMaxTerms);

// Full Drude-sphere free energy Phi_total = Phi_D + Phi_Delta. Phi_D uses
// the round-trip representation for mu < 1 and the multipole one
// otherwise. The result is cross-checked internally against the
// independent single-expression Z-form (free_energy_total_zform); a
// mismatch beyond the combined series tolerance throws
// verification_failure.
SeriesResult free_energy_total(const GeometryDerived& geom,
                               double tol = kDefaultTol,
                               std::int64_t max_terms = kDefaultMaxTerms);

// The same energy evaluated through the explicit one-shot form
//   Phi = sum_l (2l+1) log(1 - Z^{2l+1})
//       + log[(1 + fa Sa)(1 + fb Sb) - ((1-ga^2)(1-gb^2)/Z) S0^2],
// where ga = sqrt((Z^2 + alpha Z)/(1 + alpha Z)), fa = (1-ga^2)/ga,
// Sa = sum_l (Z ga)^{2l+1}/(1 - Z^{2l+1}) and analogously for b; S0 uses
// ga gb = Z. Slower at small mu but fully independent of the composed
// path, which makes the pair a strong internal correctness check.
SeriesResult free_energy_total_zform(const GeometryDerived& geom,
                                     double tol = kDefaultTol,
                                     std::int64_t max_terms = kDefaultMaxTerms);

// Sphere-plane limit of the monopole correction for aspect ratio
// eps = L/R (R the sphere radius, L the closest distance to the plane):
//   Phi = log[1 + (1 - Z^2) sum_{l>=0} Z^{4l+1}/(1 - Z^{2l+1})],
// with Z = 1 + eps - sqrt(eps(2+eps)) evaluated in conjugate form.
SeriesResult delta_sphere_plane(double eps, double tol = kDefaultTol,
                                std::int64_t max_terms = kDefaultMaxTerms);

// Equal-radius limit for delta_ratio = L/(2R), via the three-logarithm
// form in Y = 1 + delta - sqrt(delta(2+delta)):
//   Phi = log(1 - s1) + log(1 + s2) - log(1 - Y^2),
//   s1 = sum_{l>=1} (1-Y^2)(1-Y^{2l}) Y^{2l+1}/(1 - Y^{2l+1}),
//   s2 = sum_{l>=1} (1-Y^2)(1-Y^{2l}) Y^{2l+1}/(1 + Y^{2l+1}).
SeriesResult delta_equal_spheres(double delta_ratio, double tol = kDefaultTol,
                                 std::int64_t max_terms = kDefaultMaxTerms);

}  // namespace casimir
