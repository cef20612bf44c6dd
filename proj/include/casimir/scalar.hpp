#pragma once

#include "casimir/geometry.hpp"
#include "casimir/series.hpp"

namespace casimir {

// Parity class of the cyclic scattering matrices: `plus` corresponds to an
// even number of negative off-diagonal couplings around the cycle, `minus`
// to an odd number.
enum class SignClass { plus, minus };

// Dirichlet-scalar free energy as the round-trip sum
//   Phi = -(1/2) sum_{r>=1} (1/r) cosh(r mu)/sinh^2(r mu),
// with the summand evaluated in exponentials (q = e^{-r mu}) as
// 2 q (1+q^2)/(1-q^2)^2 to avoid cosh overflow. Converges geometrically in
// exp(-mu); the representation of choice at small separations.
SeriesResult dirichlet_free_energy_roundtrip(const GeometryDerived& geom,
                                             double tol = kDefaultTol,
                                             std::int64_t max_terms = kDefaultMaxTerms);

// The same energy as the multipole sum
//   Phi = sum_{l>=0} (2l+1) log(1 - Z^{2l+1}).
// Term count scales like O(1/mu); dual to the round-trip form, and the
// pair forms the library's primary self-check.
SeriesResult dirichlet_free_energy_multipole(const GeometryDerived& geom,
                                             double tol = kDefaultTol,
                                             std::int64_t max_terms = kDefaultMaxTerms);

// Closed form of the 2r x 2r cyclic scattering determinant:
//   det M_r^{+-} = 2 (rho1 rho2)^r [cosh(r mu) -+ 1],
// evaluated as 4 (rho1 rho2)^r sinh^2(r mu / 2) (plus class) or
// 4 (rho1 rho2)^r cosh^2(r mu / 2) (minus class) to stay accurate at
// small r mu.
double dirichlet_cyclic_determinant(int r, SignClass sign, const GeometryDerived& geom);

// Short-distance (mu -> 0) asymptotic expansion of the Dirichlet energy:
//   Phi ~ -zeta(3)/(2 mu^2) + (1/12) log mu + 1/12 - log A + (1/6) log 2
//         + sum_{n=1}^{order} (2n+1)/(2n) * B_{2n} B_{2n+2}/(2n+2)! * (2^{2n+1}-1) mu^{2n}.
// Requires mu in (0, 1] and order <= 10.
double dirichlet_short_distance(double mu, int order);

}  // namespace casimir
