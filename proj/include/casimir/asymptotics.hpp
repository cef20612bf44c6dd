#pragma once

#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/scalar.hpp"

namespace casimir {

// Short-distance (mu -> 0) machinery for the monopole free-energy
// correction.  The natural expansion variable is
//   ell = euler_gamma - log(mu / 2),
// which diverges logarithmically as the spheres approach each other.  To
// let callers assemble log-carrying terms exactly, coefficients that are
// linear in ell are kept symbolic.

// Value of the form  ell_coefficient * ell + constant.
struct LogLinear {
  double ell_coefficient = 0.0;
  double constant = 0.0;

  // Substitute ell = euler_gamma - log(mu / 2).
  double evaluate(double mu) const;
};

// Taylor coefficients of the asymmetry function
//   v(mu) = 1/2 - [log(1 + alpha e^{mu}) - log(1 + alpha e^{-mu})] / (2 mu)
//         = sum_{n>=0} v_n mu^{2n},
// where alpha = R2/R1.  v0 = (R1 - R2)/(2(R1 + R2)) = sqrt(1 - 4u)/2, and
// for n >= 1
//   v_n = (1/(2n+1)!) sum_{k=0}^{2n} k! S(2n+1, k+1) (v0 - 1/2)^{k+1}
// with S the Stirling numbers of the second kind.  Swapping the two radii
// (alpha -> beta) flips the sign of every coefficient.
struct VTaylor {
  double v0 = 0.0;
  std::vector<double> v;  // v[n] for n = 0..N, with v[0] = v0
};

// Coefficients through order N (N <= 10); requires 0 <= u <= 1/4.
VTaylor v_taylor(double u, int N);

// Shifted argument sequence for the two sphere channels:
//   c0 = 3/2 +- v0,   c_n = +- v_n  (n >= 1),
// with '+' for SignClass::plus.  Length N+1.
std::vector<double> c_series(double u, SignClass sign, int N);

// Coefficients I_m of the logarithmically divergent channel sum,
//   I_0 = ell - (psi(c0) + euler_gamma)             [carries the log]
//   I_m = sum_{n=1}^{m} [ B_{2n}(2^{2n}-2)/(2n) *
//             sum_{k=-n}^{n} B_{n+k} BellHat_{m-k,n-k}(x_i = c_{i-1})
//                             / ((n-k)! (n+k)!)
//           - psi^{(n)}(c0)/n! * BellHat_{m,n}(x_i = c_i) ]   (m >= 1),
// where BellHat_{n,k} is the partial ordinary Bell polynomial and B_k the
// Bernoulli numbers (B_1 = -1/2).  Requires m_max <= 2 (the polygamma
// table stops at psi'').  Missing c entries are treated as zero.
std::vector<LogLinear> I_coefficients(const std::vector<double>& c, int m_max);

// Prefactor coefficients
//   J_m = sum_{n=0}^{m} BellHat_{m+n+1, 2n+1}(x_1 = c0 - 1, x_i = c_{i-1})
//                       / (2n+1)!.
// Requires m_max <= 2.
std::vector<double> J_coefficients(const std::vector<double>& c, int m_max);

// Digamma building blocks for the closed-form expansion coefficients.
// For each channel sign s = +-1 (index 0 = '+', 1 = '-'):
//   Psi_0 = psi(3/2 + s v0) + euler_gamma
//   Psi_1 = s v1 psi'(3/2 + s v0)
//   Psi_2 = s v2 psi'(3/2 + s v0) + (v1^2/2) psi''(3/2 + s v0)
struct PsiTable {
  double v0 = 0.0;
  double psi_plus[3] = {0.0, 0.0, 0.0};
  double psi_minus[3] = {0.0, 0.0, 0.0};

  // phi_{n,m} = (1/2 + v0)^m Psi_n^+ + (1/2 - v0)^m Psi_n^-
  double phi(int n, int m) const;
  // theta_{n,m} = Psi_n^+ Psi_m^-
  double theta(int n, int m) const;
};

PsiTable psi_table(double v0);

// Expansion coefficients of the monopole determinant,
//   D = sum_{n>=0} mu^{2n}/(2n+1)! * [eps_n * ell + del_n],
// in closed form (validated against the Bell-polynomial route in tests).
// Endpoints: u = 0 gives (1, 0, 1, 1/12, 1, 107/360) and u = 1/4 gives
// (log2, log^2 2, (log2 - 1/8)/2, (log^2 2 - log2/12)/2,
//  (log2 - 47/128)/3, (log^2 2 - (83/320)log2 - 5/384)/3),
// listed as (eps0, del0, eps1, del1, eps2, del2).
struct ExpansionCoefficients {
  double eps[3] = {0.0, 0.0, 0.0};
  double del[3] = {0.0, 0.0, 0.0};
};

// Requires 0 <= u <= 1/4; uses the v0 >= 0 branch.
ExpansionCoefficients epsilon_delta(double u);

// Same coefficients parameterized by signed v0 (u = 1/4 - v0^2).  The
// result is an even function of v0: both radius orderings give identical
// values, which tests assert exactly.
ExpansionCoefficients epsilon_delta_from_v0(double v0);

// Short-distance approximation of the monopole correction, returned in two
// algebraically equivalent forms whose difference estimates the truncation
// error:
//   pre_mercator = log(a0 + a1 mu^2/6 + a2 mu^4/120)
//   mercator     = log a0 + (a1/a0) mu^2/6
//                  + [3 a2/a0 - 5 (a1/a0)^2] mu^4/360
// with a_n = eps_n * ell + del_n.  The expansion targets mu <= 0.5; beyond
// that `mu_warning` is set (the values are still returned).
struct DeltaExpansion {
  double pre_mercator = 0.0;
  double mercator = 0.0;
  bool mu_warning = false;
};

DeltaExpansion delta_short_distance(const GeometryDerived& geom, double mu);

// Analytic constants of the sphere-plane (u = 0) expansion:
//   gamma1 = euler_gamma + log 2          [a0 = gamma1 - log mu]
//   gamma2 = gamma1 + 1/12
//   gamma3 = (5 gamma2^2 - 3 gamma1^2 - (107/120) gamma1) / 2
//   gamma4 = 5 gamma2 - 3 gamma1 - 107/240
struct GammaConstants {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;
};

GammaConstants gamma_constants();

}  // namespace casimir
