#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "casimir/geometry.hpp"

namespace casimir {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact rational value. cpp_rational keeps the fraction in lowest terms
// with a positive denominator by construction.
struct RationalCoefficient {
  BigRational value;

  BigInt numerator() const { return boost::multiprecision::numerator(value); }
  BigInt denominator() const { return boost::multiprecision::denominator(value); }
  double to_double() const { return value.convert_to<double>(); }
};

// Named constants used by the short-distance expansions.
struct Constants {
  double zeta3;         // Riemann zeta(3) = 1.2020569...
  double glaisher_logA; // log of Glaisher's constant A = 1.2824271...
  double euler_gamma;   // Euler-Mascheroni gamma = 0.5772156...
};

const Constants& constants();

// Chebyshev polynomial of the second kind evaluated at the geometry's y:
//   U_n(y) = sinh((n+1) mu) / sinh(mu).
// Grows like e^{n mu}; overflows (returns +inf) for n*mu beyond ~700.
// All production consumers use the reciprocal forms below instead.
double chebyshev_U(int n, const GeometryDerived& geom);

// Reference evaluation by the bare three-term recurrence
// U_{k+1} = 2 y U_k - U_{k-1}; used as an independent oracle in tests.
double chebyshev_U_recurrence(int n, double y);

// 1 / U_n(y) in the overflow-free form
//   (Z^{-1} - Z) Z^{n+1} / (1 - Z^{2(n+1)}),
// valid for arbitrarily large n*mu (underflows gracefully to 0).
double chebyshev_inverse_U(int n, const GeometryDerived& geom);

// 1 / (U_n(y) + ratio * U_{n-1}(y)) for n >= 1, ratio >= 0, computed
// without overflow as
//   (Z^{-1} - Z) Z^{n+1} / [(1 + ratio Z)(1 - g^2 Z^{2n})],
// with g^2 = (Z^2 + ratio Z)/(1 + ratio Z).
// Both sphere self-interaction sums use this one routine (with ratio equal
// to either radius ratio), which makes the R1 <-> R2 exchange symmetry of
// the energies exact at the bit level.
double chebyshev_inverse_U_shifted(int n, double ratio, const GeometryDerived& geom);

// Exact Bernoulli number B_k in the convention B_1 = -1/2. The table is
// built eagerly (thread-safe) up to k = 128 on first use and immutable
// afterwards; k beyond the table throws invalid_input.
RationalCoefficient bernoulli_number(int k);

// Bernoulli polynomial B_n(c) = sum_k C(n,k) B_k c^{n-k}.
double bernoulli_poly(int n, double c);

// Stirling number of the second kind S(n, k), exact. Returns 0 for k > n.
RationalCoefficient stirling2(int n, int k);

// Partial ordinary Bell polynomial: the coefficient of x^n in
// (sum_{i>=1} c_i x^i)^k, computed by iterated truncated polynomial
// multiplication. `coeffs[i-1]` holds c_i and must cover indices 1..n.
double bell_partial_ordinary(int n, int k, const std::vector<double>& coeffs);

// Polygamma function psi^{(n)}(x) for x > 0, via upward recurrence to a
// large argument followed by the Bernoulli asymptotic series. Accurate to
// ~1e-15 relative on the arguments used here (x in [1, 2], n <= 2).
double polygamma(int n, double x);

}  // namespace casimir
