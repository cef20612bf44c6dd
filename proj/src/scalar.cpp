#include "casimir/scalar.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

SeriesResult dirichlet_free_energy_roundtrip(const GeometryDerived& geom,
                                             double tol,
                                             std::int64_t max_terms) {
  const double mu = geom.mu;
  auto term = [mu](std::int64_t r) {
    // cosh(r mu)/sinh^2(r mu) = 2 q (1 + q^2)/(1 - q^2)^2 with q = e^{-r mu}.
    const double q = std::exp(-static_cast<double>(r) * mu);
    const double q2 = q * q;
    const double denom = -std::expm1(-2.0 * static_cast<double>(r) * mu);  // 1 - q^2
    const double kernel = 2.0 * q * (1.0 + q2) / (denom * denom);
    return -0.5 * kernel / static_cast<double>(r);
  };
  return sum_series(term, 1, tol, max_terms, "dirichlet roundtrip");
}

SeriesResult dirichlet_free_energy_multipole(const GeometryDerived& geom,
                                             double tol,
                                             std::int64_t max_terms) {
  const double mu = geom.mu;
  auto term = [mu](std::int64_t l) {
    const double zp = std::exp(-(2.0 * static_cast<double>(l) + 1.0) * mu);  // Z^{2l+1}
    return (2.0 * static_cast<double>(l) + 1.0) * std::log1p(-zp);
  };
  return sum_series(term, 0, tol, max_terms, "dirichlet multipole");
}

double dirichlet_cyclic_determinant(int r, SignClass sign,
                                    const GeometryDerived& geom) {
  if (r < 1) throw invalid_input("dirichlet_cyclic_determinant: r must be >= 1");
  const double half = 0.5 * r * geom.mu;
  const double trig = (sign == SignClass::plus) ? std::sinh(half) : std::cosh(half);
  return 4.0 * std::pow(geom.rho1 * geom.rho2, r) * trig * trig;
}

double dirichlet_short_distance(double mu, int order) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw invalid_input("dirichlet_short_distance: mu must lie in (0, 1]");
  }
  if (order < 0) throw invalid_input("dirichlet_short_distance: order must be >= 0");
  if (order > 10) {
    throw invalid_input(
        "dirichlet_short_distance: order beyond implemented Bernoulli table (max 10)");
  }
  const Constants& cst = constants();
  double phi = -cst.zeta3 / (2.0 * mu * mu) + std::log(mu) / 12.0 + 1.0 / 12.0 -
               cst.glaisher_logA + std::log(2.0) / 6.0;
  double mu2n = 1.0;
  for (int n = 1; n <= order; ++n) {
    mu2n *= mu * mu;
    // Coefficient assembled exactly: (2n+1)/(2n) * B_{2n} B_{2n+2}/(2n+2)! * (2^{2n+1}-1).
    BigRational coef = bernoulli_number(2 * n).value *
                       bernoulli_number(2 * n + 2).value;
    coef *= BigRational(2 * n + 1, 2 * n);
    BigInt fact = 1;
    for (int i = 2; i <= 2 * n + 2; ++i) fact *= i;
    coef /= BigRational(fact);
    coef *= (BigInt(1) << (2 * n + 1)) - 1;
    phi += coef.convert_to<double>() * mu2n;
  }
  return phi;
}

}  // namespace casimir
