#include "casimir/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// mu = arcosh(1 + t) for t = y - 1 >= 0, stable down to t -> 0.
// For t >= 1e-8 the log1p form is exact to machine precision; below that
// threshold the sqrt inside would eat half the digits of t, so we switch
// to the series mu = sqrt(2t) (1 - t/12 + 3 t^2/160 - ...), whose first
// omitted term is O(t^3) ~ 1e-24 relative.
double arcosh_1p(double t) {
  if (t >= 1e-8) {
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
  }
  return std::sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0);
}

}  // namespace

GeometryDerived derive_parameters(const SphereGeometry& g) {
  if (!(std::isfinite(g.R1) && std::isfinite(g.R2) && std::isfinite(g.L))) {
    throw invalid_input("geometry: R1, R2, L must be finite");
  }
  if (!(g.R1 > 0.0 && g.R2 > 0.0 && g.L > 0.0)) {
    throw invalid_input("geometry: R1, R2, L must be strictly positive");
  }

  GeometryDerived d;
  const double sumR = g.R1 + g.R2;
  const double Lc = sumR + g.L;  // centre-to-centre distance
  d.rho1 = g.R1 / Lc;
  d.rho2 = g.R2 / Lc;
  d.Reff = g.R1 * g.R2 / sumR;
  d.u = (g.R1 * g.R2) / (sumR * sumR);
  d.v0 = (g.R1 - g.R2) / (2.0 * sumR);
  d.alpha = g.R2 / g.R1;
  d.beta = g.R1 / g.R2;

  // t = y - 1 assembled without subtraction: L/Reff * (1 + L/(2(R1+R2))).
  const double t = (g.L / d.Reff) * (1.0 + g.L / (2.0 * sumR));
  d.y = 1.0 + t;
  d.mu = arcosh_1p(t);
  if (!(d.mu > 0.0) || !std::isfinite(d.mu)) {
    throw degenerate_geometry(
        "geometry: separation so small that mu underflows to 0 (contact limit)");
  }
  d.Z = std::exp(-d.mu);
  return d;
}

GeometryDerived geometry_from_mu(double mu, double u) {
  if (!(u >= 0.0 && u <= 0.25)) {
    throw invalid_input("geometry_from_mu: u must lie in [0, 1/4], got " +
                        std::to_string(u));
  }
  if (!std::isfinite(mu) || mu < 0.0) {
    throw invalid_input("geometry_from_mu: mu must be finite and >= 0");
  }
  if (mu == 0.0) {
    throw degenerate_geometry("geometry_from_mu: mu = 0 is the contact limit");
  }

  GeometryDerived d;
  d.mu = mu;
  d.Z = std::exp(-mu);
  const double t = 2.0 * std::pow(std::sinh(0.5 * mu), 2);  // y - 1, stable
  d.y = 1.0 + t;
  d.u = u;
  d.Reff = u;  // with R1 + R2 normalized to 1, Reff = R1 R2 = u

  const double disc = std::sqrt(1.0 - 4.0 * u);
  const double R1 = 0.5 * (1.0 + disc);
  const double R2 = 0.5 * (1.0 - disc);
  d.v0 = 0.5 * disc;

  // Invert t = (L/Reff)(1 + L/2): L = w / (1 + sqrt(1+w)), w = 2 u t.
  const double w = 2.0 * u * t;
  const double L = w / (1.0 + std::sqrt(1.0 + w));
  const double Lc = 1.0 + L;
  d.rho1 = R1 / Lc;
  d.rho2 = R2 / Lc;

  if (u > 0.0) {
    d.alpha = R2 / R1;
    d.beta = R1 / R2;
  } else {
    // Sphere-plane degeneration: the small sphere shrinks to a point.
    d.alpha = 0.0;
    d.beta = std::numeric_limits<double>::infinity();
  }
  return d;
}

SphereGeometry sphere_geometry_from_mu(double mu, double u) {
  if (!(u > 0.0 && u <= 0.25)) {
    throw invalid_input(
        "sphere_geometry_from_mu: u must lie in (0, 1/4] for finite radii");
  }
  const GeometryDerived d = geometry_from_mu(mu, u);
  const double disc = std::sqrt(1.0 - 4.0 * u);
  SphereGeometry g;
  g.R1 = 0.5 * (1.0 + disc);
  g.R2 = 0.5 * (1.0 - disc);
  const double t = d.y - 1.0;
  const double w = 2.0 * u * t;
  g.L = w / (1.0 + std::sqrt(1.0 + w));
  if (!(g.L > 0.0)) {
    throw degenerate_geometry(
        "sphere_geometry_from_mu: separation underflows to zero at this mu "
        "(contact limit)");
  }
  return g;
}

}  // namespace casimir
