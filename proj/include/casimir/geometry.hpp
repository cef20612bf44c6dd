#pragma once

namespace casimir {

// Two spheres with radii R1, R2 and closest surface-to-surface distance L,
// all in one common (arbitrary) length unit. The centre-to-centre distance
// is R1 + R2 + L.
struct SphereGeometry {
  double R1 = 0.0;
  double R2 = 0.0;
  double L = 0.0;
};

// Dimensionless parameters derived from a SphereGeometry. Everything
// downstream depends on the geometry only through these.
struct GeometryDerived {
  double rho1 = 0.0;  // R1 / (R1+R2+L)
  double rho2 = 0.0;  // R2 / (R1+R2+L)
  double y = 0.0;     // (1 - rho1^2 - rho2^2) / (2 rho1 rho2), >= 1
  double mu = 0.0;    // arcosh(y) > 0, the bispherical separation parameter
  double Z = 0.0;     // exp(-mu) in (0,1)
  double u = 0.0;     // R1 R2 / (R1+R2)^2 in [0, 1/4]; 0 = sphere-plane, 1/4 = equal radii
  double v0 = 0.0;    // (R1 - R2) / (2 (R1+R2)) in [-1/2, 1/2]
  double alpha = 0.0; // R2 / R1
  double beta = 0.0;  // R1 / R2 (+inf in the u = 0 limit)
  double Reff = 0.0;  // R1 R2 / (R1+R2), a length
};

// Validates the input and derives all dimensionless parameters.
//
// y is computed from the cancellation-free form
//   y = 1 + L/Reff + L^2 / (2 Reff (R1+R2))
// rather than the rho-quotient, and mu = arcosh(y) is evaluated via
// log1p with a sqrt(2(y-1)) series fallback near y = 1, where the direct
// arcosh loses half of the significant digits.
//
// Throws invalid_input for non-positive or non-finite fields and
// degenerate_geometry when L is so small that mu underflows to zero.
GeometryDerived derive_parameters(const SphereGeometry& g);

// Inverse parametrization for sweeps in the natural variables (mu, u):
// reconstructs the derived set with radii normalized to R1 + R2 = 1 and
// R1 >= R2. Requires mu > 0 and 0 <= u <= 1/4.
//
// u = 0 degenerates to the sphere-plane arrangement: rho1 = 1, rho2 = 0,
// alpha = 0, beta = +inf, v0 = +1/2. All downstream formulas reduce to
// their published sphere-plane limits under these conventions.
GeometryDerived geometry_from_mu(double mu, double u);

// The SphereGeometry (unit total radius, R1 >= R2) whose derive_parameters
// reproduces (mu, u). Requires u > 0: a true plane has no finite radius.
SphereGeometry sphere_geometry_from_mu(double mu, double u);

}  // namespace casimir
