// Tests for the scalar Dirichlet reference energy: equality of the two dual
// series representations, the cyclic-determinant closed forms, the frozen
// spot value, term-count behaviour, and the short-distance expansion.

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/scalar.hpp"

using namespace casimir;

namespace {

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("round-trip and multipole representations agree") {
  // The two series sum the same log-determinant grouped by round trips
  // (images) and by multipole order respectively; their values must match to
  // roughly the requested tolerance everywhere.
  for (double mu : {0.1, 0.5, 1.0, 5.0}) {
    for (double u : {0.0, 0.1, 0.25}) {
      const GeometryDerived g = geometry_from_mu(mu, u);
      const double a = dirichlet_free_energy_roundtrip(g, 1e-13).value;
      const double b = dirichlet_free_energy_multipole(g, 1e-13).value;
      CHECK(rel(a, b) < 1e-11);
    }
  }
}

TEST_CASE("frozen spot value at mu = 1") {
  const GeometryDerived g = geometry_from_mu(1.0, 0.2);
  const double expected = -0.65340180014649522;
  CHECK(rel(dirichlet_free_energy_roundtrip(g, 1e-14).value, expected) < 1e-13);
  CHECK(rel(dirichlet_free_energy_multipole(g, 1e-14).value, expected) < 1e-13);
}

TEST_CASE("free energy is negative and increases with separation") {
  // The scalar Dirichlet interaction is attractive: Phi_D < 0, rising
  // monotonically toward 0 as mu grows.
  double prev = -std::numeric_limits<double>::infinity();
  for (double mu : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    const GeometryDerived g = geometry_from_mu(mu, 0.2);
    const double phi = dirichlet_free_energy_multipole(g).value;
    CHECK(phi < 0.0);
    CHECK(phi > prev);
    prev = phi;
  }
}

TEST_CASE("far-separation limit is dominated by the lowest multipole") {
  // At mu = 20 the l = 0 term log(1 - e^{-mu}) ~ -e^{-mu} dominates; the
  // relative size of everything else is O(e^{-mu}).
  const GeometryDerived g = geometry_from_mu(20.0, 0.25);
  const SeriesResult res = dirichlet_free_energy_multipole(g);
  CHECK(rel(res.value, -std::exp(-20.0)) < 1e-8);
  CHECK(res.converged);
  CHECK(res.terms_used < 10);
}

TEST_CASE("term counts: which representation converges faster depends on tol") {
  // Both series converge geometrically in exp(-mu) but with different
  // per-term costs of the prefactors: at mu = 0.05 the multipole sum needs
  // fewer terms at tight tolerance, while the round-trip sum wins at loose
  // tolerance.
  const GeometryDerived g = geometry_from_mu(0.05, 0.2);
  const SeriesResult rt_tight = dirichlet_free_energy_roundtrip(g, 1e-12);
  const SeriesResult mp_tight = dirichlet_free_energy_multipole(g, 1e-12);
  CHECK(mp_tight.terms_used < rt_tight.terms_used);

  const SeriesResult rt_loose = dirichlet_free_energy_roundtrip(g, 1e-6);
  const SeriesResult mp_loose = dirichlet_free_energy_multipole(g, 1e-6);
  CHECK(rt_loose.terms_used < mp_loose.terms_used);
}

TEST_CASE("cyclic determinant closed forms at r = 1 reduce to 2x2 algebra") {
  // The r = 1 cyclic matrix is [[1, c], [c, 1]] with c = rho1 + rho2 in the
  // even sign class and c = rho1 - rho2 in the odd one.
  std::mt19937 rng(314);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int i = 0; i < 10; ++i) {
    const GeometryDerived g =
        derive_parameters(SphereGeometry{dist(rng), dist(rng), dist(rng)});
    const double plus = dirichlet_cyclic_determinant(1, SignClass::plus, g);
    const double minus = dirichlet_cyclic_determinant(1, SignClass::minus, g);
    const double s = g.rho1 + g.rho2;
    const double dlt = g.rho1 - g.rho2;
    CHECK(rel(plus, 1.0 - s * s) < 1e-13);
    CHECK(rel(minus, 1.0 - dlt * dlt) < 1e-13);
  }
}

TEST_CASE("cyclic determinants satisfy the doubling identity") {
  // sinh(r mu) = 2 sinh(r mu/2) cosh(r mu/2) implies
  // det M_r^+ * det M_r^- = det M_{2r}^+.
  const GeometryDerived g = geometry_from_mu(0.8, 0.18);
  for (int r = 1; r <= 4; ++r) {
    const double lhs = dirichlet_cyclic_determinant(r, SignClass::plus, g) *
                       dirichlet_cyclic_determinant(r, SignClass::minus, g);
    const double rhs = dirichlet_cyclic_determinant(2 * r, SignClass::plus, g);
    CHECK(rel(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("short-distance expansion: exact mu^2 coefficient") {
  // The first correction beyond the constant block is -7/2880 mu^2, coming
  // from (3/2) B_2 B_4 / 4! * (2^3 - 1).
  const double mu = 0.3;
  const double inc = dirichlet_short_distance(mu, 1) - dirichlet_short_distance(mu, 0);
  CHECK(rel(inc, -7.0 / 2880.0 * mu * mu) < 1e-12);
}

TEST_CASE("short-distance expansion error shrinks like mu^6 at order 2") {
  auto err = [](double mu) {
    const GeometryDerived g = geometry_from_mu(mu, 0.25);
    return std::abs(dirichlet_free_energy_multipole(g, 1e-15).value -
                    dirichlet_short_distance(mu, 2));
  };
  const double ratio = err(0.2) / err(0.1);
  // An O(mu^6) remainder halves to 1/64 of its size; allow a window for the
  // subleading terms.
  CHECK(ratio > 40.0);
  CHECK(ratio < 90.0);
}

TEST_CASE("short-distance expansion rejects out-of-domain requests") {
  CHECK_THROWS_AS(dirichlet_short_distance(1.5, 2), invalid_input);
  CHECK_THROWS_AS(dirichlet_short_distance(0.0, 2), invalid_input);
  CHECK_THROWS_AS(dirichlet_short_distance(0.5, 11), invalid_input);
  CHECK_THROWS_AS(dirichlet_short_distance(0.5, -1), invalid_input);
}

TEST_CASE("series failure to converge raises series_stalled") {
  const GeometryDerived g = geometry_from_mu(0.05, 0.2);
  CHECK_THROWS_AS(dirichlet_free_energy_roundtrip(g, 1e-12, 10), series_stalled);
  CHECK_THROWS_AS(dirichlet_free_energy_multipole(g, 1e-12, 10), series_stalled);
}
