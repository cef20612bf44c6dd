#include "casimir/monopole.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/scalar.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

double max_abs3(double a, double b, double c) {
  return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

}  // namespace

MonopoleSeries monopole_series(const GeometryDerived& geom, double tol,
                               std::int64_t max_terms) {
  MonopoleSeries ms;
  ms.Ae = sum_series(
      [&](std::int64_t n) {
        return chebyshev_inverse_U_shifted(static_cast<int>(n), geom.alpha, geom);
      },
      1, tol, max_terms, "monopole Ae");
  if (std::isinf(geom.beta)) {
    // Sphere-plane degeneration: every term is suppressed by 1/beta.
    ms.Be = SeriesResult{0.0, 1, 0.0, true};
  } else {
    ms.Be = sum_series(
        [&](std::int64_t n) {
          return chebyshev_inverse_U_shifted(static_cast<int>(n), geom.beta, geom);
        },
        1, tol, max_terms, "monopole Be");
  }
  const double pref = std::sqrt(geom.rho1 * geom.rho2);
  ms.Ao = sum_series(
      [&](std::int64_t n) {
        return pref * chebyshev_inverse_U(static_cast<int>(n), geom);
      },
      0, tol, max_terms, "monopole Ao");
  return ms;
}

SeriesResult monopole_delta(const GeometryDerived& geom, double tol,
                            std::int64_t max_terms) {
  const MonopoleSeries ms = monopole_series(geom, tol, max_terms);
  const double ae = ms.Ae.value;
  const double be = ms.Be.value;
  const double ao = ms.Ao.value;
  // (1+Ae)(1+Be) - Ao^2 = 1 + [Ae + Be + Ae Be - Ao^2]; keep the bracket.
  const double bracket = ae + be + ae * be - ao * ao;
  if (!(1.0 + bracket > 0.0)) {
    throw verification_failure(
        "monopole_delta: non-positive log argument indicates series failure");
  }
  SeriesResult r;
  r.value = std::log1p(bracket);
  r.terms_used = ms.Ae.terms_used + ms.Be.terms_used + ms.Ao.terms_used;
  r.last_term = max_abs3(ms.Ae.last_term, ms.Be.last_term, ms.Ao.last_term);
  r.converged = ms.Ae.converged && ms.Be.converged && ms.Ao.converged;
  return r;
}

CapacitanceMatrix capacitance_matrix(const SphereGeometry& g, double tol,
                                     std::int64_t max_terms) {
  const GeometryDerived geom = derive_parameters(g);
  const MonopoleSeries ms = monopole_series(geom, tol, max_terms);
  CapacitanceMatrix c;
  c.c11 = g.R1 * (1.0 + ms.Be.value);
  c.c22 = g.R2 * (1.0 + ms.Ae.value);
  c.c12 = -std::sqrt(g.R1 * g.R2) * ms.Ao.value;
  return c;
}

SeriesResult free_energy_total(const GeometryDerived& geom, double tol,
                               std::int64_t max_terms) {
  const SeriesResult phiD = (geom.mu < 1.0)
                                ? dirichlet_free_energy_roundtrip(geom, tol, max_terms)
                                : dirichlet_free_energy_multipole(geom, tol, max_terms);
  const SeriesResult phiDelta = monopole_delta(geom, tol, max_terms);
  const double composed = phiD.value + phiDelta.value;

  // Tripwire: the independent single-expression form must agree within the
  // combined truncation error of all participating series. The scale uses
  // the parts, not the sum, because Phi_D and Phi_Delta cancel strongly at
  // large separations.
  const SeriesResult zf = free_energy_total_zform(geom, tol, max_terms);
  const double scale =
      std::abs(phiD.value) + std::abs(phiDelta.value) + std::abs(composed);
  if (std::abs(composed - zf.value) > 1e3 * tol * scale) {
    throw verification_failure(
        "free_energy_total: composed and one-shot evaluations disagree");
  }

  SeriesResult r;
  r.value = composed;
  r.terms_used = phiD.terms_used + phiDelta.terms_used;
  r.last_term = std::max(std::abs(phiD.last_term), std::abs(phiDelta.last_term));
  r.converged = phiD.converged && phiDelta.converged;
  return r;
}

SeriesResult free_energy_total_zform(const GeometryDerived& geom, double tol,
                                     std::int64_t max_terms) {
  const SeriesResult dir = dirichlet_free_energy_multipole(geom, tol, max_terms);
  const double Z = geom.Z;
  const double mu = geom.mu;
  const double one_m_Z2 = -std::expm1(-2.0 * mu);  // 1 - Z^2

  // S(g) = sum_{l>=0} (Z g)^{2l+1} / (1 - Z^{2l+1}).
  auto weighted_sum = [&](double log_Zg) {
    return sum_series(
        [&, log_Zg](std::int64_t l) {
          const double odd = 2.0 * static_cast<double>(l) + 1.0;
          return std::exp(odd * log_Zg) / (-std::expm1(-odd * mu));
        },
        0, tol, max_terms, "zform weighted sum");
  };

  const double onepa = 1.0 + geom.alpha * Z;
  const double ga = std::sqrt((Z * Z + geom.alpha * Z) / onepa);
  const double fa = one_m_Z2 / (onepa * ga);  // (1 - ga^2)/ga without cancellation
  const SeriesResult Sa = weighted_sum(std::log(Z * ga));

  double fb_Sb = 0.0;
  double cross_coef = 0.0;
  std::int64_t terms_b = 1;
  double last_b = 0.0;
  bool conv_b = true;
  if (std::isinf(geom.beta)) {
    // gb -> 1: the b-channel prefactor (1 - gb^2) vanishes identically.
  } else {
    const double onepb = 1.0 + geom.beta * Z;
    const double gb = std::sqrt((Z * Z + geom.beta * Z) / onepb);
    const double fb = one_m_Z2 / (onepb * gb);
    const SeriesResult Sb = weighted_sum(std::log(Z * gb));
    fb_Sb = fb * Sb.value;
    cross_coef = one_m_Z2 * one_m_Z2 / (Z * onepa * onepb);
    terms_b = Sb.terms_used;
    last_b = Sb.last_term;
    conv_b = Sb.converged;
  }

  const SeriesResult S0 = weighted_sum(std::log(Z));
  const double arg =
      (1.0 + fa * Sa.value) * (1.0 + fb_Sb) - cross_coef * S0.value * S0.value;
  if (!(arg > 0.0)) {
    throw verification_failure(
        "free_energy_total_zform: non-positive log argument");
  }

  SeriesResult r;
  r.value = dir.value + std::log(arg);
  r.terms_used = dir.terms_used + Sa.terms_used + terms_b + S0.terms_used;
  r.last_term = std::max(max_abs3(dir.last_term, Sa.last_term, last_b),
                         std::abs(S0.last_term));
  r.converged = dir.converged && Sa.converged && conv_b && S0.converged;
  return r;
}

SeriesResult delta_sphere_plane(double eps, double tol,
                                std::int64_t max_terms) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw invalid_input("delta_sphere_plane: eps must be > 0 and finite");
  }
  // Z = 1 + eps - sqrt(eps(2+eps)) in the cancellation-free conjugate form.
  const double root = std::sqrt(eps * (2.0 + eps));
  const double m = std::log1p(eps + root);  // -log Z
  const double one_m_Z2 = -std::expm1(-2.0 * m);
  const SeriesResult inner = sum_series(
      [&](std::int64_t l) {
        const double ld = static_cast<double>(l);
        return one_m_Z2 * std::exp(-(4.0 * ld + 1.0) * m) /
               (-std::expm1(-(2.0 * ld + 1.0) * m));
      },
      0, tol, max_terms, "sphere-plane monopole sum");
  SeriesResult r = inner;
  r.value = std::log1p(inner.value);
  return r;
}

SeriesResult delta_equal_spheres(double delta_ratio, double tol,
                                 std::int64_t max_terms) {
  if (!(delta_ratio > 0.0) || !std::isfinite(delta_ratio)) {
    throw invalid_input("delta_equal_spheres: delta_ratio must be > 0 and finite");
  }
  // Y = 1 + delta - sqrt(delta(2+delta)), conjugate form; m = -log Y.
  const double root = std::sqrt(delta_ratio * (2.0 + delta_ratio));
  const double m = std::log1p(delta_ratio + root);
  const double one_m_Y2 = -std::expm1(-2.0 * m);

  auto term = [&](std::int64_t l, bool minus_denom) {
    const double odd = 2.0 * static_cast<double>(l) + 1.0;
    const double even = 2.0 * static_cast<double>(l);
    const double numer = one_m_Y2 * (-std::expm1(-even * m)) * std::exp(-odd * m);
    const double denom =
        minus_denom ? -std::expm1(-odd * m) : 1.0 + std::exp(-odd * m);
    return numer / denom;
  };
  const SeriesResult s1 = sum_series(
      [&](std::int64_t l) { return term(l, true); }, 1, tol, max_terms,
      "equal-spheres sum (odd channel)");
  const SeriesResult s2 = sum_series(
      [&](std::int64_t l) { return term(l, false); }, 1, tol, max_terms,
      "equal-spheres sum (even channel)");

  SeriesResult r;
  r.value = std::log1p(-s1.value) + std::log1p(s2.value) -
            std::log(one_m_Y2);
  r.terms_used = s1.terms_used + s2.terms_used;
  r.last_term = std::max(std::abs(s1.last_term), std::abs(s2.last_term));
  r.converged = s1.converged && s2.converged;
  return r;
}

}  // namespace casimir
