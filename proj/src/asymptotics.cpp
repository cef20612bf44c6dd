#include "casimir/asymptotics.hpp"

#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Stirling-sum evaluation of v_n (n >= 1) at non-negative v0.  The
// rational prefactors k! S(2n+1, k+1) / (2n+1)! overflow 53-bit integers
// near the order cap, so they are formed exactly before rounding once.
double v_coefficient_raw(int n, double v0) {
  const double x = v0 - 0.5;
  const BigRational denom(factorial_big(2 * n + 1));
  double sum = 0.0;
  BigInt kfact = 1;
  double xpow = x;  // x^{k+1}
  for (int k = 0; k <= 2 * n; ++k) {
    if (k > 0) kfact *= k;
    const BigRational coef =
        BigRational(kfact) * stirling2(2 * n + 1, k + 1).value / denom;
    sum += coef.convert_to<double>() * xpow;
    xpow *= x;
  }
  return sum;
}

// v_n is an odd function of v0 (swapping the radii flips the sign of the
// whole asymmetry function).  Evaluating at |v0| and restoring the sign
// makes that antisymmetry exact in floating point, which in turn makes the
// expansion coefficients below exactly even under radius exchange.
double v_coefficient(int n, double v0) {
  if (n == 0) return v0;
  const double mag = v_coefficient_raw(n, std::abs(v0));
  return std::signbit(v0) ? -mag : mag;
}

}  // namespace

double LogLinear::evaluate(double mu) const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw invalid_input("LogLinear::evaluate: mu must be positive and finite");
  }
  const double ell = constants().euler_gamma - std::log(0.5 * mu);
  return ell_coefficient * ell + constant;
}

VTaylor v_taylor(double u, int N) {
  if (!(u >= 0.0 && u <= 0.25)) {
    throw invalid_input("v_taylor: u must lie in [0, 1/4]");
  }
  if (N < 0 || N > 10) {
    throw invalid_input("v_taylor: order N must lie in [0, 10]");
  }
  VTaylor out;
  out.v0 = 0.5 * std::sqrt(1.0 - 4.0 * u);
  out.v.resize(static_cast<std::size_t>(N) + 1);
  out.v[0] = out.v0;
  for (int n = 1; n <= N; ++n) {
    out.v[static_cast<std::size_t>(n)] = v_coefficient(n, out.v0);
  }
  return out;
}

std::vector<double> c_series(double u, SignClass sign, int N) {
  const double s = (sign == SignClass::plus) ? 1.0 : -1.0;
  const VTaylor vt = v_taylor(u, N);
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  c[0] = 1.5 + s * vt.v0;
  for (int n = 1; n <= N; ++n) {
    c[static_cast<std::size_t>(n)] = s * vt.v[static_cast<std::size_t>(n)];
  }
  return c;
}

std::vector<LogLinear> I_coefficients(const std::vector<double>& c,
                                      int m_max) {
  if (m_max < 0 || m_max > 2) {
    throw invalid_input("I_coefficients: m_max must lie in [0, 2]");
  }
  if (c.empty()) {
    throw invalid_input("I_coefficients: c must provide at least c0");
  }
  const double c0 = c[0];
  // Zero-padded Bell-polynomial argument vectors so every index below is
  // in range regardless of how many c entries the caller supplied.
  const std::size_t need = static_cast<std::size_t>(2 * m_max) + 2;
  std::vector<double> shifted(need, 0.0);  // x_i = c_{i-1}
  std::vector<double> plain(need, 0.0);    // x_i = c_i
  for (std::size_t i = 0; i < need; ++i) {
    if (i < c.size()) shifted[i] = c[i];
    if (i + 1 < c.size()) plain[i] = c[i + 1];
  }

  std::vector<LogLinear> out(static_cast<std::size_t>(m_max) + 1);
  out[0] = LogLinear{1.0, -(polygamma(0, c0) + constants().euler_gamma)};
  for (int m = 1; m <= m_max; ++m) {
    double s = 0.0;
    for (int n = 1; n <= m; ++n) {
      double inner = 0.0;
      for (int k = -n; k <= n; ++k) {
        if (m - k < 0) continue;
        inner += bernoulli_number(n + k).to_double() *
                 bell_partial_ordinary(m - k, n - k, shifted) /
                 (factorial_d(n - k) * factorial_d(n + k));
      }
      s += bernoulli_number(2 * n).to_double() *
           (std::pow(2.0, 2 * n) - 2.0) / (2.0 * n) * inner;
      s -= polygamma(n, c0) / factorial_d(n) *
           bell_partial_ordinary(m, n, plain);
    }
    out[static_cast<std::size_t>(m)] = LogLinear{0.0, s};
  }
  return out;
}

std::vector<double> J_coefficients(const std::vector<double>& c, int m_max) {
  if (m_max < 0 || m_max > 2) {
    throw invalid_input("J_coefficients: m_max must lie in [0, 2]");
  }
  if (c.empty()) {
    throw invalid_input("J_coefficients: c must provide at least c0");
  }
  const std::size_t need = static_cast<std::size_t>(2 * m_max) + 1;
  std::vector<double> xs(need, 0.0);
  xs[0] = c[0] - 1.0;
  for (std::size_t i = 1; i < need && i < c.size(); ++i) xs[i] = c[i];

  std::vector<double> out(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) {
    double s = 0.0;
    for (int n = 0; n <= m; ++n) {
      s += bell_partial_ordinary(m + n + 1, 2 * n + 1, xs) /
           factorial_d(2 * n + 1);
    }
    out[static_cast<std::size_t>(m)] = s;
  }
  return out;
}

double PsiTable::phi(int n, int m) const {
  if (n < 0 || n > 2 || m < 0) {
    throw invalid_input("PsiTable::phi: need n in [0, 2] and m >= 0");
  }
  return std::pow(0.5 + v0, m) * psi_plus[n] +
         std::pow(0.5 - v0, m) * psi_minus[n];
}

double PsiTable::theta(int n, int m) const {
  if (n < 0 || n > 2 || m < 0 || m > 2) {
    throw invalid_input("PsiTable::theta: indices must lie in [0, 2]");
  }
  return psi_plus[n] * psi_minus[m];
}

PsiTable psi_table(double v0) {
  if (!(std::abs(v0) <= 0.5)) {
    throw invalid_input("psi_table: |v0| must be <= 1/2");
  }
  PsiTable t;
  t.v0 = v0;
  const double v1 = v_coefficient(1, v0);
  const double v2 = v_coefficient(2, v0);
  const double c0p = 1.5 + v0;
  const double c0m = 1.5 - v0;
  const double g = constants().euler_gamma;
  t.psi_plus[0] = polygamma(0, c0p) + g;
  t.psi_plus[1] = v1 * polygamma(1, c0p);
  t.psi_plus[2] = v2 * polygamma(1, c0p) + 0.5 * v1 * v1 * polygamma(2, c0p);
  t.psi_minus[0] = polygamma(0, c0m) + g;
  t.psi_minus[1] = -v1 * polygamma(1, c0m);
  t.psi_minus[2] =
      -v2 * polygamma(1, c0m) + 0.5 * v1 * v1 * polygamma(2, c0m);
  return t;
}

ExpansionCoefficients epsilon_delta_from_v0(double v0) {
  const PsiTable t = psi_table(v0);
  const double u = 0.25 - v0 * v0;
  auto phi = [&](int n, int m) { return t.phi(n, m); };
  auto theta = [&](int n, int m) { return t.theta(n, m); };

  ExpansionCoefficients out;
  out.eps[0] = 1.0 - u * phi(0, 0);
  out.del[0] = 1.0 - phi(0, 1) + u * theta(0, 0);

  out.eps[1] = 1.0 - 2.0 * u - u * u -
               2.0 * u * (1.0 - 3.0 * u) * phi(0, 0) - 6.0 * u * phi(1, 0);
  out.del[1] = (13.0 - 30.0 * u) / 12.0 -
               u * (13.0 - 6.0 * u) / 12.0 * phi(0, 0) -
               (1.0 - 4.0 * u) * phi(0, 1) - 6.0 * phi(1, 1) +
               2.0 * u * (1.0 - 3.0 * u) * theta(0, 0) +
               6.0 * u * (theta(0, 1) + theta(1, 0));

  out.eps[2] = (6.0 - 64.0 * u + 132.0 * u * u + 193.0 * u * u * u) / 6.0 -
               (2.0 / 3.0) * u * (8.0 - 75.0 * u + 180.0 * u * u) * phi(0, 0) -
               40.0 * u * (1.0 - 3.0 * u) * phi(1, 0) - 120.0 * u * phi(2, 0);
  out.del[2] = (467.0 - 5240.0 * u + 14810.0 * u * u + 300.0 * u * u * u) /
                   360.0 -
               u * (589.0 - 3040.0 * u + 1930.0 * u * u) / 120.0 * phi(0, 0) -
               (3.0 - 58.0 * u + 208.0 * u * u) / 3.0 * phi(0, 1) -
               (5.0 / 3.0) * u * (13.0 - 6.0 * u) * phi(1, 0) -
               20.0 * (1.0 - 4.0 * u) * phi(1, 1) - 120.0 * phi(2, 1) +
               (2.0 / 3.0) * u * (8.0 - 75.0 * u + 180.0 * u * u) *
                   theta(0, 0) +
               40.0 * u * (1.0 - 3.0 * u) * (theta(0, 1) + theta(1, 0)) +
               120.0 * u * theta(1, 1) + 120.0 * u * (theta(0, 2) + theta(2, 0));
  return out;
}

ExpansionCoefficients epsilon_delta(double u) {
  if (!(u >= 0.0 && u <= 0.25)) {
    throw invalid_input("epsilon_delta: u must lie in [0, 1/4]");
  }
  return epsilon_delta_from_v0(0.5 * std::sqrt(1.0 - 4.0 * u));
}

DeltaExpansion delta_short_distance(const GeometryDerived& geom, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw invalid_input("delta_short_distance: mu must be positive and finite");
  }
  const ExpansionCoefficients ed = epsilon_delta(geom.u);
  const double ell = constants().euler_gamma - std::log(0.5 * mu);
  const double a0 = ed.eps[0] * ell + ed.del[0];
  const double a1 = ed.eps[1] * ell + ed.del[1];
  const double a2 = ed.eps[2] * ell + ed.del[2];

  const double mu2 = mu * mu;
  const double inner = a0 + a1 * mu2 / 6.0 + a2 * mu2 * mu2 / 120.0;
  if (!(a0 > 0.0) || !(inner > 0.0)) {
    throw invalid_input(
        "delta_short_distance: expansion argument not positive; "
        "mu is too large for the short-distance form");
  }

  DeltaExpansion out;
  out.mu_warning = mu > 0.5;
  out.pre_mercator = std::log(inner);
  const double r1 = a1 / a0;
  out.mercator = std::log(a0) + r1 * mu2 / 6.0 +
                 (3.0 * a2 / a0 - 5.0 * r1 * r1) * mu2 * mu2 / 360.0;
  return out;
}

GammaConstants gamma_constants() {
  const double g = constants().euler_gamma;
  GammaConstants out;
  out.gamma1 = g + std::log(2.0);
  out.gamma2 = out.gamma1 + 1.0 / 12.0;
  out.gamma3 = 0.5 * (5.0 * out.gamma2 * out.gamma2 -
                      3.0 * out.gamma1 * out.gamma1 -
                      (107.0 / 120.0) * out.gamma1);
  out.gamma4 = 5.0 * out.gamma2 - 3.0 * out.gamma1 - 107.0 / 240.0;
  return out;
}

}  // namespace casimir
