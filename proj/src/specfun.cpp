#include "casimir/specfun.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr int kBernoulliTableSize = 129;  // B_0 .. B_128

// Exact table of B_0..B_128 (convention B_1 = -1/2) built once via the
// defining recurrence sum_{j<=n} C(n+1,j) B_j = 0.
const std::vector<BigRational>& bernoulli_table() {
  static const std::vector<BigRational> table = [] {
    std::vector<BigRational> b(kBernoulliTableSize);
    b[0] = 1;
    for (int n = 1; n < kBernoulliTableSize; ++n) {
      // C(n+1, j) running binomial; B_n = -(1/C(n+1,n)) sum_{j<n} C(n+1,j) B_j
      BigRational acc = 0;
      BigInt binom = 1;  // C(n+1, 0)
      for (int j = 0; j < n; ++j) {
        acc += BigRational(binom) * b[j];
        binom = binom * (n + 1 - j) / (j + 1);  // -> C(n+1, j+1)
      }
      b[n] = -acc / BigRational(binom);  // binom == C(n+1, n) == n+1
    }
    return b;
  }();
  return table;
}

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Asymptotic evaluation of psi^{(n)}(x) for large x (x >= 17 suffices for
// full double accuracy with 12 Bernoulli terms).
double polygamma_asymptotic(int n, double x) {
  const auto& bern = bernoulli_table();
  constexpr int kTerms = 12;
  if (n == 0) {
    double s = std::log(x) - 0.5 / x;
    double x2 = x * x;
    double xp = x2;  // x^{2j}
    for (int j = 1; j <= kTerms; ++j) {
      s -= bern[2 * j].convert_to<double>() / (2.0 * j * xp);
      xp *= x2;
    }
    return s;
  }
  // psi^{(n)}(x) ~ (-1)^{n-1} [ (n-1)!/x^n + n!/(2 x^{n+1})
  //                + sum_j B_{2j} (2j+n-1)! / ((2j)! x^{2j+n}) ]
  const double xn = std::pow(x, n);
  double s = factorial_d(n - 1) / xn + factorial_d(n) / (2.0 * xn * x);
  double x2 = x * x;
  double xp = xn * x2;  // x^{2j+n}
  for (int j = 1; j <= kTerms; ++j) {
    s += bern[2 * j].convert_to<double>() *
         (factorial_d(2 * j + n - 1) / factorial_d(2 * j)) / xp;
    xp *= x2;
  }
  return (n % 2 == 1) ? s : -s;
}

}  // namespace

const Constants& constants() {
  static const Constants c{
      1.2020569031595942854,   // zeta(3)
      0.24875447703378426255,  // log A = 1/12 - zeta'(-1)
      0.57721566490153286061,  // gamma
  };
  return c;
}

double chebyshev_U(int n, const GeometryDerived& geom) {
  if (n < 0) throw invalid_input("chebyshev_U: n must be >= 0");
  if (n == 0) return 1.0;
  return std::sinh((n + 1) * geom.mu) / std::sinh(geom.mu);
}

double chebyshev_U_recurrence(int n, double y) {
  if (n < 0) throw invalid_input("chebyshev_U_recurrence: n must be >= 0");
  double um = 1.0;       // U_0
  if (n == 0) return um;
  double uc = 2.0 * y;   // U_1
  for (int k = 1; k < n; ++k) {
    const double un = 2.0 * y * uc - um;
    um = uc;
    uc = un;
  }
  return uc;
}

double chebyshev_inverse_U(int n, const GeometryDerived& geom) {
  if (n < 0) throw invalid_input("chebyshev_inverse_U: n must be >= 0");
  const double mu = geom.mu;
  const double zn1 = std::exp(-(n + 1.0) * mu);
  const double denom = -std::expm1(-2.0 * (n + 1.0) * mu);  // 1 - Z^{2(n+1)}
  return 2.0 * std::sinh(mu) * zn1 / denom;
}

double chebyshev_inverse_U_shifted(int n, double ratio,
                                   const GeometryDerived& geom) {
  if (n < 1) throw invalid_input("chebyshev_inverse_U_shifted: n must be >= 1");
  if (!(ratio >= 0.0)) {
    throw invalid_input("chebyshev_inverse_U_shifted: ratio must be >= 0");
  }
  if (std::isinf(ratio)) return 0.0;  // U_{n-1} term dominates: limit is 0
  const double mu = geom.mu;
  const double Z = geom.Z;
  const double onepr = 1.0 + ratio * Z;
  const double g2 = (Z * Z + ratio * Z) / onepr;
  const double zn1 = std::exp(-(n + 1.0) * mu);
  const double denom = onepr * (1.0 - g2 * std::exp(-2.0 * n * mu));
  return 2.0 * std::sinh(mu) * zn1 / denom;
}

RationalCoefficient bernoulli_number(int k) {
  if (k < 0) throw invalid_input("bernoulli_number: k must be >= 0");
  if (k >= kBernoulliTableSize) {
    throw invalid_input("bernoulli_number: k = " + std::to_string(k) +
                        " beyond precomputed table (max " +
                        std::to_string(kBernoulliTableSize - 1) + ")");
  }
  return RationalCoefficient{bernoulli_table()[k]};
}

double bernoulli_poly(int n, double c) {
  if (n < 0) throw invalid_input("bernoulli_poly: n must be >= 0");
  // B_n(c) = sum_k C(n,k) B_k c^{n-k}, binomials exact, powers in double.
  double s = 0.0;
  BigInt binom = 1;
  for (int k = 0; k <= n; ++k) {
    const BigRational term = BigRational(binom) * bernoulli_table()[k];
    s += term.convert_to<double>() * std::pow(c, n - k);
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

RationalCoefficient stirling2(int n, int k) {
  if (n < 0 || k < 0) throw invalid_input("stirling2: indices must be >= 0");
  if (k > n) return RationalCoefficient{0};
  // Rolling-row DP on S(n,k) = k S(n-1,k) + S(n-1,k-1), exact integers.
  std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
    }
    row[0] = 0;  // S(i,0) = 0 for i >= 1
  }
  return RationalCoefficient{BigRational(row[k])};
}

double bell_partial_ordinary(int n, int k, const std::vector<double>& coeffs) {
  if (n < 0 || k < 0) {
    throw invalid_input("bell_partial_ordinary: indices must be >= 0");
  }
  if (k == 0) return n == 0 ? 1.0 : 0.0;
  if (k > n) return 0.0;  // (x * ...)^k has minimum degree k
  if (static_cast<int>(coeffs.size()) < n) {
    throw invalid_input("bell_partial_ordinary: coeffs must cover indices 1..n");
  }
  // p(x) = sum_{i=1}^{n} c_i x^i; accumulate p^k truncated at degree n.
  std::vector<double> base(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) base[i] = coeffs[i - 1];
  std::vector<double> acc = base;
  std::vector<double> next(n + 1, 0.0);
  for (int step = 1; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (acc[i] == 0.0) continue;
      for (int j = 1; i + j <= n; ++j) {
        next[i + j] += acc[i] * base[j];
      }
    }
    acc.swap(next);
  }
  return acc[n];
}

double polygamma(int n, double x) {
  if (n < 0) throw invalid_input("polygamma: n must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw invalid_input("polygamma: x must be > 0 and finite");
  }
  // Lift the argument above 17, where the Bernoulli asymptotic series
  // reaches full double accuracy, via
  // psi^{(n)}(x) = psi^{(n)}(x+1) - (-1)^n n! / x^{n+1}.
  const double nfac = factorial_d(n);
  const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
  double shift = 0.0;
  double xs = x;
  while (xs < 17.0) {
    shift -= sign_n * nfac / std::pow(xs, n + 1);
    xs += 1.0;
  }
  return polygamma_asymptotic(n, xs) + shift;
}

}  // namespace casimir
