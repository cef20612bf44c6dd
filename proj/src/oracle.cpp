#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "casimir/errors.hpp"
#include "casimir/monopole.hpp"
#include "casimir/series.hpp"

namespace casimir {

namespace {

constexpr int kEnumerationCap = 6;  // 2^{12} - 1 = 4095 cut-sets
constexpr int kCyclicCap = 8;

void require_two_spheres(const GeometryDerived& geom, const char* who) {
  if (!(geom.rho1 > 0.0 && geom.rho2 > 0.0)) {
    throw invalid_input(std::string(who) +
                        ": requires two finite spheres (u > 0)");
  }
}

// Continuant determinant of a unit-diagonal tridiagonal matrix whose
// off-diagonal entries are weight(i), i = 0..n-2 (already squared-signed).
template <typename WeightFn>
double continuant(int n, WeightFn&& weight) {
  double dm2 = 1.0;  // D_0
  double dm1 = 1.0;  // D_1
  for (int k = 2; k <= n; ++k) {
    const double e = weight(k - 2);
    const double dk = dm1 - e * e * dm2;
    dm2 = dm1;
    dm1 = dk;
  }
  return dm1;
}

// Polynomial helper: acc -= scalar * t * p, i.e. acc[i+1] -= scalar * p[i].
void sub_shifted(std::vector<double>& acc, double scalar,
                 const std::vector<double>& p) {
  if (acc.size() < p.size() + 1) acc.resize(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc[i + 1] -= scalar * p[i];
  }
}

struct HPolynomials {
  // h1[n], h2[n] for n = 1..2r; index 0 unused.
  std::vector<std::vector<double>> h1;
  std::vector<std::vector<double>> h2;
  std::vector<double> a;  // a[n] = 1/det of the n-block starting on sphere 1
  std::vector<double> b;  // b[n] = same starting on sphere 2
};

HPolynomials build_h_polynomials(int r, const GeometryDerived& geom) {
  const int nmax = 2 * r;
  HPolynomials H;
  H.a.assign(nmax + 1, 0.0);
  H.b.assign(nmax + 1, 0.0);
  for (int n = 1; n <= nmax; ++n) {
    std::vector<int> plus(static_cast<std::size_t>(n - 1), 1);
    H.a[n] = 1.0 / block_determinant_direct(n, 1, plus, geom);
    H.b[n] = 1.0 / block_determinant_direct(n, 2, plus, geom);
  }

  H.h1.assign(nmax + 1, {});
  H.h2.assign(nmax + 1, {});
  H.h1[1] = {0.0, H.a[1]};
  H.h2[1] = {0.0, H.b[1]};
  for (int n = 2; n <= nmax; ++n) {
    std::vector<double> p1{0.0, H.a[n]};
    std::vector<double> p2{0.0, H.b[n]};
    if (n % 2 == 0) {
      const int m = n / 2;
      // Even length: peel an even-length leading block (same sphere) or an
      // odd-length one (switching spheres).
      for (int j = 1; j <= m - 1; ++j) {
        sub_shifted(p1, H.a[2 * j], H.h1[2 * (m - j)]);
        sub_shifted(p2, H.b[2 * j], H.h2[2 * (m - j)]);
      }
      for (int j = 1; j <= m; ++j) {
        sub_shifted(p1, H.a[2 * j - 1], H.h2[2 * (m - j) + 1]);
        sub_shifted(p2, H.b[2 * j - 1], H.h1[2 * (m - j) + 1]);
      }
    } else {
      const int m = (n - 1) / 2;
      for (int j = 1; j <= m; ++j) {
        sub_shifted(p1, H.a[2 * j], H.h1[2 * (m - j) + 1]);
        sub_shifted(p2, H.b[2 * j], H.h2[2 * (m - j) + 1]);
      }
      for (int j = 0; j <= m - 1; ++j) {
        sub_shifted(p1, H.a[2 * j + 1], H.h2[2 * (m - j)]);
        sub_shifted(p2, H.b[2 * j + 1], H.h1[2 * (m - j)]);
      }
    }
    H.h1[n] = std::move(p1);
    H.h2[n] = std::move(p2);
  }
  return H;
}

// Shared enumeration walk: calls visit(k, inverse_determinant) for every
// non-empty cut-set of the 2r-cycle.
template <typename Visit>
void enumerate_cut_sets(int r, const GeometryDerived& geom, Visit&& visit) {
  const int N = 2 * r;
  const double w[2] = {geom.rho1, geom.rho2};  // edge i carries w[i % 2]
  std::vector<int> cuts;
  cuts.reserve(N);
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    cuts.clear();
    for (int i = 0; i < N; ++i) {
      if (mask & (1u << i)) cuts.push_back(i);
    }
    const int k = static_cast<int>(cuts.size());
    double det = 1.0;
    for (int j = 0; j < k; ++j) {
      const int start = cuts[j] + 1;  // first node of the block
      const int size =
          (j + 1 < k) ? cuts[j + 1] - cuts[j] : N - cuts[k - 1] + cuts[0];
      det *= continuant(size, [&](int i) { return w[(start + i) % N % 2]; });
    }
    visit(k, 1.0 / det);
  }
}

}  // namespace

double block_determinant_direct(int n, int start_color,
                                const std::vector<int>& signs,
                                const GeometryDerived& geom) {
  if (n < 1) throw invalid_input("block_determinant_direct: n must be >= 1");
  if (start_color != 1 && start_color != 2) {
    throw invalid_input("block_determinant_direct: start_color must be 1 or 2");
  }
  if (static_cast<int>(signs.size()) != n - 1) {
    throw invalid_input("block_determinant_direct: signs must have length n-1");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw invalid_input("block_determinant_direct: signs must be +-1");
    }
  }
  const double first = (start_color == 1) ? geom.rho1 : geom.rho2;
  const double other = (start_color == 1) ? geom.rho2 : geom.rho1;
  return continuant(n, [&](int i) {
    const double wi = (i % 2 == 0) ? first : other;
    return signs[static_cast<std::size_t>(i)] * wi;
  });
}

double cyclic_matrix_determinant_signed(int r, const std::vector<int>& signs,
                                        const GeometryDerived& geom) {
  if (r < 1 || r > kCyclicCap) {
    throw invalid_input("cyclic_matrix_determinant: r must lie in [1, " +
                        std::to_string(kCyclicCap) + "]");
  }
  const int N = 2 * r;
  if (static_cast<int>(signs.size()) != N) {
    throw invalid_input("cyclic_matrix_determinant: signs must have length 2r");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw invalid_input("cyclic_matrix_determinant: signs must be +-1");
    }
  }
  const double w[2] = {geom.rho1, geom.rho2};
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N, N);
  // Edge i couples nodes i and i+1 (mod N); for r = 1 both edges land on
  // the same matrix element and add up.
  for (int i = 0; i < N; ++i) {
    const int a = i;
    const int bnode = (i + 1) % N;
    const double coupling = signs[static_cast<std::size_t>(i)] * w[i % 2];
    M(a, bnode) += coupling;
    M(bnode, a) += coupling;
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
}

double cyclic_matrix_determinant(int r, SignClass sign_class,
                                 const GeometryDerived& geom) {
  std::vector<int> signs(static_cast<std::size_t>(2 * r), 1);
  if (sign_class == SignClass::minus) signs[0] = -1;
  return cyclic_matrix_determinant_signed(r, signs, geom);
}

double delta_r_enumeration(int r, const GeometryDerived& geom) {
  if (r < 1 || r > kEnumerationCap) {
    throw invalid_input("delta_r_enumeration: r must lie in [1, " +
                        std::to_string(kEnumerationCap) + "]");
  }
  require_two_spheres(geom, "delta_r_enumeration");
  KahanSum total;
  enumerate_cut_sets(r, geom, [&](int k, double inv_det) {
    total.add((k % 2 == 0) ? inv_det : -inv_det);
  });
  return std::pow(geom.rho1 * geom.rho2, r) * total.value();
}

TPolynomial h_polynomial_sum(int r, const GeometryDerived& geom) {
  if (r < 1) throw invalid_input("h_polynomial_sum: r must be >= 1");
  require_two_spheres(geom, "h_polynomial_sum");
  const HPolynomials H = build_h_polynomials(r, geom);
  const auto& h1 = H.h1[2 * r];
  const auto& h2 = H.h2[2 * r];
  TPolynomial p;
  p.coefficients.assign(std::max(h1.size(), h2.size()), 0.0);
  for (std::size_t i = 0; i < h1.size(); ++i) p.coefficients[i] += h1[i];
  for (std::size_t i = 0; i < h2.size(); ++i) p.coefficients[i] += h2[i];
  return p;
}

double delta_r_recursion(int r, const GeometryDerived& geom) {
  const TPolynomial p = h_polynomial_sum(r, geom);
  // Exact integral of (h(t))/t over [0,1]: sum_k c_k / k.
  KahanSum integral;
  for (std::size_t k = 1; k < p.coefficients.size(); ++k) {
    integral.add(p.coefficients[k] / static_cast<double>(k));
  }
  return -std::pow(geom.rho1 * geom.rho2, r) * static_cast<double>(r) *
         integral.value();
}

std::vector<PartitionTerm> partition_terms(int r) {
  if (r < 1 || r > kEnumerationCap) {
    throw invalid_input("partition_terms: r must lie in [1, " +
                        std::to_string(kEnumerationCap) + "]");
  }
  const int N = 2 * r;
  using Pattern = std::vector<std::pair<int, int>>;  // (size, start_color)
  std::map<Pattern, std::int64_t> counts;

  std::vector<int> cuts;
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    cuts.clear();
    for (int i = 0; i < N; ++i) {
      if (mask & (1u << i)) cuts.push_back(i);
    }
    const int k = static_cast<int>(cuts.size());
    Pattern pat;
    pat.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      const int start = cuts[j] + 1;
      const int size =
          (j + 1 < k) ? cuts[j + 1] - cuts[j] : N - cuts[k - 1] + cuts[0];
      pat.emplace_back(size, (start % 2) + 1);
    }
    // Canonical representative: lexicographically smallest cyclic rotation.
    Pattern canon = pat;
    Pattern rotated = pat;
    for (int shift = 1; shift < k; ++shift) {
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      if (rotated < canon) canon = rotated;
    }
    ++counts[canon];
  }

  std::vector<PartitionTerm> result;
  result.reserve(counts.size());
  for (const auto& [pat, mult] : counts) {
    PartitionTerm term;
    term.k = static_cast<int>(pat.size());
    term.multiplicity = mult;
    for (const auto& [size, color] : pat) {
      term.blocks.push_back(PartitionBlock{size, color});
    }
    result.push_back(std::move(term));
  }
  std::stable_sort(result.begin(), result.end(),
                   [](const PartitionTerm& x, const PartitionTerm& y) {
                     return x.k < y.k;
                   });
  return result;
}

std::vector<RKAggregate> per_k_aggregates(int r, const GeometryDerived& geom) {
  if (r < 1 || r > kEnumerationCap) {
    throw invalid_input("per_k_aggregates: r must lie in [1, " +
                        std::to_string(kEnumerationCap) + "]");
  }
  require_two_spheres(geom, "per_k_aggregates");
  const int N = 2 * r;
  std::vector<KahanSum> sums(static_cast<std::size_t>(N) + 1);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(N) + 1, 0);
  enumerate_cut_sets(r, geom, [&](int k, double inv_det) {
    sums[static_cast<std::size_t>(k)].add(inv_det);
    ++counts[static_cast<std::size_t>(k)];
  });

  const TPolynomial p = h_polynomial_sum(r, geom);
  std::vector<RKAggregate> rows;
  rows.reserve(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) {
    RKAggregate row;
    row.r = r;
    row.k = k;
    row.count = counts[static_cast<std::size_t>(k)];
    row.enumeration_sum = sums[static_cast<std::size_t>(k)].value();
    const double ck = (k < static_cast<int>(p.coefficients.size()))
                          ? p.coefficients[static_cast<std::size_t>(k)]
                          : 0.0;
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    row.recursion_equivalent = sign * static_cast<double>(r) * ck /
                               static_cast<double>(k);
    rows.push_back(row);
  }
  return rows;
}

double generating_function_max_residual(const GeometryDerived& geom) {
  // Tight inner tolerance: the residual itself is gated at ~1e-12.
  const MonopoleSeries ms = monopole_series(geom, 1e-14);
  const double Ae = ms.Ae.value;
  const double Be = ms.Be.value;
  const double AoBo = ms.Ao.value * ms.Ao.value;

  auto D = [&](std::complex<double> t) {
    return (1.0 + t * Ae) * (1.0 + t * Be) - t * t * AoBo;
  };
  auto explicit_ratio = [&](double t) {
    // Numerator of the assembled generating-function expression equals the
    // t-derivative of the denominator D(t).
    return (Ae + Be + 2.0 * t * (Ae * Be - AoBo)) /
           std::real(D(std::complex<double>(t, 0.0)));
  };

  double worst = 0.0;
  const double h = 1e-100;
  for (double t : {0.25, 0.5, 1.0}) {
    // Complex-step derivative of log D: exact to machine precision, since
    // the imaginary part carries the derivative with no cancellation.
    const double deriv =
        std::imag(std::log(D(std::complex<double>(t, h)))) / h;
    const double ref = explicit_ratio(t);
    const double rel = std::abs(deriv - ref) /
                       std::max(std::abs(ref), 1e-300);
    worst = std::max(worst, rel);
  }
  return worst;
}

bool generating_function_check(const GeometryDerived& geom, double tol) {
  return generating_function_max_residual(geom) <= tol;
}

}  // namespace casimir
