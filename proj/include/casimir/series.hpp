#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

// Every infinite sum in this library is returned together with its
// truncation metadata. Energies use the dimensionless convention
// F = (k_B T / 2) * Phi, i.e. `value` is Phi and callers multiply by
// k_B T / 2 to restore units.
struct SeriesResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double last_term = 0.0;
  bool converged = false;
};

inline constexpr std::int64_t kDefaultMaxTerms = 10'000'000;
inline constexpr double kDefaultTol = 1e-12;

// Kahan-Neumaier compensated accumulator. The slowly converging sums near
// contact accumulate ~1e6 terms; naive summation would lose the digits the
// 1e-12 cross-representation checks rely on.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Sums term(n) for n = n0, n0+1, ... until the plateau criterion
// |term| <= tol * max(|partial sum|, tiny) holds for three consecutive
// terms. The three-in-a-row requirement guards against a single term being
// accidentally small (e.g. a sign pattern or a zero prefactor hitting one
// index). Exceeding the cap throws series_stalled.
template <typename TermFn>
SeriesResult sum_series(TermFn&& term, std::int64_t n0, double tol,
                        std::int64_t max_terms, const char* label) {
  KahanSum acc;
  int plateau = 0;
  std::int64_t used = 0;
  double last = 0.0;
  for (std::int64_t n = n0; used < max_terms; ++n) {
    last = term(n);
    acc.add(last);
    ++used;
    const double scale =
        std::max(std::abs(acc.value()), std::numeric_limits<double>::min());
    if (std::abs(last) <= tol * scale) {
      if (++plateau >= 3) {
        return SeriesResult{acc.value(), used, last, true};
      }
    } else {
      plateau = 0;
    }
  }
  throw series_stalled(std::string(label) + ": no convergence within " +
                       std::to_string(max_terms) + " terms");
}

}  // namespace casimir
