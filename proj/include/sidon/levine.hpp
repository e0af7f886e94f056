#pragma once

// Levine's upper bound on the distinct distance constant:
//
//   sum_{n>=0} 1 / (1 + n(n+1)/2) = (2 pi / sqrt 7) tanh(sqrt(7) pi / 2)
//
// evaluated twice: from the closed form in double precision, and as a
// rigorous bracket from a truncated series plus a telescoping remainder.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "sidon/bounds.hpp"

namespace sidon {

struct LevineBound {
  double closed_form = 0.0;
  // The true series value lies in [series_lower, series_upper].
  double series_lower = 0.0;
  double series_upper = 0.0;
  std::uint64_t series_terms = 0;

  double bracket_width() const noexcept { return series_upper - series_lower; }
  bool closed_form_bracketed() const noexcept {
    return series_lower <= closed_form && closed_form <= series_upper;
  }
};

inline double levine_closed_form() {
  const double root7 = std::sqrt(7.0);
  return 2.0 * std::numbers::pi / root7 * std::tanh(root7 * std::numbers::pi / 2.0);
}

// Series term n: 1 / (1 + n(n+1)/2).
inline std::uint64_t levine_denominator(std::uint64_t n) { return 1 + n * (n + 1) / 2; }

// Sums terms n = 0 .. terms-1 exactly enclosed, then brackets the remainder:
// for n >= 1, 2/((n+1)(n+2)) < 1/(1 + n(n+1)/2) < 2/(n(n+1)), and those
// telescope from n = N to 2/(N+1) and 2/N.
inline LevineBound levine_bound(std::uint64_t terms = 1'000'000) {
  if (terms < 1 || terms > (std::uint64_t{1} << 26)) {
    throw std::invalid_argument("levine_bound: series term count out of range");
  }
  ErrorBoundedSum sum;
  for (std::uint64_t n = 0; n < terms; ++n) sum.add_reciprocal(levine_denominator(n));
  const auto [lo, hi] = sum.enclosure();
  const double n = static_cast<double>(terms);
  const double rem_lo = round_down(2.0 / (n + 1.0));
  const double rem_hi = round_up(2.0 / n);
  LevineBound out;
  out.closed_form = levine_closed_form();
  out.series_lower = round_down(lo + rem_lo);
  out.series_upper = round_up(hi + rem_hi);
  out.series_terms = terms;
  return out;
}

}  // namespace sidon
