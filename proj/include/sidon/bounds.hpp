#pragma once

// Rigorous two-sided bounds on the reciprocal sum of a Sidon sequence from a
// finite prefix a_1 < ... < a_k:
//
//   sum_{n<=k} 1/a_n  <  S  <  sum_{n<=k} 1/a_n + sum_{n>k} 1/max(a_k + n - k, n(n-1)/2)
//
// The tail splits at n_switch, the first index where the quadratic bound
// overtakes the linear one. Below it the linear terms are summed directly;
// from it on, 1/a_n < 2/(n(n-1)) telescopes to 2/(n_switch - 1).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "sidon/types.hpp"

namespace sidon {

inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// Compensated summation with a tracked bound on every rounding error.
//
// The running total is exactly s + c*, where s and the error terms fed into c
// come from error-free transformations (TwoSum, and an FMA residual for each
// reciprocal). Only the accumulation into c rounds, and `err_` bounds |c* - c|.
class ErrorBoundedSum {
 public:
  static constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

  // Adds a value that is already exact.
  void add(double v) {
    const double t = s_ + v;
    const double z = t - s_;
    const double e = (s_ - (t - z)) + (v - z);
    s_ = t;
    add_to_compensation(e);
  }

  // Adds 1/d for an integer d in [1, 2^53).
  void add_reciprocal(std::uint64_t d) {
    if (d == 0 || d >= (std::uint64_t{1} << 53)) {
      throw std::invalid_argument("add_reciprocal: denominator out of exact double range");
    }
    const double dd = static_cast<double>(d);
    const double r = 1.0 / dd;
    // 1/d = r + residual/d exactly, with the residual representable.
    const double residual = std::fma(-r, dd, 1.0);
    add(r);
    if (residual != 0.0) {
      const double q = residual / dd;
      err_ += 2 * kUnitRoundoff * std::fabs(q) + std::numeric_limits<double>::denorm_min();
      add_to_compensation(q);
    }
  }

  // True iff the accumulated value is known exactly (no rounding happened).
  bool exact() const noexcept { return c_ == 0.0 && err_ == 0.0; }

  // Outward-rounded [lower, upper] enclosing the exact sum.
  std::pair<double, double> enclosure() const {
    if (exact()) return {s_, s_};
    const double t = s_ + c_;
    const double margin = round_up(round_up(err_) + 4 * kUnitRoundoff * std::fabs(t) +
                                   std::numeric_limits<double>::denorm_min());
    return {round_down(round_down(t - margin)), round_up(round_up(t + margin))};
  }

  double estimate() const noexcept { return s_ + c_; }
  double error_bound() const noexcept { return err_; }

 private:
  void add_to_compensation(double e) {
    if (e == 0.0) return;
    const double next = c_ + e;
    if (next != 0.0) err_ += 2 * kUnitRoundoff * std::fabs(next) + std::numeric_limits<double>::denorm_min();
    c_ = next;
  }

  double s_ = 0.0;
  double c_ = 0.0;
  double err_ = 0.0;
};

// [lower, upper] bracketing a reciprocal sum, both ends outward-rounded.
struct ReciprocalSumInterval {
  double lower = 0.0;
  double upper = 0.0;
  // Number of exact terms the interval was computed from.
  std::size_t k = 0;

  double width() const noexcept { return upper - lower; }
  bool contains(double lo, double hi) const noexcept { return lower <= lo && hi <= upper; }
  bool contains(const ReciprocalSumInterval& other) const noexcept {
    return contains(other.lower, other.upper);
  }
};

// Sum of 1/a_n over the given terms, as an enclosure of width far below 1e-12.
inline ReciprocalSumInterval partial_sum(std::span<const Term> terms) {
  if (terms.empty()) throw std::invalid_argument("partial_sum: empty term list");
  ErrorBoundedSum sum;
  Term previous = 0;
  for (const Term a : terms) {
    if (a <= previous) {
      throw std::invalid_argument("partial_sum: terms must be positive and strictly increasing");
    }
    sum.add_reciprocal(a);
    previous = a;
  }
  const auto [lo, hi] = sum.enclosure();
  return {lo, hi, terms.size()};
}

struct TailSplit {
  std::size_t k = 0;
  Term a_k = 0;
  // First n > k with n(n-1)/2 > a_k + n - k.
  std::uint64_t n_switch = 0;

  // Last index summed with the linear bound.
  std::uint64_t middle_end() const noexcept { return n_switch - 1; }
};

// Smallest n > k with n(n-1)/2 > a_k + n - k (strict). At equality both sides
// of the max coincide, so the tie-break does not change any bound.
inline std::uint64_t switch_index(std::size_t k, Term a_k) {
  if (k == 0) throw std::invalid_argument("switch_index: k must be at least 1");
  using u128 = unsigned __int128;
  const u128 kk = k;
  if (static_cast<u128>(a_k) < kk) {
    throw std::invalid_argument("switch_index: a_k < k cannot end a Sidon prefix");
  }
  const auto overtakes = [&](std::uint64_t n) {
    const u128 nn = n;
    return nn * (nn - 1) / 2 > static_cast<u128>(a_k) + nn - kk;
  };
  // n^2 - 3n - 2(a_k - k) > 0  =>  n > (3 + sqrt(9 + 8(a_k - k))) / 2.
  const double disc = 9.0 + 8.0 * static_cast<double>(a_k - k);
  auto n = static_cast<std::uint64_t>((3.0 + std::sqrt(disc)) / 2.0);
  n = std::max<std::uint64_t>(n, k + 1);
  // The float estimate is within a few units; settle it with exact arithmetic.
  while (n > k + 1 && overtakes(n - 1)) --n;
  while (!overtakes(n)) ++n;
  return n;
}

struct TailBound {
  TailSplit split;
  // Upper bound on sum_{n=k+1}^{n_switch-1} 1/(a_k + n - k).
  double middle_upper = 0.0;
  // Upper bound on 2/(n_switch - 1).
  double quadratic_upper = 0.0;
  // Rigorous upper bound on sum_{n>k} 1/a_n.
  double upper = 0.0;
};

// Upper bound for 2/(n - 1), the telescoped sum_{m>=n} 2/(m(m-1)).
inline double quadratic_tail_upper(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("quadratic_tail_upper: n must be at least 2");
  const double q = 2.0 / static_cast<double>(n - 1);
  // Division is correctly rounded; one step up covers it.
  return round_up(q);
}

inline double quadratic_tail_lower(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("quadratic_tail_lower: n must be at least 2");
  return round_down(2.0 / static_cast<double>(n - 1));
}

inline TailBound tail_upper(std::size_t k, Term a_k) {
  TailBound out;
  out.split = {k, a_k, switch_index(k, a_k)};
  ErrorBoundedSum middle;
  const std::uint64_t span = out.split.n_switch - 1 - k;
  for (std::uint64_t m = 1; m <= span; ++m) middle.add_reciprocal(a_k + m);
  out.middle_upper = span == 0 ? 0.0 : middle.enclosure().second;
  out.quadratic_upper = quadratic_tail_upper(out.split.n_switch);
  out.upper = round_up(out.middle_upper + out.quadratic_upper);
  return out;
}

struct BoundReport {
  ReciprocalSumInterval partial;
  TailBound tail;
  ReciprocalSumInterval interval;
};

// Caller guarantees `terms` is a Sidon prefix.
inline BoundReport bound_report(std::span<const Term> terms) {
  BoundReport r;
  r.partial = partial_sum(terms);
  r.tail = tail_upper(terms.size(), terms.back());
  r.interval = {r.partial.lower, round_up(r.partial.upper + r.tail.upper), terms.size()};
  return r;
}

inline ReciprocalSumInterval bound_interval(std::span<const Term> terms) {
  return bound_report(terms).interval;
}

// Published intervals, kept for report output. Decimal strings are exact.
struct PublishedInterval {
  const char* sequence;
  const char* lower;
  const char* upper;
};

// Lewis's historical interval for the Mian-Chowla sequence.
inline constexpr PublishedInterval kLewisMianChowla{"mian-chowla", "2.158435", "2.158677"};
// Zhang's original lower bound for his own sequence.
inline constexpr const char* kZhangOriginalLower = "2.1597";

// Intervals from the first 25 000 terms of each built-in sequence.
inline constexpr PublishedInterval kFullScaleMianChowla{"mian-chowla", "2.15845268", "2.15846062"};
inline constexpr PublishedInterval kFullScaleZhang{"zhang", "2.16007769", "2.16008532"};
inline constexpr PublishedInterval kFullScaleH{"h", "2.16027651", "2.16028417"};

// Middle-sum endpoints (n_switch - 1) at k = 25 000.
inline constexpr std::uint64_t kFullScaleMiddleEndMianChowla = 510096;
inline constexpr std::uint64_t kFullScaleMiddleEndZhang = 510290;
inline constexpr std::uint64_t kFullScaleMiddleEndH = 510140;

}  // namespace sidon
