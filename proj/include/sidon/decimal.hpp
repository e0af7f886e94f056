#pragma once

// Directed-rounded decimal rendering of doubles.
//
// glibc prints the exact binary value when asked for enough digits, so
// rounding is done on the exact expansion rather than on x * 10^digits.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sidon {

enum class RoundDir { down, up };

namespace detail {

// Exact decimal expansion of a finite double, e.g. "2.158452680000000142...".
inline std::string exact_decimal(double x) {
  // 1074 fractional digits cover every subnormal; 1100 leaves slack.
  std::string buf(1500, '\0');
  const int len = std::snprintf(buf.data(), buf.size(), "%.1100f", x);
  buf.resize(static_cast<std::size_t>(len));
  return buf;
}

// Adds one unit in the last place to a decimal string of digits, '-' and '.'.
inline void increment_last_digit(std::string& s) {
  std::size_t p = s.size();
  while (p-- > 0) {
    if (s[p] == '.') continue;
    if (s[p] == '-') break;
    if (s[p] != '9') {
      ++s[p];
      return;
    }
    s[p] = '0';
  }
  s.insert(p + 1, "1");
}

}  // namespace detail

// Renders x with exactly `digits` fractional digits, rounded toward -inf
// (down) or +inf (up).
inline std::string format_directed(double x, int digits, RoundDir dir) {
  if (!std::isfinite(x)) throw std::invalid_argument("format_directed: non-finite value");
  if (digits < 0 || digits > 60) throw std::invalid_argument("format_directed: digits out of range");
  const bool negative = std::signbit(x) && x != 0.0;
  std::string full = detail::exact_decimal(std::fabs(x));
  const std::size_t dot = full.find('.');
  std::string kept = full.substr(0, digits == 0 ? dot : dot + 1 + static_cast<std::size_t>(digits));
  bool dropped_nonzero = false;
  for (std::size_t p = kept.size(); p < full.size(); ++p) {
    if (full[p] != '0' && full[p] != '.') dropped_nonzero = true;
  }
  // Truncation moves |x| toward zero; away from zero is needed when the
  // direction and the sign disagree.
  const bool away = (dir == RoundDir::up) != negative;
  if (dropped_nonzero && away) detail::increment_last_digit(kept);
  bool all_zero = true;
  for (char c : kept) all_zero = all_zero && (c == '0' || c == '.');
  return (negative && !all_zero) ? "-" + kept : kept;
}

inline std::string format_down(double x, int digits = 8) {
  return format_directed(x, digits, RoundDir::down);
}
inline std::string format_up(double x, int digits = 8) {
  return format_directed(x, digits, RoundDir::up);
}

// x rounded to `digits` fractional digits in direction `dir`, as an integer
// count of 10^-digits units. Exact; digits <= 15 keeps it in range for |x| < 9e3.
inline std::int64_t scaled_directed(double x, int digits, RoundDir dir) {
  std::string s = format_directed(x, digits, dir);
  std::string compact;
  for (char c : s) {
    if (c != '.') compact.push_back(c);
  }
  return std::stoll(compact);
}

// Parses a plain decimal literal ("2.15845268") into 10^-digits units. The
// literal must have at most `digits` fractional digits.
inline std::int64_t parse_scaled(const std::string& text, int digits) {
  const std::size_t dot = text.find('.');
  std::string whole = text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (frac.size() > static_cast<std::size_t>(digits)) {
    throw std::invalid_argument("parse_scaled: '" + text + "' has too many fractional digits");
  }
  frac.append(static_cast<std::size_t>(digits) - frac.size(), '0');
  return std::stoll(whole + frac);
}

}  // namespace sidon
