#pragma once

// Brute-force Sidon check over all pairwise sums a_i + a_j (i <= j).
//
// This is the independent oracle for the incremental engine: it never touches
// DifferenceSet and works from sums, not differences.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sidon/types.hpp"

namespace sidon {

enum class ViolationKind {
  // terms[position - 1] <= terms[position - 2], or a zero term.
  non_increasing,
  // a_i + a_j = a_k + a_l with {i, j} != {k, l}.
  repeated_sum,
};

// Positions are 1-based. For repeated_sum, (i, j) and (k, l) are the two index
// pairs with equal sums, each ordered i <= j. For non_increasing only `i` is
// meaningful.
struct Violation {
  ViolationKind kind = ViolationKind::repeated_sum;
  Position i = 0, j = 0, k = 0, l = 0;
  Term a_i = 0, a_j = 0, a_k = 0, a_l = 0;

  std::string describe() const {
    std::ostringstream out;
    if (kind == ViolationKind::non_increasing) {
      out << "term " << i << " (" << a_i << ") is not greater than term " << (i - 1) << " ("
          << a_j << ")";
    } else {
      out << a_i << "+" << a_j << " = " << a_k << "+" << a_l << " (positions " << i << "+" << j
          << " and " << k << "+" << l << ")";
    }
    return out.str();
  }
};

class SidonViolationError : public DomainError {
 public:
  explicit SidonViolationError(Violation v)
      : DomainError("not a Sidon sequence: " + v.describe()), violation_(v) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

namespace detail {

// Position of pair (i, j), i <= j, in the scan order "j ascending, then i
// ascending". A violation reports the earlier pair second.
inline std::uint64_t pair_rank(Position i, Position j) {
  return static_cast<std::uint64_t>(j) * (j - 1) / 2 + (i - 1);
}

}  // namespace detail

// Returns nullopt when `terms` is a Sidon sequence, otherwise the violation
// whose later pair comes first in scan order.
//
// Memory is bounded by processing the sum range in slices of roughly
// `slice_target` sums each, so multi-GB full-scale files still verify.
inline std::optional<Violation> verify_sidon(std::span<const Term> terms,
                                             std::uint64_t slice_target = std::uint64_t{1} << 22) {
  const std::size_t n = terms.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (terms[p] == 0 || (p > 0 && terms[p] <= terms[p - 1])) {
      Violation v;
      v.kind = ViolationKind::non_increasing;
      v.i = p + 1;
      v.a_i = terms[p];
      v.a_j = p > 0 ? terms[p - 1] : 0;
      return v;
    }
  }
  if (n < 2) return std::nullopt;

  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  const std::uint64_t slices = std::max<std::uint64_t>(1, (total_pairs + slice_target - 1) / slice_target);
  const std::uint64_t min_sum = 2 * terms.front();
  const std::uint64_t max_sum = 2 * terms.back();
  const std::uint64_t span_width = (max_sum - min_sum) / slices + 1;

  struct Entry {
    std::uint64_t sum;
    std::uint64_t rank;
    std::uint32_t i, j;
  };

  std::optional<Violation> best;
  std::uint64_t best_rank = ~std::uint64_t{0};
  std::vector<Entry> entries;

  for (std::uint64_t s = 0; s < slices; ++s) {
    const std::uint64_t lo = min_sum + s * span_width;
    const std::uint64_t hi = lo + span_width;  // exclusive
    entries.clear();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        const std::uint64_t sum = terms[i] + terms[j];
        if (sum < lo || sum >= hi) continue;
        entries.push_back({sum, detail::pair_rank(i + 1, j + 1), static_cast<std::uint32_t>(i + 1),
                           static_cast<std::uint32_t>(j + 1)});
      }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.sum != b.sum ? a.sum < b.sum : a.rank < b.rank;
    });
    for (std::size_t e = 1; e < entries.size(); ++e) {
      if (entries[e].sum != entries[e - 1].sum) continue;
      // entries[e] is the later pair of the two earliest pairs with this sum.
      if (entries[e].rank >= best_rank) continue;
      if (e >= 2 && entries[e - 2].sum == entries[e].sum) continue;
      best_rank = entries[e].rank;
      Violation v;
      v.i = entries[e].i;
      v.j = entries[e].j;
      v.k = entries[e - 1].i;
      v.l = entries[e - 1].j;
      v.a_i = terms[v.i - 1];
      v.a_j = terms[v.j - 1];
      v.a_k = terms[v.k - 1];
      v.a_l = terms[v.l - 1];
      best = v;
    }
  }
  return best;
}

inline bool is_sidon(std::span<const Term> terms) { return !verify_sidon(terms).has_value(); }

}  // namespace sidon
