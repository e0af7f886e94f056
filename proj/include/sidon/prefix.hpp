#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sidon/difference_set.hpp"
#include "sidon/types.hpp"
#include "sidon/verify.hpp"

namespace sidon {

// Why a candidate cannot extend a prefix: x + a_i = a_j + a_k with a_i < a_j
// taken from the prefix (1-based positions) and a_j - a_i = x - a_k.
struct Collision {
  Term x = 0;
  Position i = 0, j = 0, k = 0;
  Term a_i = 0, a_j = 0, a_k = 0;

  std::string describe() const {
    std::ostringstream out;
    out << x << "+" << a_i << " = " << a_j << "+" << a_k << " (positions " << i << ", " << j
        << ", " << k << ")";
    return out.str();
  }
};

class AdmissibilityError : public DomainError {
 public:
  AdmissibilityError(Position position, Collision c)
      : DomainError("value " + std::to_string(c.x) + " at position " + std::to_string(position) +
                    " breaks the Sidon property: " + c.describe()),
        position_(position),
        collision_(c) {}

  // x does not exceed the previous term.
  AdmissibilityError(Position position, Term x, Term previous)
      : DomainError("value " + std::to_string(x) + " at position " + std::to_string(position) +
                    " is not greater than the previous term " + std::to_string(previous)),
        position_(position) {}

  // 1-based position the rejected value would have occupied.
  Position position() const noexcept { return position_; }
  // Empty when the value was rejected for not increasing.
  const std::optional<Collision>& collision() const noexcept { return collision_; }

 private:
  Position position_;
  std::optional<Collision> collision_;
};

// Counters for run reports.
struct EngineStats {
  std::uint64_t candidates_scanned = 0;
  std::uint64_t sparse_probes = 0;
};

// Strictly increasing Sidon terms together with their difference set.
//
// Copies are deep and independent, which is what search rollouts rely on.
class SidonPrefix {
 public:
  SidonPrefix() = default;
  explicit SidonPrefix(std::uint64_t dense_limit) : diffs_(dense_limit) {}

  std::span<const Term> terms() const noexcept { return terms_; }
  const DifferenceSet& diffs() const noexcept { return diffs_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  Term back() const {
    assert(!terms_.empty());
    return terms_.back();
  }
  // 1-based.
  Term at(Position p) const { return terms_.at(p - 1); }

  // True iff appending x keeps the Sidon property. Requires x greater than
  // every term; a smaller x is a caller bug and throws std::invalid_argument.
  //
  // Only differences need checking: for x above every term, 2x = a_i + a_j
  // would need x - a_i = a_j - x < 0.
  bool admits(Term x) const {
    require_increasing(x);
    for (std::size_t t = terms_.size(); t-- > 0;) {
      if (diffs_.contains(x - terms_[t])) return false;
    }
    return true;
  }

  // The collision that stops x from being appended, or nullopt if it is
  // admissible. Only used on error paths.
  std::optional<Collision> find_collision(Term x) const {
    require_increasing(x);
    for (std::size_t k = terms_.size(); k-- > 0;) {
      const Term d = x - terms_[k];
      if (!diffs_.contains(d)) continue;
      // Locate a_j - a_i = d with a two-pointer sweep over the sorted terms.
      std::size_t lo = 0, hi = 0;
      while (hi < terms_.size()) {
        const Term gap = terms_[hi] - terms_[lo];
        if (gap == d && lo != hi) {
          return Collision{x, lo + 1, hi + 1, k + 1, terms_[lo], terms_[hi], terms_[k]};
        }
        if (gap < d || lo == hi) {
          ++hi;
        } else {
          ++lo;
        }
      }
      assert(false && "difference set out of sync with terms");
    }
    return std::nullopt;
  }

  // Appends x after validating it. Throws AdmissibilityError naming the
  // colliding triple when x is inadmissible or not increasing.
  void append(Term x) {
    if (x == 0 || (!terms_.empty() && x <= terms_.back())) {
      throw AdmissibilityError(terms_.size() + 1, x, terms_.empty() ? 0 : terms_.back());
    }
    if (!admits(x)) throw AdmissibilityError(terms_.size() + 1, *find_collision(x));
    append_unchecked(x);
  }

  // Appends x known to be admissible (e.g. straight from next_greedy).
  void append_unchecked(Term x) {
    for (const Term a : terms_) {
      [[maybe_unused]] const bool fresh = diffs_.insert(x - a);
      assert(fresh);
    }
    terms_.push_back(x);
  }

  // Smallest admissible value above the last term. No gap bound is assumed;
  // the scan terminates because 2 * back() is always admissible (each
  // x - a_i is then at least back(), larger than any existing difference).
  //
  // Candidates are sieved in blocks of 64-bit windows. Within a block, terms
  // are visited largest first: they produce the smallest differences, which
  // are the densest and settle most windows early. Visiting one term across
  // the whole block keeps bitset reads sequential.
  Term next_greedy(EngineStats* stats = nullptr) const {
    assert(!terms_.empty());
    const std::size_t n = terms_.size();
    const Term last_gap = n >= 2 ? terms_[n - 1] - terms_[n - 2] : 1;
    const std::size_t block = std::clamp<std::size_t>(std::bit_ceil(last_gap) / 64, 1, kMaxBlock);

    std::array<std::uint64_t, kMaxBlock> blocked{};
    std::array<std::uint32_t, kMaxBlock> active{};
    Term base = terms_.back() + 1;
    for (;;) {
      std::size_t live = block;
      for (std::size_t w = 0; w < block; ++w) {
        blocked[w] = 0;
        active[w] = static_cast<std::uint32_t>(w);
      }
      // Terms [0, t) still need checking for every window.
      std::size_t t = n;
      while (t > 0 && live > 0) {
        const Term lo = base - terms_[t - 1];
        if (!diffs_.window_in_dense(lo + 64 * (block - 1))) break;
        std::size_t kept = 0;
        for (std::size_t a = 0; a < live; ++a) {
          const std::uint32_t w = active[a];
          blocked[w] |= diffs_.window(lo + 64 * w);
          if (blocked[w] != ~std::uint64_t{0}) active[kept++] = w;
        }
        live = kept;
        --t;
      }
      if (stats != nullptr) stats->candidates_scanned += 64 * block;
      for (std::size_t w = 0; w < block; ++w) {
        std::uint64_t open = ~blocked[w];
        while (open != 0) {
          const unsigned j = static_cast<unsigned>(std::countr_zero(open));
          open &= open - 1;
          const Term x = base + 64 * w + j;
          if (t == 0) return x;
          bool ok = true;
          for (std::size_t r = t; r-- > 0;) {
            if (r >= kPrefetchFar) diffs_.prefetch_bucket(x - terms_[r - kPrefetchFar]);
            if (r >= kPrefetchNear) diffs_.prefetch_entries(x - terms_[r - kPrefetchNear]);
            if (stats != nullptr) ++stats->sparse_probes;
            if (diffs_.contains(x - terms_[r])) {
              ok = false;
              break;
            }
          }
          if (ok) return x;
        }
      }
      base += 64 * block;
    }
  }

  // Smallest `count` admissible values above the last term, ascending.
  std::vector<Term> admissible_values(std::size_t count) const {
    std::vector<Term> out;
    out.reserve(count);
    Term x = terms_.back();
    while (out.size() < count) {
      x = next_after(x);
      out.push_back(x);
    }
    return out;
  }

  // Rebuilds a prefix from stored terms. Throws SidonViolationError when the
  // oracle rejects them.
  static SidonPrefix rebuild(std::span<const Term> terms,
                             std::uint64_t dense_limit = DifferenceSet::kDefaultDenseLimit) {
    if (auto v = verify_sidon(terms)) throw SidonViolationError(*v);
    SidonPrefix prefix(dense_limit);
    prefix.terms_.reserve(terms.size());
    for (const Term x : terms) prefix.append_unchecked(x);
    return prefix;
  }

 private:
  void require_increasing(Term x) const {
    if (!terms_.empty() && x <= terms_.back()) {
      throw std::invalid_argument("candidate " + std::to_string(x) +
                                  " is not greater than the last term " +
                                  std::to_string(terms_.back()));
    }
  }

  // Smallest admissible value strictly above `floor` (floor >= back()).
  Term next_after(Term floor) const {
    for (Term x = floor + 1;; ++x) {
      if (admits(x)) return x;
    }
  }

  static constexpr std::size_t kMaxBlock = 1024;
  // Probe distances for the sparse-tier prefetches in next_greedy.
  static constexpr std::size_t kPrefetchFar = 16;
  static constexpr std::size_t kPrefetchNear = 8;

  std::vector<Term> terms_;
  DifferenceSet diffs_;
};

}  // namespace sidon
