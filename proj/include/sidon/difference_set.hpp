#pragma once

// Exact set of positive pairwise differences of a Sidon prefix.
//
// Two tiers share one membership contract:
//   * a dense bitset for differences below `dense_limit`, grown lazily as
//     larger differences arrive;
//   * sparse buckets for everything above, keyed by d >> 16 and holding the
//     low 16 bits of each member.
//
// At 25 000 terms there are ~3.1e8 differences spread up to ~1.3e11, far too
// many for a flat bitset in a few GB. Small differences are dense and are the
// ones that reject most greedy candidates, so the bitset tier also serves
// 64-candidate window queries for the sieve in `next_greedy`.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "sidon/types.hpp"

namespace sidon {

class DifferenceSet {
 public:
  static constexpr std::uint64_t kBucketBits = 16;
  static constexpr std::uint64_t kBucketSpan = std::uint64_t{1} << kBucketBits;

  // 2^32 bits = 512 MiB at most; the bitset only grows as far as the largest
  // difference actually inserted.
  static constexpr std::uint64_t kDefaultDenseLimit = std::uint64_t{1} << 32;

  explicit DifferenceSet(std::uint64_t dense_limit = kDefaultDenseLimit)
      : dense_limit_(round_up_to_bucket(dense_limit)) {}

  // Differences in [1, dense_limit()) live in the bitset tier.
  std::uint64_t dense_limit() const noexcept { return dense_limit_; }

  std::uint64_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(std::uint64_t d) const noexcept {
    if (d < dense_limit_) {
      const std::uint64_t w = d >> 6;
      return w < dense_.size() && ((dense_[w] >> (d & 63)) & 1u) != 0;
    }
    const std::uint64_t b = d >> kBucketBits;
    if (b >= sparse_.size()) return false;
    const auto low = static_cast<std::uint16_t>(d & (kBucketSpan - 1));
    return bucket_contains(sparse_[b], low);
  }

  // Inserts d (d >= 1). Returns false, leaving the set unchanged, when d is
  // already present.
  bool insert(std::uint64_t d) {
    assert(d >= 1);
    if (contains(d)) return false;
    if (d < dense_limit_) {
      const std::uint64_t w = d >> 6;
      if (w >= dense_.size()) {
        // Geometric growth, capped at the tier boundary.
        std::uint64_t grown = std::max<std::uint64_t>(w + 1, dense_.size() * 2);
        grown = std::min<std::uint64_t>(grown, dense_limit_ >> 6);
        dense_.resize(grown, 0);
      }
      dense_[w] |= std::uint64_t{1} << (d & 63);
    } else {
      const std::uint64_t b = d >> kBucketBits;
      if (b >= sparse_.size()) sparse_.resize(b + 1);
      sparse_[b].push_back(static_cast<std::uint16_t>(d & (kBucketSpan - 1)));
    }
    ++count_;
    return true;
  }

  // Cache hints for an upcoming contains(d) on the sparse tier: first the
  // bucket header, then (once the header is likely cached) the bucket data.
  void prefetch_bucket(std::uint64_t d) const noexcept {
    const std::uint64_t b = d >> kBucketBits;
    if (d >= dense_limit_ && b < sparse_.size()) __builtin_prefetch(&sparse_[b]);
  }
  void prefetch_entries(std::uint64_t d) const noexcept {
    const std::uint64_t b = d >> kBucketBits;
    if (d >= dense_limit_ && b < sparse_.size()) {
      const char* p = reinterpret_cast<const char*>(sparse_[b].data());
      __builtin_prefetch(p);
      __builtin_prefetch(p + 64);
    }
  }

  // True when every d in [lo, lo + 64) can be answered by `window`.
  bool window_in_dense(std::uint64_t lo) const noexcept {
    return lo + 64 <= dense_limit_;
  }

  // Bit j of the result is set iff lo + j is a member, for j in [0, 64).
  // Requires window_in_dense(lo).
  std::uint64_t window(std::uint64_t lo) const noexcept {
    assert(window_in_dense(lo));
    const std::uint64_t w = lo >> 6;
    const unsigned shift = static_cast<unsigned>(lo & 63);
    const std::uint64_t first = w < dense_.size() ? dense_[w] : 0;
    if (shift == 0) return first;
    const std::uint64_t second = w + 1 < dense_.size() ? dense_[w + 1] : 0;
    return (first >> shift) | (second << (64 - shift));
  }

  // Approximate heap footprint, for run reports.
  std::uint64_t memory_bytes() const noexcept {
    std::uint64_t bytes = dense_.capacity() * sizeof(std::uint64_t);
    bytes += sparse_.capacity() * sizeof(std::vector<std::uint16_t>);
    for (const auto& bucket : sparse_) bytes += bucket.capacity() * sizeof(std::uint16_t);
    return bytes;
  }

  friend bool operator==(const DifferenceSet& a, const DifferenceSet& b) {
    if (a.count_ != b.count_) return false;
    // Compare by membership so differing tier limits or capacities still
    // compare equal when the sets agree.
    return a.subset_of(b) && b.subset_of(a);
  }

  template <typename Visitor>
  void for_each(Visitor&& visit) const {
    for (std::uint64_t w = 0; w < dense_.size(); ++w) {
      std::uint64_t word = dense_[w];
      while (word != 0) {
        visit((w << 6) + static_cast<std::uint64_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    for (std::uint64_t b = 0; b < sparse_.size(); ++b) {
      for (const auto low : sparse_[b]) visit((b << kBucketBits) | low);
    }
  }

 private:
  static std::uint64_t round_up_to_bucket(std::uint64_t v) {
    return (v + kBucketSpan - 1) & ~(kBucketSpan - 1);
  }

  // Branch-free over 32-entry chunks so the compiler can vectorize the scan.
  static bool bucket_contains(const std::vector<std::uint16_t>& bucket, std::uint16_t low) noexcept {
    const std::uint16_t* p = bucket.data();
    const std::size_t m = bucket.size();
    std::size_t i = 0;
    for (; i + 32 <= m; i += 32) {
      unsigned hit = 0;
      for (std::size_t j = 0; j < 32; ++j) hit |= static_cast<unsigned>(p[i + j] == low);
      if (hit != 0) return true;
    }
    for (; i < m; ++i) {
      if (p[i] == low) return true;
    }
    return false;
  }

  bool subset_of(const DifferenceSet& other) const {
    bool ok = true;
    for_each([&](std::uint64_t d) { ok = ok && other.contains(d); });
    return ok;
  }

  std::uint64_t dense_limit_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> dense_;
  std::vector<std::vector<std::uint16_t>> sparse_;
};

}  // namespace sidon
