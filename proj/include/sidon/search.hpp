#pragma once

// One-step lookahead search for Sidon sequences with large reciprocal sums.
//
// Each step scores the K smallest admissible next values by continuing the
// sequence greedily up to a horizon and summing reciprocals, then keeps the
// best candidate and moves on.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sidon/bounds.hpp"
#include "sidon/prefix.hpp"
#include "sidon/types.hpp"
#include "sidon/verify.hpp"

namespace sidon {

enum class HorizonMode {
  // Rollouts stop once the sequence holds `horizon` terms.
  term_count,
  // Rollouts keep every term <= horizon and stop before the first larger one.
  value_cap,
};

inline std::string_view to_string(HorizonMode mode) {
  return mode == HorizonMode::term_count ? "term-count" : "value-cap";
}

inline HorizonMode parse_horizon_mode(std::string_view text) {
  if (text == "term-count" || text == "term_count") return HorizonMode::term_count;
  if (text == "value-cap" || text == "value_cap") return HorizonMode::value_cap;
  throw std::invalid_argument("unknown horizon mode '" + std::string(text) +
                              "' (expected term-count or value-cap)");
}

struct SearchConfig {
  std::size_t num_candidates = 20;
  HorizonMode horizon_mode = HorizonMode::value_cap;
  std::uint64_t horizon = 64000;
  std::size_t steps = 0;
  // Rollouts run on up to this many threads; 0 picks hardware concurrency.
  unsigned threads = 1;
};

struct CandidateScore {
  Term candidate = 0;
  // Lower end of the rollout's partial reciprocal sum.
  double score = 0.0;
  std::size_t rollout_length = 0;
};

struct StepRecord {
  // 1-based step index.
  std::size_t step = 0;
  // Position the chosen term occupies.
  Position position = 0;
  std::vector<CandidateScore> scores;
  Term chosen = 0;
};

struct SearchResult {
  std::vector<Term> terms;
  std::vector<StepRecord> steps;
};

// Throws std::invalid_argument when the configuration cannot be used with a
// prefix of this extent.
inline void validate(const SearchConfig& config, const SidonPrefix& prefix) {
  if (config.num_candidates < 1) throw std::invalid_argument("search: need at least one candidate");
  if (config.horizon < 1) throw std::invalid_argument("search: horizon must be positive");
  if (prefix.empty()) throw std::invalid_argument("search: empty prefix");
  const std::uint64_t extent =
      config.horizon_mode == HorizonMode::term_count ? prefix.size() : prefix.back();
  if (config.horizon <= extent) {
    throw std::invalid_argument("search: horizon " + std::to_string(config.horizon) +
                                " does not exceed the seed's extent " + std::to_string(extent) +
                                " in " + std::string(to_string(config.horizon_mode)) + " mode");
  }
}

inline std::vector<Term> enumerate_candidates(const SidonPrefix& prefix, std::size_t count) {
  return prefix.admissible_values(count);
}

// Scores `candidate` on a private copy of `prefix`. The candidate itself is
// always kept, even past a value cap.
inline CandidateScore rollout_score(const SidonPrefix& prefix, Term candidate,
                                    const SearchConfig& config) {
  SidonPrefix rollout = prefix;
  rollout.append(candidate);
  if (config.horizon_mode == HorizonMode::term_count) {
    while (rollout.size() < config.horizon) rollout.append_unchecked(rollout.next_greedy());
  } else {
    for (;;) {
      const Term next = rollout.next_greedy();
      if (next > config.horizon) break;
      rollout.append_unchecked(next);
    }
  }
  return {candidate, partial_sum(rollout.terms()).lower, rollout.size()};
}

namespace detail {

inline std::vector<CandidateScore> score_all(const SidonPrefix& prefix,
                                             const std::vector<Term>& candidates,
                                             const SearchConfig& config) {
  std::vector<CandidateScore> scores(candidates.size());
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, candidates.size()));
  if (threads <= 1) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      scores[c] = rollout_score(prefix, candidates[c], config);
    }
    return scores;
  }
  // Strided split; each slot is written by exactly one worker, so the result
  // does not depend on scheduling.
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t c = w; c < candidates.size(); c += threads) {
        scores[c] = rollout_score(prefix, candidates[c], config);
      }
    }));
  }
  for (auto& f : workers) f.get();
  return scores;
}

}  // namespace detail

// Scores every candidate and picks the best; ties go to the smallest value.
inline StepRecord search_step_record(const SidonPrefix& prefix, const SearchConfig& config) {
  validate(config, prefix);
  StepRecord record;
  record.position = prefix.size() + 1;
  record.scores = detail::score_all(prefix, enumerate_candidates(prefix, config.num_candidates), config);
  const CandidateScore* best = &record.scores.front();
  for (const auto& s : record.scores) {
    if (s.score > best->score) best = &s;
  }
  record.chosen = best->candidate;
  return record;
}

inline Term search_step(const SidonPrefix& prefix, const SearchConfig& config) {
  return search_step_record(prefix, config).chosen;
}

using StepCallback = std::function<void(const StepRecord&)>;

// Runs config.steps lookahead steps from `seed`. Each finished step is passed
// to `on_step` (if set) before the next begins.
inline SearchResult run_search(std::span<const Term> seed, const SearchConfig& config,
                               const StepCallback& on_step = {}) {
  SidonPrefix prefix = SidonPrefix::rebuild(seed);
  SearchResult result;
  for (std::size_t step = 1; step <= config.steps; ++step) {
    StepRecord record = search_step_record(prefix, config);
    record.step = step;
    prefix.append(record.chosen);
    if (on_step) on_step(record);
    result.steps.push_back(std::move(record));
  }
  result.terms.assign(prefix.terms().begin(), prefix.terms().end());
  return result;
}

}  // namespace sidon
