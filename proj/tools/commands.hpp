#pragma once

// Subcommand implementations for the `sidon` tool. Each returns a process exit
// code: 0 success, 1 domain violation, 2 I/O, format or usage error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidon/bounds.hpp"
#include "sidon/decimal.hpp"
#include "sidon/levine.hpp"
#include "sidon/prefix.hpp"
#include "sidon/recipe.hpp"
#include "sidon/search.hpp"
#include "sidon/term_file.hpp"
#include "sidon/verify.hpp"

namespace sidon::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2 };

struct OutputOptions {
  int digits = 8;
  bool machine = false;
};

// Key/value report printed by generate and bounds.
struct RunReport {
  std::string sequence;
  std::size_t k = 0;
  Term a_k = 0;
  std::uint64_t n_switch = 0;
  std::string lower;
  std::string upper;
  std::optional<double> generation_seconds;
  std::optional<std::uint64_t> candidates_scanned;
  std::optional<std::uint64_t> difference_count;

  static RunReport from_terms(std::string sequence, std::span<const Term> terms, int digits) {
    const BoundReport b = bound_report(terms);
    RunReport r;
    r.sequence = std::move(sequence);
    r.k = terms.size();
    r.a_k = terms.back();
    r.n_switch = b.tail.split.n_switch;
    r.lower = format_down(b.interval.lower, digits);
    r.upper = format_up(b.interval.upper, digits);
    return r;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["sequence"] = sequence;
    j["k"] = k;
    j["a_k"] = a_k;
    j["n_switch"] = n_switch;
    j["middle_end"] = n_switch - 1;
    j["lower"] = lower;
    j["upper"] = upper;
    if (generation_seconds) j["generation_seconds"] = *generation_seconds;
    if (candidates_scanned) j["candidates_scanned"] = *candidates_scanned;
    if (difference_count) j["difference_count"] = *difference_count;
    return j;
  }

  void print(std::ostream& out, bool machine) const {
    const auto j = to_json();
    if (machine) {
      out << j.dump() << '\n';
      return;
    }
    for (const auto& [key, value] : j.items()) {
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
};

namespace detail {

// Runs `body`, mapping library exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const SidonViolationError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

inline std::vector<Term> read_nonempty_terms(const std::filesystem::path& path) {
  auto terms = read_terms(path);
  if (terms.empty()) throw FormatError("'" + path.string() + "' contains no terms");
  return terms;
}

}  // namespace detail

struct GenerateArgs {
  std::string recipe;  // built-in name; ignored when pins_file is set
  std::optional<std::filesystem::path> pins_file;
  std::size_t count = 0;
  std::filesystem::path out;
  // Existing term file to continue from.
  std::optional<std::filesystem::path> resume_from;
  std::uint64_t dense_limit = DifferenceSet::kDefaultDenseLimit;
};

inline SequenceRecipe resolve_recipe(const GenerateArgs& args) {
  if (args.pins_file) {
    return SequenceRecipe(args.pins_file->stem().string(), read_pins(*args.pins_file));
  }
  auto recipe = find_recipe(args.recipe);
  if (!recipe) throw std::invalid_argument("unknown recipe '" + args.recipe + "'");
  return *recipe;
}

inline int cmd_generate(const GenerateArgs& args, const OutputOptions& opts, std::ostream& out,
                        std::ostream& err) {
  return detail::guarded(err, [&] {
    if (args.count < 1) throw std::invalid_argument("--count must be at least 1");
    const SequenceRecipe recipe = resolve_recipe(args);

    SidonPrefix prefix(args.dense_limit);
    if (args.resume_from) {
      const auto stored = detail::read_nonempty_terms(*args.resume_from);
      for (const auto& [pos, value] : recipe.pins) {
        if (pos <= stored.size() && stored[pos - 1] != value) {
          throw DomainError("resume file has " + std::to_string(stored[pos - 1]) + " at position " +
                            std::to_string(pos) + " but recipe '" + recipe.name + "' pins " +
                            std::to_string(value));
        }
      }
      prefix = SidonPrefix::rebuild(stored, args.dense_limit);
    }

    EngineStats stats;
    const auto start = std::chrono::steady_clock::now();
    if (prefix.size() < args.count) extend(prefix, recipe, args.count, &stats);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto terms = prefix.terms().first(args.count);
    write_terms(args.out, terms);

    RunReport report = RunReport::from_terms(recipe.name, terms, opts.digits);
    report.generation_seconds = seconds;
    report.candidates_scanned = stats.candidates_scanned;
    report.difference_count = prefix.diffs().size();
    report.print(out, opts.machine);
    return static_cast<int>(kOk);
  });
}

inline int cmd_bounds(const std::filesystem::path& terms_file, const OutputOptions& opts,
                      std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto terms = detail::read_nonempty_terms(terms_file);
    if (auto v = verify_sidon(terms)) throw SidonViolationError(*v);
    RunReport::from_terms(terms_file.stem().string(), terms, opts.digits).print(out, opts.machine);
    return static_cast<int>(kOk);
  });
}

inline int cmd_verify(const std::filesystem::path& terms_file, const OutputOptions& opts,
                      std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto terms = detail::read_nonempty_terms(terms_file);
    const auto v = verify_sidon(terms);
    if (opts.machine) {
      nlohmann::ordered_json j;
      j["terms"] = terms.size();
      j["sidon"] = !v.has_value();
      if (v) j["violation"] = v->describe();
      out << j.dump() << '\n';
    } else if (v) {
      out << "violation: " << v->describe() << '\n';
    } else {
      out << "ok: " << terms.size() << " terms form a Sidon sequence\n";
    }
    return static_cast<int>(v ? kDomain : kOk);
  });
}

struct SearchArgs {
  std::filesystem::path seed_file;
  SearchConfig config;
  std::filesystem::path out;
};

// One JSON object per line.
inline std::string format_step_record(const StepRecord& r, int digits) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["position"] = r.position;
  j["chosen"] = r.chosen;
  auto& candidates = j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& s : r.scores) {
    candidates.push_back({{"value", s.candidate},
                          {"score", format_down(s.score, digits)},
                          {"rollout_length", s.rollout_length}});
  }
  return j.dump();
}

// Step records go to stdout and to `<out>.steps`.
inline int cmd_search(const SearchArgs& args, const OutputOptions& opts, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto seed = detail::read_nonempty_terms(args.seed_file);
    if (auto v = verify_sidon(seed)) throw SidonViolationError(*v);

    std::filesystem::path steps_path = args.out;
    steps_path += ".steps";
    std::ofstream steps(steps_path, std::ios::binary | std::ios::trunc);
    if (!steps) throw IoError("cannot open '" + steps_path.string() + "' for writing");

    const auto result = run_search(seed, args.config, [&](const StepRecord& r) {
      const std::string line = format_step_record(r, opts.digits);
      steps << line << '\n';
      out << line << '\n';
    });
    steps.close();
    if (!steps) throw IoError("error writing '" + steps_path.string() + "'");
    write_terms(args.out, result.terms);
    return static_cast<int>(kOk);
  });
}

inline constexpr double kLevineAgreement = 1e-9;

inline int cmd_levine(std::uint64_t series_terms, const OutputOptions& opts, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&] {
    const LevineBound b = levine_bound(series_terms);
    const bool agree = b.closed_form_bracketed() && b.bracket_width() < kLevineAgreement;
    nlohmann::ordered_json j;
    j["closed_form"] = format_up(b.closed_form, opts.digits + 4);
    j["series_terms"] = b.series_terms;
    j["series_lower"] = format_down(b.series_lower, opts.digits + 4);
    j["series_upper"] = format_up(b.series_upper, opts.digits + 4);
    j["upper_bound"] = format_up(std::max(b.closed_form, b.series_upper), opts.digits);
    j["agree"] = agree;
    if (opts.machine) {
      out << j.dump() << '\n';
    } else {
      for (const auto& [key, value] : j.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    }
    if (!agree) err << "error: closed form and series bracket disagree\n";
    return static_cast<int>(agree ? kOk : kDomain);
  });
}

}  // namespace sidon::cli
