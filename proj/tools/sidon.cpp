// sidon: generate Sidon sequences, bound their reciprocal sums, and run the
// lookahead search.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace sidon;

  CLI::App app{"Sidon (B2) sequence generator and reciprocal-sum bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::OutputOptions opts;
  app.add_option("--digits", opts.digits, "Fractional digits in printed bounds")
      ->check(CLI::Range(1, 15));
  app.add_flag("--machine", opts.machine, "Print reports as one JSON object per line");

  cli::GenerateArgs gen;
  std::string pins_file;
  std::string resume_file;
  auto* generate = app.add_subcommand("generate", "Write the first --count terms of a sequence");
  auto* recipe_opt = generate->add_option("--recipe", gen.recipe, "mian-chowla, zhang or h");
  auto* pins_opt = generate->add_option("--pins", pins_file, "File of 'position value' pins")
                       ->check(CLI::ExistingFile);
  recipe_opt->excludes(pins_opt);
  generate->add_option("--count", gen.count, "Number of terms")->required();
  generate->add_option("--out", gen.out, "Output term file")->required();
  unsigned dense_bits = 32;
  generate->add_option("--dense-bits", dense_bits, "Differences below 2^N use the bitset tier (2^N / 8 bytes)")
      ->check(CLI::Range(16u, 36u));
  generate->add_option("--terms", resume_file, "Existing term file to resume from")
      ->check(CLI::ExistingFile);

  std::string terms_file;
  auto* bounds = app.add_subcommand("bounds", "Bound the reciprocal sum of a term file");
  bounds->add_option("--terms", terms_file, "Term file")->required();

  auto* verify = app.add_subcommand("verify", "Check that a term file is a Sidon sequence");
  verify->add_option("--terms", terms_file, "Term file")->required();

  cli::SearchArgs search_args;
  std::string seed_file;
  std::string horizon_mode = "value-cap";
  auto* search = app.add_subcommand("search", "Extend a seed by one-step lookahead search");
  search->add_option("--seed", seed_file, "Seed term file")->required();
  search->add_option("--candidates", search_args.config.num_candidates, "Candidates per step")
      ->check(CLI::PositiveNumber);
  search->add_option("--horizon-mode", horizon_mode, "value-cap or term-count")
      ->check(CLI::IsMember({"value-cap", "term-count"}));
  search->add_option("--horizon", search_args.config.horizon, "Rollout horizon")
      ->check(CLI::PositiveNumber);
  search->add_option("--steps", search_args.config.steps, "Terms to choose by search");
  search->add_option("--threads", search_args.config.threads, "Rollout threads (0 = all cores)");
  search->add_option("--out", search_args.out, "Output term file")->required();

  std::uint64_t series_terms = 1'000'000;
  auto* levine = app.add_subcommand("levine", "Evaluate the Levine upper bound two ways");
  levine->add_option("--series-terms", series_terms, "Series terms before the remainder bracket")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  if (*generate) {
    if (!*recipe_opt && !*pins_opt) {
      std::cerr << "error: generate needs --recipe or --pins\n";
      return cli::kUsage;
    }
    if (*pins_opt) gen.pins_file = pins_file;
    if (!resume_file.empty()) gen.resume_from = resume_file;
    gen.dense_limit = std::uint64_t{1} << dense_bits;
    return cli::cmd_generate(gen, opts, std::cout, std::cerr);
  }
  if (*bounds) return cli::cmd_bounds(terms_file, opts, std::cout, std::cerr);
  if (*verify) return cli::cmd_verify(terms_file, opts, std::cout, std::cerr);
  if (*search) {
    search_args.seed_file = seed_file;
    search_args.config.horizon_mode = parse_horizon_mode(horizon_mode);
    return cli::cmd_search(search_args, opts, std::cout, std::cerr);
  }
  if (*levine) return cli::cmd_levine(series_terms, opts, std::cout, std::cerr);
  return cli::kUsage;
}
