// incluso: run, sweep, diagnose, and selfcheck experiments from a config file.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "incluso/harness/commands.hpp"

namespace h = incluso::harness;

namespace {

h::ExperimentConfig load(const std::string& path, const std::optional<double>& tol) {
  h::ExperimentConfig c = h::load_config(path);
  if (tol) c.analysis.tol = *tol;
  h::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic proximal and subgradient experiments with stationarity diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> tol;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment; writes trace.csv and summary.json");
  run_cmd->add_option("--config", config_path, "Experiment config (.toml or .json)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory (overrides INCLUSO_OUT and the config)");
  run_cmd->add_option("--tol", tol, "Convergence tolerance on tail-mean sqrt(-U)");

  std::string seeds_text;
  unsigned jobs = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per seed; writes aggregate.json");
  sweep_cmd->add_option("--config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--seeds", seeds_text, "Seeds, e.g. 1,2,3 or 0-19")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--tol", tol, "Convergence tolerance on tail-mean sqrt(-U)");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  std::string trace_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> report_path;
  auto* diag_cmd = app.add_subcommand("diagnose", "Recompute statistics from a stored trace; prints JSON");
  diag_cmd->add_option("--config", config_path, "Config the trace was produced with")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("--trace", trace_path, "trace.csv")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("--seed", seed, "Seed of the run (defaults to the config seed)");
  diag_cmd->add_option("--tol", tol, "Convergence tolerance on tail-mean sqrt(-U)");
  diag_cmd->add_option("--out", report_path, "Write the report to this file instead of stdout");

  std::uint64_t seed_offset = 0;
  auto* self_cmd = app.add_subcommand("selfcheck", "Check closed-form prox and U against brute-force oracles");
  self_cmd->add_option("--seed-offset", seed_offset, "Shift the suite seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kUsage;
  }

  try {
    if (*run_cmd) {
      const auto c = load(config_path, tol);
      return h::cmd_run(c, h::resolve_out_dir(out_dir, c), std::cerr);
    }
    if (*sweep_cmd) {
      const auto c = load(config_path, tol);
      return h::cmd_sweep(c, h::parse_seed_list(seeds_text), h::resolve_out_dir(out_dir, c), jobs, std::cerr);
    }
    if (*diag_cmd) {
      auto c = load(config_path, tol);
      if (seed) c.seed = *seed;
      std::optional<std::filesystem::path> report;
      if (report_path) report = *report_path;
      return h::cmd_diagnose(c, trace_path, report, std::cout);
    }
    if (*self_cmd) return h::cmd_selfcheck(std::cout, seed_offset);
  } catch (const incluso::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return h::kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return h::kCheckFailed;
  }
  return h::kUsage;
}
