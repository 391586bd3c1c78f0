// Command-line front end: experiment runs, learning-rate grids, d0 sweeps,
// the lemma/bound verification suites and the |x| trace.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dadapt/core/errors.hpp"
#include "dadapt/harness/config.hpp"
#include "dadapt/harness/experiment.hpp"
#include "dadapt/harness/verify.hpp"

namespace fs = std::filesystem;
using namespace dadapt;
using namespace dadapt::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

// Grid and sweep validate per point, after filling in lr or d0.
ExperimentConfig load_with_overrides(const std::string& path,
                                     const std::vector<std::string>& overrides,
                                     bool validate_now = true) {
  ExperimentConfig config = load_config(path);
  for (const auto& o : overrides) apply_override(config, o);
  if (validate_now) validate(config);
  return config;
}

std::string output_path(const ExperimentConfig& config, const std::string& suffix) {
  return (fs::path(config.output) / (config.name + suffix)).string();
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
  const ExperimentConfig config = load_with_overrides(path, overrides);
  const ExperimentResult result = run_experiment(config);
  for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
  std::cout << "f_final mean " << format_double(result.f_final.mean) << " +- "
            << format_double(result.f_final.two_se) << ", d_final mean "
            << format_double(result.d_final.mean) << '\n';
  if (result.any_diverged) std::cout << "warning: at least one run diverged\n";
  return kExitOk;
}

int cmd_grid(const std::string& path, const std::vector<std::string>& overrides,
             const std::vector<double>& lrs, const std::string& compare) {
  const ExperimentConfig config = load_with_overrides(path, overrides, false);
  std::optional<Algorithm> cmp;
  if (!compare.empty()) cmp = parse_algorithm(compare);
  const GridResult result = grid_search(config, lrs, cmp);
  const std::string out = output_path(config, "_grid.csv");
  write_file_atomic(out, result.table);
  std::cout << result.table << "wrote " << out << '\n';
  if (result.best)
    std::cout << "best lr " << format_double(result.points[*result.best].lr) << '\n';
  else
    std::cout << "every grid point diverged\n";
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::vector<std::string>& overrides,
              const std::vector<double>& d0s) {
  const ExperimentConfig config = load_with_overrides(path, overrides, false);
  const SweepResult result = d0_sweep(config, d0s);
  const std::string out = output_path(config, "_sweep.csv");
  write_file_atomic(out, result.table);
  std::cout << result.table << "wrote " << out << '\n';
  std::cout << "relative spread " << format_double(result.relative_spread) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& suite_name, const VerifyOptions& options,
               const std::string& output) {
  const Suite suite = parse_suite(suite_name);
  const auto reports = run_verification(suite, options);

  struct Tally {
    std::size_t satisfied = 0, violated = 0, skipped = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto& r : reports) {
    Tally& t = tally[r.name];
    if (r.satisfied()) ++t.satisfied;
    else if (r.violated()) ++t.violated;
    else ++t.skipped;
  }
  bool ok = true;
  for (const auto& [name, t] : tally) {
    std::cout << (t.violated ? "FAIL " : "ok   ") << name << ": " << t.satisfied << " satisfied, "
              << t.violated << " violated, " << t.skipped << " skipped\n";
    ok = ok && t.violated == 0;
  }
  for (const auto& r : reports)
    if (r.violated()) std::cout << analysis::to_csv_row(r) << '\n';
  if (!output.empty()) {
    std::ostringstream csv;
    analysis::write_reports_csv(csv, reports);
    write_file_atomic(output, csv.str());
    std::cout << "wrote " << output << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_trace_toy(std::size_t steps, double d0, const std::string& output) {
  if (!(d0 > 0.0)) throw ConfigError("d0 must be positive");
  const std::string csv = trace_toy(steps, d0);
  if (output.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(output, csv);
    std::cout << "wrote " << output << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning-rate-free optimizers: experiments and verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<double> values;
  std::string compare;

  auto* run = app.add_subcommand("run", "Run every seed of a config and write CSVs");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--set", overrides, "Override a config key (key=value), repeatable");

  auto* grid = app.add_subcommand("grid", "Learning-rate grid for a tuned baseline");
  grid->add_option("config", config_path, "Config file")->required();
  grid->add_option("--lrs", values, "Learning rates")->required()->delimiter(',');
  grid->add_option("--compare", compare, "D-Adaptation algorithm to compare against");
  grid->add_option("--set", overrides, "Override a config key (key=value), repeatable");

  auto* sweep = app.add_subcommand("sweep-d0", "Final loss across initial d0 values");
  sweep->add_option("config", config_path, "Config file")->required();
  sweep->add_option("--d0s", values, "d0 values")->required()->delimiter(',');
  sweep->add_option("--set", overrides, "Override a config key (key=value), repeatable");

  std::string suite = "all";
  std::string verify_output;
  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Check the lemma and bound suites");
  verify->add_option("--suite", suite, "lemmas, bounds or all")->capture_default_str();
  verify->add_option("--seed", verify_options.seed, "Seed for random instances");
  verify->add_option("--instances", verify_options.lemma_instances, "Random lemma instances");
  verify->add_option("--problems", verify_options.problem_instances, "Random problems");
  verify->add_option("--output", verify_output, "Write every report to this CSV");

  std::size_t toy_steps = 50;
  double toy_d0 = 0.1;
  std::string toy_output;
  auto* toy = app.add_subcommand("trace-toy", "Trace of d on f(x) = |x| from x0 = 1");
  toy->add_option("--steps", toy_steps, "Steps")->capture_default_str();
  toy->add_option("--d0", toy_d0, "Initial d")->capture_default_str();
  toy->add_option("--output", toy_output, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, overrides);
    if (*grid) return cmd_grid(config_path, overrides, values, compare);
    if (*sweep) return cmd_sweep(config_path, overrides, values);
    if (*verify) return cmd_verify(suite, verify_options, verify_output);
    if (*toy) return cmd_trace_toy(toy_steps, toy_d0, toy_output);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}
