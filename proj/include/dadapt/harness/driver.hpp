#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dadapt/core/problem.hpp"
#include "dadapt/core/trajectory.hpp"
#include "dadapt/harness/config.hpp"

namespace dadapt::harness {

/// Runs whose iterate norm exceeds this are stopped and flagged.
inline constexpr double kDivergenceNorm = 1e12;

struct RunSummary {
  std::uint64_t seed = 0;
  std::uint64_t run_id = 0;
  std::size_t steps = 0;
  /// Objective at the point the algorithm returns: the weighted average for
  /// the dual averaging family, uniform average for AdaGrad-Norm and fixed
  /// step, last iterate otherwise.
  double f_final = 0.0;
  double f_last = 0.0;
  /// Final distance estimate; 0 for algorithms that do not keep one.
  double d_final = 0.0;
  /// Objective at the selected return index (dual averaging only).
  std::optional<std::size_t> t;
  std::optional<double> f_t;
  bool diverged = false;
  bool heuristic_g = false;
  /// d0 exceeds the known distance to the solution.
  bool out_of_theory = false;
};

struct RunOutput {
  std::vector<StepRecord> records;
  RunSummary summary;
  Vector x_returned;
};

/// Builds a fresh problem instance (datasets are regenerated or reloaded).
/// Throws ConfigError for unreadable data.
std::unique_ptr<Problem> make_problem(const ExperimentConfig& config);

/// steps if set, else epochs times the batches per epoch for stochastic
/// problems, else 1000.
std::size_t resolve_steps(const ExperimentConfig& config, const Problem& problem);

/// Known distance to the solution: config D, else from the problem's minimizer.
std::optional<double> known_distance(const ExperimentConfig& config, const Problem& problem);

/// One run for one seed. Deterministic in (config, seed).
RunOutput run_single(const ExperimentConfig& config, std::uint64_t seed);
RunOutput run_single(const ExperimentConfig& config, std::uint64_t seed, Problem& problem);

}  // namespace dadapt::harness
