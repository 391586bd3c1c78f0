#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/convex/dual_averaging.hpp"
#include "dadapt/core/problem.hpp"
#include "dadapt/core/schedule.hpp"
#include "dadapt/core/trajectory.hpp"

namespace dadapt::convex {

enum class ConvexAlgorithm { kDualAveraging, kGradientDescent, kAdaGrad };

struct ConvexRunConfig {
  ConvexAlgorithm algorithm = ConvexAlgorithm::kDualAveraging;
  DaOption option = DaOption::kI;
  double d0 = 1e-6;
  /// Dual averaging only: put G in the step-size denominator.
  bool use_gradient_bound = false;
  /// G (G_inf for AdaGrad). Falls back to the problem's constant, then to the
  /// norm of the first gradient (flagged as heuristic).
  std::optional<double> gradient_bound;
  std::size_t steps = 1000;
  std::optional<Vector> x0;
  Schedule schedule;
  std::size_t record_every = 1;
  /// A run whose iterate norm exceeds this is stopped and marked diverged.
  double max_norm = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct ConvexRunResult {
  Trajectory trajectory;
  StepTrace trace;
  /// d_0 .. d_N for N executed steps.
  std::vector<double> d_sequence;
  Vector x_last;
  Vector x_hat;
  double f_hat = 0.0;
  /// Return index and its prefix average, tracked online.
  std::optional<std::size_t> t;
  Vector x_hat_t;
  double f_hat_t = 0.0;
  double gradient_bound = 0.0;
  /// Dual averaging ran with G in the step-size denominator.
  bool used_gradient_bound = false;
  bool heuristic_bound = false;
  double first_grad_norm = 0.0;
  bool zero_first_gradient = false;
  bool diverged = false;
  std::size_t steps_taken = 0;
};

/// Runs the configured algorithm for `steps` steps (k = 0 .. steps-1). A zero
/// first gradient returns x_0 with no steps taken.
ConvexRunResult run_convex(Problem& problem, const ConvexRunConfig& config);

}  // namespace dadapt::convex
