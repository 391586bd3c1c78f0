#include "dadapt/convex/run.hpp"

#include <cmath>
#include <variant>

#include "dadapt/convex/adagrad.hpp"
#include "dadapt/convex/gradient_descent.hpp"
#include "dadapt/core/errors.hpp"

namespace dadapt::convex {

namespace {

using Stepper = std::variant<DualAveraging, DAdaptGradientDescent, DAdaptAdaGrad>;

TraceKind trace_kind(ConvexAlgorithm a) {
  switch (a) {
    case ConvexAlgorithm::kDualAveraging:
      return TraceKind::kDualAveraging;
    case ConvexAlgorithm::kGradientDescent:
      return TraceKind::kGradientDescent;
    case ConvexAlgorithm::kAdaGrad:
      return TraceKind::kAdaGrad;
  }
  return TraceKind::kDualAveraging;
}

// Resolves G (or G_inf): explicit config, then the problem, then ||g_0||.
double resolve_bound(const ConvexRunConfig& config, const Problem& problem, ConstView g0,
                     bool inf_norm, bool& heuristic) {
  heuristic = false;
  if (config.gradient_bound) return *config.gradient_bound;
  const auto known = inf_norm ? problem.lipschitz_inf() : problem.lipschitz();
  if (known) return *known;
  heuristic = true;
  return inf_norm ? norm_inf(g0) : norm(g0);
}

}  // namespace

ConvexRunResult run_convex(Problem& problem, const ConvexRunConfig& config) {
  if (config.steps == 0) throw ConfigError("run needs at least one step");
  if (!(config.d0 > 0.0)) throw ConfigError("d0 must be positive");
  if (config.record_every == 0) throw ConfigError("record_every must be positive");
  config.schedule.validate();

  Vector x0 = config.x0 ? *config.x0 : problem.default_start();
  if (x0.size() != problem.dim()) throw ConfigError("x0 dimension does not match the problem");

  Rng rng = seeded_rng(config.seed, config.stream);
  ConvexRunResult result;
  result.trace.kind = trace_kind(config.algorithm);
  result.trajectory = Trajectory(x0.size());

  Vector g = problem.subgradient(x0, rng);
  result.first_grad_norm = norm(g);
  if (is_zero(g)) {
    result.zero_first_gradient = true;
    result.x_last = x0;
    result.x_hat = x0;
    result.f_hat = problem.value(x0);
    result.x_hat_t = x0;
    result.f_hat_t = result.f_hat;
    result.d_sequence = {config.d0};
    return result;
  }

  std::optional<Stepper> stepper;
  switch (config.algorithm) {
    case ConvexAlgorithm::kDualAveraging: {
      std::optional<double> bound;
      if (config.use_gradient_bound) {
        bound = resolve_bound(config, problem, g, false, result.heuristic_bound);
        result.gradient_bound = *bound;
        result.used_gradient_bound = true;
      }
      stepper.emplace(std::in_place_type<DualAveraging>, x0, config.d0, config.option, bound);
      break;
    }
    case ConvexAlgorithm::kGradientDescent:
      result.gradient_bound = resolve_bound(config, problem, g, false, result.heuristic_bound);
      stepper.emplace(std::in_place_type<DAdaptGradientDescent>, x0, config.d0,
                      result.gradient_bound);
      break;
    case ConvexAlgorithm::kAdaGrad:
      result.gradient_bound = resolve_bound(config, problem, g, true, result.heuristic_bound);
      stepper.emplace(std::in_place_type<DAdaptAdaGrad>, x0, config.d0, result.gradient_bound);
      break;
  }

  const auto current_x = [&]() -> const Vector& {
    return std::visit([](auto& s) -> const Vector& { return s.x(); }, *stepper);
  };

  result.d_sequence.reserve(config.steps + 1);
  result.d_sequence.push_back(config.d0);
  result.trace.steps.reserve(config.steps);

  // Online return-index tracking: ratio_k = d_{k+1} / sum_{i<=k} d_i.
  double d_prefix = 0.0;
  double best_ratio = 0.0;
  const double work = problem.work_per_gradient();

  Vector x = x0;
  for (std::size_t k = 0; k < config.steps; ++k) {
    if (k > 0) g = problem.subgradient(x, rng);
    const double multiplier = schedule_eval(config.schedule, k, config.steps);
    const bool record = (k % config.record_every == 0) || k + 1 == config.steps;
    const double fx = record ? problem.value(x) : 0.0;

    const StepDiagnostics diag =
        std::visit([&](auto& s) { return s.step(g, multiplier); }, *stepper);

    result.trajectory.weighted_average_update(x, diag.weight);
    d_prefix += diag.d;
    const double ratio = diag.d_next / d_prefix;
    if (k == 0 || ratio <= best_ratio) {
      best_ratio = ratio;
      result.t = k;
      result.x_hat_t = result.trajectory.average();
    }

    if (record) {
      StepRecord r;
      r.step = k;
      r.d = diag.d;
      r.dhat = diag.dhat;
      r.rate = config.algorithm == ConvexAlgorithm::kGradientDescent ? diag.weight : diag.gamma;
      r.f = fx;
      r.grad_norm_sq = norm_sq(g);
      r.elapsed = static_cast<double>(k + 1) * work;
      result.trajectory.record(r);
    }
    result.trace.steps.push_back(diag);
    result.d_sequence.push_back(diag.d_next);
    result.steps_taken = k + 1;

    x = current_x();
    if (!all_finite(x) || !std::isfinite(fx) || norm(x) > config.max_norm) {
      result.diverged = true;
      break;
    }
  }

  result.x_last = x;
  result.x_hat = result.trajectory.average();
  result.f_hat = problem.value(result.x_hat);
  result.f_hat_t = problem.value(result.x_hat_t);
  return result;
}

}  // namespace dadapt::convex
