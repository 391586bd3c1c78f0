#include "dadapt/analysis/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dadapt/core/errors.hpp"

namespace dadapt::analysis {

using convex::StepDiagnostics;
using convex::StepTrace;
using convex::TraceKind;

namespace {

double log2_plus(double x) { return std::max(1.0, std::log2(x)); }

std::string at_step(std::size_t k) { return "worst step k=" + std::to_string(k); }

void require_contiguous(const StepTrace& trace) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (trace.steps[i].k != i) throw PreconditionError("step records are truncated or out of order");
  }
}

void require_deterministic_kind(const StepTrace& trace) {
  if (trace.kind == TraceKind::kStochastic)
    throw PreconditionError("check applies to dual averaging, gradient descent or AdaGrad traces");
}

}  // namespace

BoundReport check_d_lower_bound(const StepTrace& trace, double distance) {
  if (trace.steps.empty()) throw PreconditionError("no dhat records to check");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < trace.steps.size(); ++i)
    if (trace.steps[i].dhat > trace.steps[worst].dhat) worst = i;
  return make_report("d_lower_bound", trace.steps[worst].dhat, distance, kInequalityAbsTol,
                     "max dhat at k=" + std::to_string(trace.steps[worst].k));
}

BoundReport check_d_ceiling(const StepTrace& trace, double d0, double distance) {
  if (trace.steps.empty()) throw PreconditionError("no d records to check");
  double max_d = d0;
  for (const auto& s : trace.steps) max_d = std::max(max_d, s.d_next);
  return make_report("d_ceiling", max_d, std::max(d0, distance), kInequalityAbsTol);
}

BoundReport check_telescoping(const StepTrace& trace) {
  require_deterministic_kind(trace);
  require_contiguous(trace);

  double inner = 0.0;       // sum gamma_k w_k <g_k, s_k>
  double grad_terms = 0.0;  // sum (gamma_k / 2) w_k^2 ||g_k||^2
  double drift = 0.0;       // 1/2 sum (gamma_{k+1} - gamma_k) ||s_{k+1}||^2
  double scale = 0.0;
  for (const auto& s : trace.steps) {
    const double ip = s.gamma * s.weight * s.grad_dot_s;
    const double gt = 0.5 * s.gamma * s.weight * s.weight * s.grad_sq;
    const double dt = 0.5 * (s.gamma_next - s.gamma) * s.s_sq_next;
    inner += ip;
    grad_terms += gt;
    drift += dt;
    scale += std::abs(ip) + std::abs(gt) + std::abs(dt);
  }
  const double last_term = trace.steps.empty()
                               ? 0.0
                               : 0.5 * trace.steps.back().gamma_next * trace.steps.back().s_sq_next;
  scale = std::max(scale, last_term);

  const double lhs = -inner;
  if (trace.kind == TraceKind::kAdaGrad) {
    // Matrix metric: the drift term is replaced by monotonicity of A.
    const double rhs = -last_term + grad_terms;
    return make_report("telescoping_coordinate", lhs, rhs, kInequalityAbsTol,
                       "n=" + std::to_string(trace.steps.size()));
  }
  const double rhs = -last_term + grad_terms + drift;
  const double residual = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  std::ostringstream ctx;
  ctx.precision(17);
  ctx << "lhs=" << lhs << " rhs=" << rhs << " n=" << trace.steps.size();
  return make_report("telescoping", residual, kIdentityRelTol, 0.0, ctx.str());
}

std::vector<BoundReport> check_gradient_sums(std::span<const double> grad_norms, double bound) {
  if (!(bound >= 0.0)) throw PreconditionError("G must be non-negative");
  for (double g : grad_norms)
    if (!(g >= 0.0) || g > bound) throw PreconditionError("gradient norm exceeds G");

  const double g2 = bound * bound;
  double sum_before = 0.0;  // sum_{i<k} ||g_i||^2
  double first = 0.0;
  double half_gamma = 0.0;
  double log_sum = 0.0;
  for (double g : grad_norms) {
    const double sq = g * g;
    if (sq > 0.0) {
      first += sq / std::sqrt(g2 + sum_before);
      half_gamma += 0.5 * sq / std::sqrt(g2 + sum_before);
      log_sum += sq / (g2 + sum_before + sq);
    }
    sum_before += sq;
  }
  const double n_plus_1 = static_cast<double>(grad_norms.size());
  const double gamma_last = g2 + sum_before > 0.0 ? 1.0 / std::sqrt(g2 + sum_before) : 0.0;
  const std::string ctx = "n+1=" + std::to_string(grad_norms.size());
  return {
      make_report("gradient_sum_sqrt", first, 2.0 * std::sqrt(sum_before), kInequalityAbsTol, ctx),
      make_report("gradient_sum_gamma", half_gamma, gamma_last * (g2 + sum_before),
                  kInequalityAbsTol, ctx),
      make_report("gradient_sum_log", log_sum,
                  grad_norms.empty() ? 0.0 : std::log(n_plus_1 + 1.0), kInequalityAbsTol, ctx),
  };
}

BoundReport check_mindk(std::span<const double> d_seq) {
  if (d_seq.size() < 2) throw PreconditionError("need d_0 .. d_{N+1} with N >= 0");
  for (std::size_t i = 0; i < d_seq.size(); ++i) {
    if (!(d_seq[i] > 0.0)) throw PreconditionError("d values must be positive");
    if (i > 0 && d_seq[i] < d_seq[i - 1]) throw PreconditionError("d values must be non-decreasing");
  }
  const std::size_t big_n = d_seq.size() - 2;
  const double growth = d_seq.back() / d_seq.front();
  const double n_plus_1 = static_cast<double>(big_n + 1);
  if (n_plus_1 < 2.0 * std::log2(growth)) {
    return skipped_report("min_ratio", "N+1 < 2 log2(d_{N+1}/d_0)");
  }
  double prefix = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= big_n; ++n) {
    prefix += d_seq[n];
    best = std::min(best, d_seq[n + 1] / prefix);
  }
  return make_report("min_ratio", best, 4.0 * log2_plus(growth) / n_plus_1, kInequalityAbsTol,
                     "N=" + std::to_string(big_n));
}

std::vector<BoundReport> check_rate_bounded_step(const convex::ConvexRunResult& run, double distance,
                                             double gradient_bound, double fstar) {
  if (run.trace.kind != TraceKind::kDualAveraging || !run.used_gradient_bound)
    throw PreconditionError("rate check needs a dual averaging run with G in the step size");
  if (run.trace.steps.empty() || !run.t) throw PreconditionError("run has no steps");

  const std::size_t n = run.trace.steps.size() - 1;
  const double d0 = run.d_sequence.front();
  const double n_plus_1 = static_cast<double>(n + 1);
  if (n_plus_1 - 1.0 < 2.0 * std::log2(distance / d0)) {
    return {skipped_report("rate_gradient_sum", "n < 2 log2(D/d0)"),
            skipped_report("rate_dg", "n < 2 log2(D/d0)")};
  }
  double grad_sum = 0.0;
  for (std::size_t k = 0; k <= *run.t; ++k) grad_sum += run.trace.steps[k].grad_sq;

  const double lhs = run.f_hat_t - fstar;
  const double d_last = run.d_sequence.back();
  const double rhs_sum = 16.0 * log2_plus(d_last / d0) / n_plus_1 * distance * std::sqrt(grad_sum);
  const double rhs_dg =
      16.0 * distance * gradient_bound * log2_plus(distance / d0) / std::sqrt(n_plus_1);
  const std::string ctx = "t=" + std::to_string(*run.t) + " n=" + std::to_string(n);
  return {make_report("rate_gradient_sum", lhs, rhs_sum, kInequalityAbsTol, ctx),
          make_report("rate_dg", lhs, rhs_dg, kInequalityAbsTol, ctx)};
}

BoundReport check_rate_plain_step(const convex::ConvexRunResult& run, double distance,
                                double gradient_bound, double fstar) {
  if (run.trace.kind != TraceKind::kDualAveraging || run.used_gradient_bound)
    throw PreconditionError("rate check needs a dual averaging run with plain step sizes");
  if (run.trace.steps.empty()) throw PreconditionError("run has no steps");
  const double n_plus_1 = static_cast<double>(run.trace.steps.size());
  const double dg = distance * gradient_bound;
  const double rhs = 16.0 * dg / std::sqrt(n_plus_1) +
                     8.0 * dg * gradient_bound / (n_plus_1 * run.first_grad_norm);
  return make_report("rate_asymptotic", run.f_hat - fstar, rhs, kInequalityAbsTol,
                     "n=" + std::to_string(run.trace.steps.size() - 1));
}

BoundReport check_dasym(const convex::ConvexRunResult& run, double distance,
                        double final_distance_to_solution) {
  if (!(final_distance_to_solution <= 0.01 * distance)) {
    return skipped_report("d_asymptotic", "not converged: ||x_n - x_*|| > 0.01 D");
  }
  const double threshold = distance / (1.0 + std::sqrt(3.0)) - 0.05 * distance;
  return make_report("d_asymptotic", threshold, run.d_sequence.back(), 0.0,
                     "threshold D/(1+sqrt3) less 0.05 D desk slack");
}

BoundReport check_option_dominance(std::span<const double> numerator_one,
                                   std::span<const double> numerator_two,
                                   std::span<const double> scale) {
  if (numerator_one.size() != numerator_two.size() || numerator_one.size() != scale.size())
    throw PreconditionError("numerator streams differ in length");
  if (numerator_one.empty()) return make_report("option_dominance", 0.0, 0.0, 0.0, "empty");
  std::size_t worst = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t i = 0; i < numerator_one.size(); ++i) {
    const double tol = kDominanceRelTol * scale[i];
    const double excess = numerator_one[i] - numerator_two[i];
    if (excess > tol) ok = false;
    const double rel = scale[i] > 0.0 ? excess / scale[i] : excess;
    if (rel > worst_excess) {
      worst_excess = rel;
      worst = i;
    }
  }
  BoundReport r = make_report("option_dominance", numerator_one[worst], numerator_two[worst],
                              kDominanceRelTol * scale[worst], at_step(worst));
  r.verdict = ok ? Verdict::kSatisfied : Verdict::kViolated;
  return r;
}

BoundReport check_option_dominance(const StepTrace& trace) {
  require_deterministic_kind(trace);
  std::vector<double> one, two, scale;
  for (const auto& s : trace.steps) {
    one.push_back(s.numerator_one);
    two.push_back(s.numerator_two);
    scale.push_back(std::max({0.5 * s.gamma_next * s.s_sq_next, 0.5 * s.weighted_grad_sum,
                              std::abs(s.numerator_two)}));
  }
  return check_option_dominance(one, two, scale);
}

BoundReport check_snorm_bound(const StepTrace& trace) {
  require_deterministic_kind(trace);
  if (trace.steps.empty()) return make_report("s_norm", 0.0, 0.0, kInequalityAbsTol, "empty");
  std::size_t worst = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StepDiagnostics& s = trace.steps[i];
    double rhs = 0.0;
    if (trace.kind == TraceKind::kAdaGrad) {
      rhs = 3.0 * s.d_next * s.a_norm1;
    } else {
      rhs = 2.0 * s.d_next / s.gamma_next + s.weighted_grad_sum / (2.0 * s.d_next);
    }
    const double slack = rhs - s.s_norm_next;
    if (slack < worst_slack) {
      worst_slack = slack;
      worst = i;
      worst_lhs = s.s_norm_next;
      worst_rhs = rhs;
    }
  }
  const char* name = trace.kind == TraceKind::kAdaGrad ? "s_norm_l1" : "s_norm";
  return make_report(name, worst_lhs, worst_rhs, kInequalityAbsTol, at_step(worst));
}

}  // namespace dadapt::analysis
