#pragma once

#include <span>
#include <vector>

#include "dadapt/analysis/report.hpp"
#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/convex/run.hpp"

namespace dadapt::analysis {

// Tolerances shared by the checkers.
inline constexpr double kIdentityRelTol = 1e-8;
inline constexpr double kInequalityAbsTol = 1e-9;
inline constexpr double kDominanceRelTol = 1e-12;

/// Largest dhat over the trace against D (absolute tolerance 1e-9).
/// Throws PreconditionError on an empty trace.
BoundReport check_d_lower_bound(const convex::StepTrace& trace, double distance);

/// Every d_{k+1} <= max(d_0, D) (absolute tolerance 1e-9).
BoundReport check_d_ceiling(const convex::StepTrace& trace, double d0, double distance);

/// Inner-product expansion of the dual-averaging sums. For Euclidean traces
/// (dual averaging, gradient descent) the identity
///   -sum gamma_k w_k <g_k, s_k> = -(gamma_{n+1}/2)||s_{n+1}||^2
///        + sum (gamma_k/2) w_k^2 ||g_k||^2 + 1/2 sum (gamma_{k+1}-gamma_k)||s_{k+1}||^2
/// is checked with relative residual as lhs against 1e-8. For AdaGrad traces
/// the matrix-metric version is an inequality and is checked as such.
/// Throws PreconditionError if step indices are not contiguous from 0, or
/// for stochastic traces.
BoundReport check_telescoping(const convex::StepTrace& trace);

/// Prefix sums of the gradient error term for a sequence of gradient norms
/// bounded by G. Returns three reports:
///   sum ||g_k||^2 / sqrt(G^2 + sum_{i<k}||g_i||^2) <= 2 sqrt(sum ||g_k||^2)
///   sum (gamma_k/2)||g_k||^2 <= gamma_{n+1} (G^2 + sum ||g_k||^2)
///   sum ||g_k||^2 / (G^2 + sum_{i<=k}||g_i||^2) <= log(n + 2)
/// Throws PreconditionError when some norm exceeds G.
std::vector<BoundReport> check_gradient_sums(std::span<const double> grad_norms, double bound);

/// min_{n<=N} d_{n+1} / sum_{k<=n} d_k <= 4 log2+(d_{N+1}/d_0) / (N+1).
/// Skipped when N+1 < 2 log2(d_{N+1}/d_0). Throws PreconditionError for
/// sequences that are shorter than 2, non-positive or decreasing.
BoundReport check_mindk(std::span<const double> d_seq);

/// Non-asymptotic rate at the selected return index, for runs that used G in
/// the step-size denominator. Returns two reports: the gradient-sum form and
/// the DG / sqrt(n+1) form. Throws PreconditionError for other runs.
std::vector<BoundReport> check_rate_bounded_step(const convex::ConvexRunResult& run, double distance,
                                             double gradient_bound, double fstar);

/// f(xhat_n) - f_* <= 16 DG / sqrt(n+1) + 8 DG^2 / ((n+1) ||g_0||), plain step sizes.
BoundReport check_rate_plain_step(const convex::ConvexRunResult& run, double distance,
                                double gradient_bound, double fstar);

/// Final d >= D/(1+sqrt(3)) - 0.05 D, gated on ||x_n - x_*|| <= 0.01 D.
BoundReport check_dasym(const convex::ConvexRunResult& run, double distance,
                        double final_distance_to_solution);

/// Option II numerator >= Option I numerator at every prefix, with relative
/// tolerance 1e-12 against the magnitudes of the terms. The scale sequence
/// holds, per step, the largest term that enters the two numerators.
/// Throws PreconditionError if the sequences differ in length.
BoundReport check_option_dominance(std::span<const double> numerator_one,
                                   std::span<const double> numerator_two,
                                   std::span<const double> scale);
BoundReport check_option_dominance(const convex::StepTrace& trace);

/// s-norm bounds at every step: ||s_{n+1}|| <= 2 d_{n+1}/gamma_{n+1} +
/// sum gamma_k w_k^2 ||g_k||^2 / (2 d_{n+1}) for dual averaging and gradient
/// descent (gamma = 1), ||s_{n+1}||_1 <= 3 d_{n+1} ||a_{n+1}||_1 for AdaGrad.
/// Throws PreconditionError for stochastic traces.
BoundReport check_snorm_bound(const convex::StepTrace& trace);

}  // namespace dadapt::analysis
