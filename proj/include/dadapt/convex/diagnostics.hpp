#pragma once

#include <cstddef>
#include <vector>

namespace dadapt::convex {

enum class TraceKind { kDualAveraging, kGradientDescent, kAdaGrad, kStochastic };

/// Scalars describing one step k -> k+1. Enough to re-evaluate every bound in
/// the analysis module without keeping the vectors around.
///
/// For AdaGrad the norms are the weighted ones: grad_sq is ||g_k||^2 in the
/// A_k^{-1} metric, grad_dot_s is <g_k, A_k^{-1} s_k>, s_sq_next uses
/// A_{k+1}^{-1} and s_norm_next is the l1 norm. gamma is 1 there.
struct StepDiagnostics {
  std::size_t k = 0;
  double d = 0.0;          // d_k
  double d_next = 0.0;     // d_{k+1}
  double dhat = 0.0;       // dhat_{k+1} from the selected estimator
  double weight = 0.0;     // weight of g_k in s (d_k, or lambda_k for GD)
  double gamma = 1.0;      // gamma_k
  double gamma_next = 1.0; // gamma_{k+1}
  double grad_sq = 0.0;
  double grad_dot_s = 0.0;
  double s_sq_next = 0.0;
  double s_norm_next = 0.0;
  double weighted_grad_sum = 0.0;  // sum_{i<=k} gamma_i weight_i^2 grad_sq_i
  double hypergrad_sum = 0.0;      // sum_{i<=k} gamma_i weight_i grad_dot_s_i
  double numerator_one = 0.0;      // (gamma_{k+1} s_sq_next - weighted_grad_sum) / 2
  double numerator_two = 0.0;      // hypergrad_sum
  double a_norm1 = 0.0;            // ||a_{k+1}||_1, AdaGrad only
};

struct StepTrace {
  TraceKind kind = TraceKind::kDualAveraging;
  std::vector<StepDiagnostics> steps;
};

}  // namespace dadapt::convex
