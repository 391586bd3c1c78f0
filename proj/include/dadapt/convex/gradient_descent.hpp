#pragma once

#include <cstddef>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::convex {

/// Gradient descent with D-Adaptation:
///   lambda_k = d_k / sqrt(G^2 + sum_{i<=k} ||g_i||^2),  x_{k+1} = x_k - lambda_k g_k.
/// The returned point is the lambda-weighted average of the iterates.
class DAdaptGradientDescent {
 public:
  /// Throws ConfigError unless d0 > 0 and G > 0.
  DAdaptGradientDescent(Vector x0, double d0, double gradient_bound);

  StepDiagnostics step(ConstView g, double weight_scale = 1.0);

  const Vector& x() const { return x_; }
  const Vector& s() const { return s_; }
  std::size_t k() const { return k_; }
  double d() const { return d_; }
  double dhat() const { return dhat_; }
  double gradient_bound() const { return gradient_bound_; }
  /// lambda used by the most recent step.
  double lambda() const { return lambda_; }

 private:
  Vector x_;
  Vector s_;
  std::size_t k_ = 0;
  double d_;
  double dhat_ = 0.0;
  double gradient_bound_;
  double lambda_ = 0.0;
  double sum_grad_sq_ = 0.0;
  double sum_lambda_sq_ = 0.0;
  double hypergrad_sum_ = 0.0;
};

}  // namespace dadapt::convex
