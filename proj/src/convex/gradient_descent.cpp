#include "dadapt/convex/gradient_descent.hpp"

#include <algorithm>
#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::convex {

DAdaptGradientDescent::DAdaptGradientDescent(Vector x0, double d0, double gradient_bound)
    : x_(std::move(x0)), s_(x_.size(), 0.0), d_(d0), gradient_bound_(gradient_bound) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw ConfigError("d0 must be positive and finite");
  if (!(gradient_bound > 0.0)) throw ConfigError("gradient descent variant needs G > 0");
}

StepDiagnostics DAdaptGradientDescent::step(ConstView g, double weight_scale) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  const double g_sq = norm_sq(g);
  sum_grad_sq_ += g_sq;
  lambda_ = d_ * weight_scale /
            std::sqrt(gradient_bound_ * gradient_bound_ + sum_grad_sq_);

  StepDiagnostics diag;
  diag.k = k_;
  diag.d = d_;
  diag.weight = lambda_;
  diag.grad_sq = g_sq;
  diag.grad_dot_s = dot(g, s_);

  sum_lambda_sq_ += lambda_ * lambda_ * g_sq;
  hypergrad_sum_ += lambda_ * diag.grad_dot_s;
  axpy(lambda_, g, s_);
  axpy(-lambda_, g, x_);

  const double s_sq = norm_sq(s_);
  const double s_norm = std::sqrt(s_sq);
  const double num_one = 0.5 * (s_sq - sum_lambda_sq_);
  dhat_ = s_norm > 0.0 ? num_one / s_norm : 0.0;
  d_ = std::max(d_, dhat_);
  ++k_;

  diag.d_next = d_;
  diag.dhat = dhat_;
  diag.s_sq_next = s_sq;
  diag.s_norm_next = s_norm;
  diag.weighted_grad_sum = sum_lambda_sq_;
  diag.hypergrad_sum = hypergrad_sum_;
  diag.numerator_one = num_one;
  diag.numerator_two = hypergrad_sum_;
  return diag;
}

}  // namespace dadapt::convex
