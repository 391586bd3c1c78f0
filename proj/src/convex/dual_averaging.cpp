#include "dadapt/convex/dual_averaging.hpp"

#include <algorithm>
#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::convex {

DualAveraging::DualAveraging(Vector x0, double d0, DaOption option,
                             std::optional<double> gradient_bound)
    : x0_(std::move(x0)), x_(x0_), s_(x0_.size(), 0.0), d_(d0), option_(option),
      gradient_bound_(gradient_bound) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw ConfigError("d0 must be positive and finite");
  if (gradient_bound_ && !(*gradient_bound_ > 0.0))
    throw ConfigError("gradient bound G must be positive");
}

StepDiagnostics DualAveraging::step(ConstView g, double weight_scale) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  const double g_sq = norm_sq(g);
  if (k_ == 0) {
    if (gradient_bound_) {
      gamma_ = 1.0 / *gradient_bound_;
    } else {
      if (g_sq == 0.0) throw PreconditionError("first gradient is zero; nothing to adapt");
      gamma_ = 1.0 / std::sqrt(g_sq);
    }
  }

  StepDiagnostics diag;
  diag.k = k_;
  diag.d = d_;
  diag.gamma = gamma_;
  diag.weight = d_ * weight_scale;
  diag.grad_sq = g_sq;
  diag.grad_dot_s = dot(g, s_);

  weighted_grad_sum_ += gamma_ * diag.weight * diag.weight * g_sq;
  hypergrad_sum_ += gamma_ * diag.weight * diag.grad_dot_s;
  axpy(diag.weight, g, s_);
  sum_grad_sq_ += g_sq;

  const double g2 = gradient_bound_ ? *gradient_bound_ * *gradient_bound_ : 0.0;
  // Stays at gamma_0 while every gradient so far is zero.
  const double gamma_next = (g2 + sum_grad_sq_ > 0.0) ? 1.0 / std::sqrt(g2 + sum_grad_sq_) : gamma_;

  const double s_sq = norm_sq(s_);
  const double s_norm = std::sqrt(s_sq);
  const double num_one = 0.5 * (gamma_next * s_sq - weighted_grad_sum_);
  const double num_two = hypergrad_sum_;
  const double numerator = option_ == DaOption::kI ? num_one : num_two;
  dhat_ = s_norm > 0.0 ? numerator / s_norm : 0.0;
  d_ = std::max(d_, dhat_);

  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = x0_[i] - gamma_next * s_[i];
  gamma_ = gamma_next;
  ++k_;

  diag.d_next = d_;
  diag.dhat = dhat_;
  diag.gamma_next = gamma_next;
  diag.s_sq_next = s_sq;
  diag.s_norm_next = s_norm;
  diag.weighted_grad_sum = weighted_grad_sum_;
  diag.hypergrad_sum = hypergrad_sum_;
  diag.numerator_one = num_one;
  diag.numerator_two = num_two;
  return diag;
}

}  // namespace dadapt::convex
