#include "dadapt/convex/adagrad.hpp"

#include <algorithm>
#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::convex {

DAdaptAdaGrad::DAdaptAdaGrad(Vector x0, double d0, double gradient_bound_inf)
    : x0_(std::move(x0)), x_(x0_), s_(x0_.size(), 0.0), a_(x0_.size(), gradient_bound_inf),
      d_(d0) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw ConfigError("d0 must be positive and finite");
  if (!(gradient_bound_inf > 0.0)) throw ConfigError("AdaGrad variant needs G_inf > 0");
}

StepDiagnostics DAdaptAdaGrad::step(ConstView g, double weight_scale) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  const std::size_t p = x_.size();
  const double weight = d_ * weight_scale;

  // Metric terms against the old a.
  double g_sq = 0.0;
  double g_dot_s = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    g_sq += g[i] * g[i] / a_[i];
    g_dot_s += g[i] * s_[i] / a_[i];
  }

  StepDiagnostics diag;
  diag.k = k_;
  diag.d = d_;
  diag.weight = weight;
  diag.grad_sq = g_sq;
  diag.grad_dot_s = g_dot_s;

  weighted_grad_sum_ += weight * weight * g_sq;
  hypergrad_sum_ += weight * g_dot_s;

  double s_sq = 0.0;
  double s_l1 = 0.0;
  double a_l1 = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    s_[i] += weight * g[i];
    a_[i] = std::sqrt(a_[i] * a_[i] + g[i] * g[i]);
    s_sq += s_[i] * s_[i] / a_[i];
    s_l1 += std::abs(s_[i]);
    a_l1 += a_[i];
    x_[i] = x0_[i] - s_[i] / a_[i];
  }

  const double num_one = 0.5 * (s_sq - weighted_grad_sum_);
  dhat_ = s_l1 > 0.0 ? num_one / s_l1 : 0.0;
  d_ = std::max(d_, dhat_);
  ++k_;

  diag.d_next = d_;
  diag.dhat = dhat_;
  diag.s_sq_next = s_sq;
  diag.s_norm_next = s_l1;
  diag.weighted_grad_sum = weighted_grad_sum_;
  diag.hypergrad_sum = hypergrad_sum_;
  diag.numerator_one = num_one;
  diag.numerator_two = hypergrad_sum_;
  diag.a_norm1 = a_l1;
  return diag;
}

}  // namespace dadapt::convex
