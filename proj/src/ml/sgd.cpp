#include "dadapt/ml/sgd.hpp"

#include <algorithm>
#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::ml {

DAdaptSgd::DAdaptSgd(Vector x0, double d0, double beta, std::optional<double> gradient_bound)
    : x_(std::move(x0)), z_(x_), s_(x_.size(), 0.0), d_(d0), beta_(beta),
      gradient_bound_(gradient_bound) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw ConfigError("d0 must be positive and finite");
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("momentum beta must lie in [0, 1)");
  if (gradient_bound_ && !(*gradient_bound_ > 0.0))
    throw ConfigError("gradient bound G must be positive");
}

convex::StepDiagnostics DAdaptSgd::step(ConstView g, double gamma_k) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  if (!(gamma_k > 0.0 && gamma_k <= 1.0)) throw PreconditionError("gamma_k must lie in (0, 1]");
  convex::StepDiagnostics diag;
  diag.k = k_;
  diag.d = d_;
  diag.gamma = gamma_k;
  if (!gradient_bound_) {
    if (is_zero(g)) {
      ++k_;
      diag.d_next = d_;
      diag.dhat = dhat_;
      return diag;
    }
    gradient_bound_ = norm(g);
  }

  const double lambda = d_ * gamma_k / *gradient_bound_;
  diag.weight = lambda;
  diag.grad_sq = norm_sq(g);
  diag.grad_dot_s = dot(g, s_);
  hypergrad_sum_ += lambda * diag.grad_dot_s;
  axpy(lambda, g, s_);
  axpy(-lambda, g, z_);
  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = beta_ * x_[i] + (1.0 - beta_) * z_[i];

  const double s_norm = norm(s_);
  dhat_ = s_norm > 0.0 ? 2.0 * hypergrad_sum_ / s_norm : 0.0;
  d_ = std::max(d_, dhat_);
  ++k_;

  diag.d_next = d_;
  diag.dhat = dhat_;
  diag.s_norm_next = s_norm;
  diag.s_sq_next = s_norm * s_norm;
  diag.hypergrad_sum = hypergrad_sum_;
  diag.numerator_two = hypergrad_sum_;
  return diag;
}

}  // namespace dadapt::ml
