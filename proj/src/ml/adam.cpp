#include "dadapt/ml/adam.hpp"

#include <algorithm>
#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::ml {

DAdaptAdam::DAdaptAdam(Vector x0, double d0, AdamOptions options)
    : x_(std::move(x0)), m_(x_.size(), 0.0), v_(x_.size(), 0.0), s_(x_.size(), 0.0), d_(d0),
      options_(options) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) throw ConfigError("d0 must be positive and finite");
  if (!(options.beta1 >= 0.0 && options.beta1 < 1.0)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(options.beta2 > 0.0 && options.beta2 < 1.0)) throw ConfigError("beta2 must lie in (0, 1)");
  if (!(options.eps >= 0.0)) throw ConfigError("eps must be non-negative");
  if (!(options.decay >= 0.0)) throw ConfigError("decay must be non-negative");
}

convex::StepDiagnostics DAdaptAdam::step(ConstView g, double gamma_k) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  if (!(gamma_k > 0.0 && gamma_k <= 1.0)) throw PreconditionError("gamma_k must lie in (0, 1]");
  const auto& o = options_;
  const double sqrt_beta2 = std::sqrt(o.beta2);
  const double lr = d_ * gamma_k;

  convex::StepDiagnostics diag;
  diag.k = k_;
  diag.d = d_;
  diag.gamma = gamma_k;
  diag.weight = lr;

  double g_dot_s = 0.0;  // <g_k, s_k> in the A_{k+1}^{-1} metric, old s
  double s_l1 = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    m_[i] = o.beta1 * m_[i] + (1.0 - o.beta1) * lr * g[i];
    v_[i] = o.beta2 * v_[i] + (1.0 - o.beta2) * g[i] * g[i];
    const double a = std::sqrt(v_[i]) + o.eps;
    // A zero denominator only happens with eps = 0 and no gradient mass yet.
    const double inv_a = a > 0.0 ? 1.0 / a : 0.0;
    x_[i] -= m_[i] * inv_a;
    g_dot_s += g[i] * s_[i] * inv_a;
    s_[i] = sqrt_beta2 * s_[i] + (1.0 - sqrt_beta2) * lr * g[i];
    s_l1 += std::abs(s_[i]);
  }
  if (o.decay > 0.0) {
    const double shrink = 1.0 - o.decay * lr;
    for (double& xi : x_) xi *= shrink;
  }
  r_ = sqrt_beta2 * r_ + (1.0 - sqrt_beta2) * lr * g_dot_s;
  dhat_ = s_l1 > 0.0 ? r_ / ((1.0 - sqrt_beta2) * s_l1) : 0.0;
  d_ = std::max(d_, dhat_);
  ++k_;

  diag.grad_dot_s = g_dot_s;
  diag.d_next = d_;
  diag.dhat = dhat_;
  diag.s_norm_next = s_l1;
  diag.hypergrad_sum = r_;
  diag.numerator_two = r_;
  return diag;
}

}  // namespace dadapt::ml
