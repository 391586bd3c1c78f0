#include "dadapt/harness/baselines.hpp"

#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::harness {

AdaGradNorm::AdaGradNorm(Vector x0, double distance)
    : x0_(std::move(x0)), x_(x0_), distance_(distance) {
  if (!(distance > 0.0)) throw ConfigError("AdaGrad-Norm needs D > 0");
}

double AdaGradNorm::step(ConstView g) {
  if (g.size() != x_.size()) throw PreconditionError("gradient dimension mismatch");
  sum_grad_sq_ += norm_sq(g);
  if (sum_grad_sq_ == 0.0) return 0.0;
  const double gamma = distance_ / std::sqrt(sum_grad_sq_);
  axpy(-gamma, g, x_);
  const double r = distance(x_, x0_);
  if (r > distance_) {
    const double scale = distance_ / r;
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = x0_[i] + scale * (x_[i] - x0_[i]);
  }
  return gamma;
}

Vector polyak_step(ConstView x, ConstView g, double fx, double fstar) {
  if (g.size() != x.size()) throw PreconditionError("gradient dimension mismatch");
  if (fx < fstar) throw PreconditionError("f(x) below the stated optimum; oracle is inconsistent");
  Vector out(x.begin(), x.end());
  if (fx == fstar) return out;
  const double g_sq = norm_sq(g);
  if (g_sq == 0.0) throw PreconditionError("zero subgradient at a point above the optimum");
  axpy(-(fx - fstar) / g_sq, g, out);
  return out;
}

FixedStepResult fixed_step_run(Problem& problem, double distance, double gradient_bound,
                               std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("fixed-step run needs n >= 1");
  if (!(distance > 0.0) || !(gradient_bound > 0.0)) throw ConfigError("fixed step needs D, G > 0");
  const double gamma = distance / (gradient_bound * std::sqrt(static_cast<double>(n)));
  Rng rng = seeded_rng(seed, 0);
  Vector x = problem.default_start();
  Vector sum(x.size(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    axpy(1.0, x, sum);
    const Vector g = problem.subgradient(x, rng);
    axpy(-gamma, g, x);
  }
  for (double& v : sum) v /= static_cast<double>(n);
  return {std::move(sum), std::move(x)};
}

PlainAdaGrad::PlainAdaGrad(Vector x0, double eps)
    : x_(std::move(x0)), sum_sq_(x_.size(), 0.0), eps_(eps) {}

void PlainAdaGrad::step(ConstView g, double lr) {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    sum_sq_[i] += g[i] * g[i];
    x_[i] -= lr * g[i] / (std::sqrt(sum_sq_[i]) + eps_);
  }
}

PlainAdam::PlainAdam(Vector x0, double beta1, double beta2, double eps, double decay)
    : x_(std::move(x0)), m_(x_.size(), 0.0), v_(x_.size(), 0.0), beta1_(beta1), beta2_(beta2),
      eps_(eps), decay_(decay) {}

void PlainAdam::step(ConstView g, double lr) {
  ++k_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(k_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(k_));
  for (std::size_t i = 0; i < x_.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g[i] * g[i];
    x_[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
    if (decay_ > 0.0) x_[i] *= 1.0 - lr * decay_;
  }
}

}  // namespace dadapt::harness
