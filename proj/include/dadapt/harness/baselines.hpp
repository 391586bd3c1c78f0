#pragma once

#include <cstddef>
#include <cstdint>

#include "dadapt/core/problem.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::harness {

/// AdaGrad-Norm with known D: x <- P(x - D / sqrt(sum ||g_i||^2) g), where P
/// projects onto the ball of radius D around x_0.
class AdaGradNorm {
 public:
  AdaGradNorm(Vector x0, double distance);

  /// Returns the step size used (0 while every gradient so far is zero).
  double step(ConstView g);

  const Vector& x() const { return x_; }
  const Vector& x0() const { return x0_; }

 private:
  Vector x0_;
  Vector x_;
  double distance_;
  double sum_grad_sq_ = 0.0;
};

/// One Polyak step x - (f(x) - f_*) / ||g||^2 g. Throws PreconditionError when
/// fx < fstar or when g = 0 with fx > fstar.
Vector polyak_step(ConstView x, ConstView g, double fx, double fstar);

struct FixedStepResult {
  Vector x_hat;   // uniform average of x_0 .. x_{n-1}
  Vector x_last;  // x_n
};

/// n subgradient steps of size D / (G sqrt(n)) from the problem's start.
FixedStepResult fixed_step_run(Problem& problem, double distance, double gradient_bound,
                               std::size_t n, std::uint64_t seed = 0);

/// Diagonal AdaGrad: x <- x - lr g / (sqrt(sum g^2) + eps).
class PlainAdaGrad {
 public:
  PlainAdaGrad(Vector x0, double eps = 1e-8);
  void step(ConstView g, double lr);
  const Vector& x() const { return x_; }

 private:
  Vector x_;
  Vector sum_sq_;
  double eps_;
};

/// Adam with bias correction and decoupled weight decay x *= 1 - lr * decay.
class PlainAdam {
 public:
  PlainAdam(Vector x0, double beta1, double beta2, double eps, double decay);
  void step(ConstView g, double lr);
  const Vector& x() const { return x_; }

 private:
  Vector x_;
  Vector m_;
  Vector v_;
  double beta1_;
  double beta2_;
  double eps_;
  double decay_;
  std::size_t k_ = 0;
};

}  // namespace dadapt::harness
