#pragma once

#include <cstddef>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::convex {

/// Coordinate-wise AdaGrad with D-Adaptation in the l-infinity geometry.
///
/// a starts at [G_inf, ..., G_inf] and grows as a_{k+1}^2 = a_k^2 + g_k^2; the
/// iterate is x_{k+1} = x_0 - A_{k+1}^{-1} s_{k+1} with A = diag(a). d estimates
/// ||x_0 - x_*||_inf from below.
class DAdaptAdaGrad {
 public:
  /// Throws ConfigError unless d0 > 0 and G_inf > 0.
  DAdaptAdaGrad(Vector x0, double d0, double gradient_bound_inf);

  StepDiagnostics step(ConstView g, double weight_scale = 1.0);

  const Vector& x0() const { return x0_; }
  const Vector& x() const { return x_; }
  const Vector& s() const { return s_; }
  const Vector& a() const { return a_; }
  std::size_t k() const { return k_; }
  double d() const { return d_; }
  double dhat() const { return dhat_; }

 private:
  Vector x0_;
  Vector x_;
  Vector s_;
  Vector a_;
  std::size_t k_ = 0;
  double d_;
  double dhat_ = 0.0;
  double weighted_grad_sum_ = 0.0;
  double hypergrad_sum_ = 0.0;
};

}  // namespace dadapt::convex
