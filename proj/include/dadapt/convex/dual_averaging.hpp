#pragma once

#include <cstddef>
#include <optional>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::convex {

/// Which lower-bound estimator drives d.
///   I:  (gamma_{k+1} ||s_{k+1}||^2 - sum gamma_i d_i^2 ||g_i||^2) / (2 ||s_{k+1}||)
///   II: (sum d_i gamma_i <g_i, s_i>) / ||s_{k+1}||
enum class DaOption { kI, kII };

/// Dual averaging with D-Adaptation.
///
/// Step sizes follow the AdaGrad-norm sequence gamma_{k+1} = 1/sqrt(sum ||g_i||^2),
/// with gamma_0 = 1/||g_0||. When a gradient bound G is supplied the sequence
/// becomes gamma_{k+1} = 1/sqrt(G^2 + sum ||g_i||^2) and gamma_0 = 1/G, which is
/// the form the non-asymptotic rate is proven for.
///
/// Accumulators consume the pre-update d_k and gamma_k; the estimate uses the
/// post-update s_{k+1} and gamma_{k+1}. When ||s_{k+1}|| = 0 the estimate is 0.
class DualAveraging {
 public:
  DualAveraging(Vector x0, double d0, DaOption option = DaOption::kI,
                std::optional<double> gradient_bound = std::nullopt);

  /// Advances one step with subgradient g taken at x(). `weight_scale` multiplies
  /// the weight d_k of g in s (1.0 reproduces the plain algorithm). The first
  /// gradient must be nonzero; the driver handles that exit.
  StepDiagnostics step(ConstView g, double weight_scale = 1.0);

  const Vector& x0() const { return x0_; }
  const Vector& x() const { return x_; }
  const Vector& s() const { return s_; }
  std::size_t k() const { return k_; }
  double d() const { return d_; }
  double dhat() const { return dhat_; }
  /// gamma_k for the next step; 0 before the first gradient is seen.
  double gamma() const { return gamma_; }
  DaOption option() const { return option_; }
  std::optional<double> gradient_bound() const { return gradient_bound_; }

 private:
  Vector x0_;
  Vector x_;
  Vector s_;
  std::size_t k_ = 0;
  double d_;
  double dhat_ = 0.0;
  double gamma_ = 0.0;
  double sum_grad_sq_ = 0.0;
  double weighted_grad_sum_ = 0.0;
  double hypergrad_sum_ = 0.0;
  DaOption option_;
  std::optional<double> gradient_bound_;
};

}  // namespace dadapt::convex
