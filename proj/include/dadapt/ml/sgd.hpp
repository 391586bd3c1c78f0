#pragma once

#include <cstddef>
#include <optional>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::ml {

/// SGD with D-Adaptation and primal-averaging momentum.
///
///   lambda_k = d_k gamma_k / G
///   s_{k+1} = s_k + lambda_k g_k,   z_{k+1} = z_k - lambda_k g_k
///   x_{k+1} = beta x_k + (1 - beta) z_{k+1}
///   dhat_{k+1} = 2 sum lambda_i <g_i, s_i> / ||s_{k+1}||
///
/// G defaults to the norm of the first nonzero gradient. Steps that arrive
/// before G is known with a zero gradient only advance k.
class DAdaptSgd {
 public:
  DAdaptSgd(Vector x0, double d0, double beta = 0.9,
            std::optional<double> gradient_bound = std::nullopt);

  convex::StepDiagnostics step(ConstView g, double gamma_k = 1.0);

  const Vector& x() const { return x_; }
  const Vector& z() const { return z_; }
  const Vector& s() const { return s_; }
  std::size_t k() const { return k_; }
  double d() const { return d_; }
  double dhat() const { return dhat_; }
  std::optional<double> gradient_bound() const { return gradient_bound_; }
  double beta() const { return beta_; }

 private:
  Vector x_;
  Vector z_;
  Vector s_;
  std::size_t k_ = 0;
  double d_;
  double dhat_ = 0.0;
  double beta_;
  std::optional<double> gradient_bound_;
  double hypergrad_sum_ = 0.0;
};

}  // namespace dadapt::ml
