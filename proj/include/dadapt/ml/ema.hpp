#pragma once

#include <cstddef>

namespace dadapt::ml {

/// Paired running sums for a constant c in (0, 1):
///   u_{k+1} = u_k + g_k / c^k        (weighted sum)
///   uhat_{k+1} = c uhat_k + (1 - c) g_k   (exponential moving average)
/// Starting both from zero keeps uhat_{k+1} = c^k (1 - c) u_{k+1}.
class EmaPair {
 public:
  /// Throws ConfigError unless 0 < c < 1.
  explicit EmaPair(double c);

  void step(double g);

  double c() const { return c_; }
  double u() const { return u_; }
  double u_hat() const { return u_hat_; }
  std::size_t k() const { return k_; }
  /// c^{k-1} (1 - c) u_k after k >= 1 updates: the EMA implied by the weighted sum.
  double implied_ema() const;

 private:
  double c_;
  double u_ = 0.0;
  double u_hat_ = 0.0;
  double c_pow_ = 1.0;  // c^k
  std::size_t k_ = 0;
};

}  // namespace dadapt::ml
