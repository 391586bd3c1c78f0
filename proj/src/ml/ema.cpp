#include "dadapt/ml/ema.hpp"

#include "dadapt/core/errors.hpp"

namespace dadapt::ml {

EmaPair::EmaPair(double c) : c_(c) {
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("EMA constant must lie in (0, 1)");
}

void EmaPair::step(double g) {
  u_ += g / c_pow_;
  u_hat_ = c_ * u_hat_ + (1.0 - c_) * g;
  c_pow_ *= c_;
  ++k_;
}

double EmaPair::implied_ema() const {
  if (k_ == 0) return 0.0;
  // c_pow_ is c^k; the identity after k updates uses c^{k-1}.
  return (c_pow_ / c_) * (1.0 - c_) * u_;
}

}  // namespace dadapt::ml
