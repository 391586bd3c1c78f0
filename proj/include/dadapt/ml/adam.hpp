#pragma once

#include <cstddef>

#include "dadapt/convex/diagnostics.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::ml {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Decoupled weight decay, applied as x *= 1 - decay * d_k * gamma_k.
  double decay = 0.0;
};

/// Adam with D-Adaptation. There is no bias correction on m or v; the d
/// scale absorbs it.
///
///   m_{k+1} = beta1 m_k + (1 - beta1) d_k gamma_k g_k
///   v_{k+1} = beta2 v_k + (1 - beta2) g_k^2
///   A_{k+1} = diag(sqrt(v_{k+1}) + eps),  x_{k+1} = x_k - A_{k+1}^{-1} m_{k+1}
///   s_{k+1} = sqrt(beta2) s_k + (1 - sqrt(beta2)) d_k gamma_k g_k
///   r_{k+1} = sqrt(beta2) r_k + (1 - sqrt(beta2)) d_k gamma_k <g_k, s_k>_{A_{k+1}^{-1}}
///   dhat_{k+1} = r_{k+1} / ((1 - sqrt(beta2)) ||s_{k+1}||_1)
class DAdaptAdam {
 public:
  DAdaptAdam(Vector x0, double d0, AdamOptions options = {});

  convex::StepDiagnostics step(ConstView g, double gamma_k = 1.0);

  const Vector& x() const { return x_; }
  const Vector& m() const { return m_; }
  const Vector& v() const { return v_; }
  const Vector& s() const { return s_; }
  double r() const { return r_; }
  std::size_t k() const { return k_; }
  double d() const { return d_; }
  double dhat() const { return dhat_; }
  const AdamOptions& options() const { return options_; }

 private:
  Vector x_;
  Vector m_;
  Vector v_;
  Vector s_;
  double r_ = 0.0;
  std::size_t k_ = 0;
  double d_;
  double dhat_ = 0.0;
  AdamOptions options_;
};

}  // namespace dadapt::ml
