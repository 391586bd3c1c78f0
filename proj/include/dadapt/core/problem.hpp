#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "dadapt/core/rng.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt {

/// First-order oracle for a convex objective, with whatever ground truth is
/// known for verification.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double value(ConstView x) const = 0;
  /// A (possibly stochastic) subgradient at x. Deterministic problems ignore rng.
  virtual Vector subgradient(ConstView x, Rng& rng) = 0;

  /// Default starting point for runs that do not specify one.
  virtual Vector default_start() const { return Vector(dim(), 0.0); }

  virtual std::optional<Vector> minimizer() const { return std::nullopt; }
  virtual std::optional<double> fstar() const { return std::nullopt; }
  virtual std::optional<double> lipschitz() const { return std::nullopt; }
  virtual std::optional<double> lipschitz_inf() const { return std::nullopt; }

  /// Whether value() is cheap enough to evaluate at every step.
  virtual bool value_is_cheap() const { return true; }
  virtual bool stochastic() const { return false; }
  /// Oracle work charged per subgradient call (e.g. examples touched).
  virtual double work_per_gradient() const { return 1.0; }
};

}  // namespace dadapt
