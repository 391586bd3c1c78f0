#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dadapt/core/problem.hpp"

namespace dadapt::problems {

/// f(x) = |x| in one dimension, started at x = 1. Subgradient at 0 is 0.
class AbsValueProblem final : public Problem {
 public:
  explicit AbsValueProblem(double start = 1.0) : start_(start) {}

  std::string name() const override { return "abs"; }
  std::size_t dim() const override { return 1; }
  double value(ConstView x) const override;
  Vector subgradient(ConstView x, Rng& rng) override;
  Vector default_start() const override { return {start_}; }
  std::optional<Vector> minimizer() const override { return Vector{0.0}; }
  std::optional<double> fstar() const override { return 0.0; }
  std::optional<double> lipschitz() const override { return 1.0; }
  std::optional<double> lipschitz_inf() const override { return 1.0; }

 private:
  double start_;
};

/// f(x) = sum_j |x_j - c_j|, separable; minimizer c, G = sqrt(p), G_inf = 1.
class SeparableAbsProblem final : public Problem {
 public:
  SeparableAbsProblem(Vector center, Vector start);

  std::string name() const override { return "separable_abs"; }
  std::size_t dim() const override { return center_.size(); }
  double value(ConstView x) const override;
  Vector subgradient(ConstView x, Rng& rng) override;
  Vector default_start() const override { return start_; }
  std::optional<Vector> minimizer() const override { return center_; }
  std::optional<double> fstar() const override { return 0.0; }
  std::optional<double> lipschitz() const override;
  std::optional<double> lipschitz_inf() const override { return 1.0; }

 private:
  Vector center_;
  Vector start_;
};

struct PiecewiseOptions {
  std::size_t min_dim = 1;
  std::size_t max_dim = 8;
  /// Pieces beyond dim + 1 that are strictly inactive at the minimizer.
  std::size_t extra_pieces = 4;
};

/// f(x) = max_i (<a_i, x> + b_i). Generated so that every "active" piece
/// passes through (x_*, f_*) and 0 is a strictly positive combination of the
/// active slopes, which makes x_* a minimizer. Extra pieces sit strictly below
/// f_* at x_*. The subgradient is the slope of the first attaining piece.
class PiecewiseMaxProblem final : public Problem {
 public:
  PiecewiseMaxProblem(std::vector<Vector> slopes, std::vector<double> offsets, Vector minimizer,
                      double fstar, Vector start);

  /// Random instance; deterministic in (seed, stream).
  static PiecewiseMaxProblem random(std::uint64_t seed, std::uint64_t stream,
                                    const PiecewiseOptions& options = {});

  std::string name() const override { return "piecewise"; }
  std::size_t dim() const override { return minimizer_.size(); }
  double value(ConstView x) const override;
  Vector subgradient(ConstView x, Rng& rng) override;
  Vector default_start() const override { return start_; }
  std::optional<Vector> minimizer() const override { return minimizer_; }
  std::optional<double> fstar() const override { return fstar_; }
  std::optional<double> lipschitz() const override { return lipschitz_; }
  std::optional<double> lipschitz_inf() const override { return lipschitz_inf_; }

  const std::vector<Vector>& slopes() const { return slopes_; }
  const std::vector<double>& offsets() const { return offsets_; }

 private:
  std::size_t argmax(ConstView x) const;

  std::vector<Vector> slopes_;
  std::vector<double> offsets_;
  Vector minimizer_;
  double fstar_;
  Vector start_;
  double lipschitz_;
  double lipschitz_inf_;
};

}  // namespace dadapt::problems
