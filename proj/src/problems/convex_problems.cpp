#include "dadapt/problems/convex_problems.hpp"

#include <cmath>

#include "dadapt/core/errors.hpp"

namespace dadapt::problems {

double AbsValueProblem::value(ConstView x) const { return std::abs(x[0]); }

Vector AbsValueProblem::subgradient(ConstView x, Rng&) {
  return {x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0)};
}

SeparableAbsProblem::SeparableAbsProblem(Vector center, Vector start)
    : center_(std::move(center)), start_(std::move(start)) {
  if (center_.size() != start_.size() || center_.empty())
    throw ConfigError("center and start must share a positive dimension");
}

double SeparableAbsProblem::value(ConstView x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) v += std::abs(x[i] - center_[i]);
  return v;
}

Vector SeparableAbsProblem::subgradient(ConstView x, Rng&) {
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - center_[i];
    g[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
  }
  return g;
}

std::optional<double> SeparableAbsProblem::lipschitz() const {
  return std::sqrt(static_cast<double>(center_.size()));
}

PiecewiseMaxProblem::PiecewiseMaxProblem(std::vector<Vector> slopes, std::vector<double> offsets,
                                         Vector minimizer, double fstar, Vector start)
    : slopes_(std::move(slopes)), offsets_(std::move(offsets)), minimizer_(std::move(minimizer)),
      fstar_(fstar), start_(std::move(start)), lipschitz_(0.0), lipschitz_inf_(0.0) {
  if (slopes_.empty() || slopes_.size() != offsets_.size())
    throw ConfigError("piecewise problem needs matching slopes and offsets");
  for (const auto& a : slopes_) {
    if (a.size() != minimizer_.size()) throw ConfigError("slope dimension mismatch");
    lipschitz_ = std::max(lipschitz_, norm(a));
    lipschitz_inf_ = std::max(lipschitz_inf_, norm_inf(a));
  }
  if (start_.size() != minimizer_.size()) throw ConfigError("start dimension mismatch");
}

PiecewiseMaxProblem PiecewiseMaxProblem::random(std::uint64_t seed, std::uint64_t stream,
                                                const PiecewiseOptions& options) {
  if (options.min_dim == 0 || options.max_dim < options.min_dim)
    throw ConfigError("invalid piecewise dimension range");
  Rng rng = seeded_rng(seed, stream);
  const std::size_t p = options.min_dim + rng.below(options.max_dim - options.min_dim + 1);

  Vector x_star(p);
  for (double& v : x_star) v = rng.normal();
  const double f_star = rng.uniform(-1.0, 1.0);

  // p random slopes plus one closing slope that makes 0 a strictly positive
  // combination of all p + 1.
  std::vector<Vector> slopes;
  Vector closing(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    Vector a(p);
    for (double& v : a) v = rng.normal();
    axpy(-rng.uniform(0.2, 1.0), a, closing);
    slopes.push_back(std::move(a));
  }
  slopes.push_back(std::move(closing));

  std::vector<double> offsets;
  for (const auto& a : slopes) offsets.push_back(f_star - dot(a, x_star));

  for (std::size_t e = 0; e < options.extra_pieces; ++e) {
    Vector a(p);
    for (double& v : a) v = rng.normal();
    offsets.push_back(f_star - dot(a, x_star) - rng.uniform(0.1, 1.0));
    slopes.push_back(std::move(a));
  }

  Vector direction(p);
  for (double& v : direction) v = rng.normal();
  const double radius = rng.uniform(0.5, 5.0) / norm(direction);
  Vector start = x_star;
  axpy(radius, direction, start);

  return PiecewiseMaxProblem(std::move(slopes), std::move(offsets), std::move(x_star), f_star,
                             std::move(start));
}

std::size_t PiecewiseMaxProblem::argmax(ConstView x) const {
  std::size_t best = 0;
  double best_v = dot(slopes_[0], x) + offsets_[0];
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    const double v = dot(slopes_[i], x) + offsets_[i];
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

double PiecewiseMaxProblem::value(ConstView x) const {
  const std::size_t i = argmax(x);
  return dot(slopes_[i], x) + offsets_[i];
}

Vector PiecewiseMaxProblem::subgradient(ConstView x, Rng&) { return slopes_[argmax(x)]; }

}  // namespace dadapt::problems
