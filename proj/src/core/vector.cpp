#include "dadapt/core/vector.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace dadapt {

double dot(ConstView a, ConstView b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm_sq(ConstView a) { return dot(a, a); }

double norm(ConstView a) { return std::sqrt(norm_sq(a)); }

double norm1(ConstView a) {
  double acc = 0.0;
  for (double v : a) acc += std::abs(v);
  return acc;
}

double norm_inf(ConstView a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, ConstView x, std::span<double> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double distance(ConstView a, ConstView b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double distance_inf(ConstView a, ConstView b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool all_finite(ConstView a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

bool is_zero(ConstView a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

}  // namespace dadapt
