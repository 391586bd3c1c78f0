#include "dadapt/problems/kernels.hpp"

#include <cmath>
#include <algorithm>

namespace dadapt::problems {

namespace {

constexpr std::size_t kBlock = 256;

double margin_of(const Dataset& data, ConstView w, std::size_t i) {
  double z = w.back();  // bias
  for (const auto& f : data.row(i)) z += w[f.index - 1] * f.value;
  return data.label(i) * z;
}

// Adds example i's loss to `value` and its gradient to `grad`.
void accumulate(const Dataset& data, ConstView w, std::size_t i, double& value,
                std::span<double> grad) {
  const double m = margin_of(data, w, i);
  value += logistic_loss(m);
  const double coef = logistic_slope(m) * data.label(i);
  for (const auto& f : data.row(i)) grad[f.index - 1] += coef * f.value;
  grad.back() += coef;
}

}  // namespace

double logistic_loss(double margin) {
  // log(1 + e^{-m}) = max(-m, 0) + log1p(e^{-|m|})
  return std::max(-margin, 0.0) + std::log1p(std::exp(-std::abs(margin)));
}

double logistic_slope(double margin) {
  // -sigma(-m) = -1 / (1 + e^{m}), written to avoid exp overflow.
  if (margin >= 0.0) {
    const double e = std::exp(-margin);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(margin));
}

LossAndGradient logistic_batch_serial(const Dataset& data, ConstView w,
                                      std::span<const std::size_t> batch) {
  LossAndGradient out;
  out.gradient.assign(w.size(), 0.0);
  for (std::size_t i : batch) accumulate(data, w, i, out.value, out.gradient);
  const double inv = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
  out.value *= inv;
  for (double& v : out.gradient) v *= inv;
  return out;
}

LossAndGradient logistic_full_serial(const Dataset& data, ConstView w) {
  LossAndGradient out;
  out.gradient.assign(w.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) accumulate(data, w, i, out.value, out.gradient);
  const double inv = data.empty() ? 0.0 : 1.0 / static_cast<double>(data.size());
  out.value *= inv;
  for (double& v : out.gradient) v *= inv;
  return out;
}

double logistic_value_serial(const Dataset& data, ConstView w) {
  double value = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) value += logistic_loss(margin_of(data, w, i));
  return data.empty() ? 0.0 : value / static_cast<double>(data.size());
}

LossAndGradient logistic_full_parallel(const Dataset& data, ConstView w) {
  const std::size_t n = data.size();
  const std::size_t p = w.size();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_values(blocks, 0.0);
  std::vector<double> block_grads(blocks * p, 0.0);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    std::span<double> grad(block_grads.data() + b * p, p);
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) accumulate(data, w, i, block_values[b], grad);
  }

  LossAndGradient out;
  out.gradient.assign(p, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    out.value += block_values[b];
    axpy(1.0, std::span<const double>(block_grads.data() + b * p, p), out.gradient);
  }
  const double inv = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
  out.value *= inv;
  for (double& v : out.gradient) v *= inv;
  return out;
}

double logistic_value_parallel(const Dataset& data, ConstView w) {
  const std::size_t n = data.size();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_values(blocks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    double acc = 0.0;
    for (std::size_t i = b * kBlock; i < end; ++i) acc += logistic_loss(margin_of(data, w, i));
    block_values[b] = acc;
  }

  double value = 0.0;
  for (double v : block_values) value += v;
  return n == 0 ? 0.0 : value / static_cast<double>(n);
}

}  // namespace dadapt::problems
