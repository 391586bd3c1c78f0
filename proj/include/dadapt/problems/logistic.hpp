#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "dadapt/core/problem.hpp"
#include "dadapt/problems/dataset.hpp"
#include "dadapt/problems/kernels.hpp"

namespace dadapt::problems {

/// Epoch-shuffled mini-batches: each epoch draws a fresh permutation from the
/// caller's stream and hands it out in order; the final short batch is kept.
class BatchSampler {
 public:
  BatchSampler(std::size_t examples, std::size_t batch_size);

  std::span<const std::size_t> next_batch(Rng& rng);

  std::size_t batch_size() const { return batch_size_; }
  std::size_t batches_per_epoch() const;

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_size_;
  std::size_t pos_ = 0;
};

/// Logistic regression on a shared dataset with a bias feature appended as
/// index dim + 1. batch_size = 0 means full-batch gradients.
class LogisticProblem final : public Problem {
 public:
  LogisticProblem(std::shared_ptr<const Dataset> data, std::size_t batch_size = 16);

  std::string name() const override { return "logistic"; }
  std::size_t dim() const override { return data_->dim() + 1; }
  double value(ConstView x) const override;
  Vector subgradient(ConstView x, Rng& rng) override;
  bool value_is_cheap() const override { return false; }
  bool stochastic() const override { return batch_size_ != 0; }
  double work_per_gradient() const override;

  std::span<const std::size_t> next_batch(Rng& rng);
  LossAndGradient value_grad(ConstView w, std::span<const std::size_t> batch) const;

  const Dataset& data() const { return *data_; }
  std::size_t batch_size() const { return batch_size_; }
  std::size_t steps_per_epoch() const;

 private:
  std::shared_ptr<const Dataset> data_;
  std::size_t batch_size_;
  BatchSampler sampler_;
};

}  // namespace dadapt::problems
