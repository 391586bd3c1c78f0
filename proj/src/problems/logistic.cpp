#include "dadapt/problems/logistic.hpp"

#include <numeric>

#include "dadapt/core/errors.hpp"

namespace dadapt::problems {

BatchSampler::BatchSampler(std::size_t examples, std::size_t batch_size)
    : order_(examples), batch_size_(batch_size == 0 ? examples : batch_size) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
}

std::size_t BatchSampler::batches_per_epoch() const {
  if (order_.empty()) return 0;
  return (order_.size() + batch_size_ - 1) / batch_size_;
}

std::span<const std::size_t> BatchSampler::next_batch(Rng& rng) {
  if (order_.empty()) throw PreconditionError("cannot sample batches from an empty dataset");
  if (pos_ >= order_.size()) pos_ = 0;
  if (pos_ == 0) rng.shuffle(std::span<std::size_t>(order_));
  const std::size_t len = std::min(batch_size_, order_.size() - pos_);
  std::span<const std::size_t> batch(order_.data() + pos_, len);
  pos_ += len;
  return batch;
}

LogisticProblem::LogisticProblem(std::shared_ptr<const Dataset> data, std::size_t batch_size)
    : data_(std::move(data)), batch_size_(batch_size), sampler_(data_->size(), batch_size) {
  if (data_->empty()) throw ConfigError("logistic problem needs a non-empty dataset");
}

double LogisticProblem::value(ConstView x) const { return logistic_value_parallel(*data_, x); }

Vector LogisticProblem::subgradient(ConstView x, Rng& rng) {
  if (batch_size_ == 0) return logistic_full_parallel(*data_, x).gradient;
  return logistic_batch_serial(*data_, x, next_batch(rng)).gradient;
}

double LogisticProblem::work_per_gradient() const {
  return batch_size_ == 0 ? static_cast<double>(data_->size())
                          : static_cast<double>(std::min(batch_size_, data_->size()));
}

std::span<const std::size_t> LogisticProblem::next_batch(Rng& rng) {
  return sampler_.next_batch(rng);
}

LossAndGradient LogisticProblem::value_grad(ConstView w,
                                            std::span<const std::size_t> batch) const {
  if (batch.empty()) throw PreconditionError("batch must be non-empty");
  for (std::size_t i : batch)
    if (i >= data_->size()) throw PreconditionError("batch index out of range");
  if (w.size() != dim()) throw PreconditionError("weight dimension mismatch");
  return logistic_batch_serial(*data_, w, batch);
}

std::size_t LogisticProblem::steps_per_epoch() const { return sampler_.batches_per_epoch(); }

}  // namespace dadapt::problems
