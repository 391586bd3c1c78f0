#pragma once

#include <span>

#include "dadapt/core/vector.hpp"
#include "dadapt/problems/dataset.hpp"

namespace dadapt::problems {

/// Mean logistic loss and its gradient over a set of examples. The weight
/// vector has dataset.dim() + 1 entries; the last one multiplies an implicit
/// always-1 bias feature.
struct LossAndGradient {
  double value = 0.0;
  Vector gradient;
};

/// log(1 + exp(-margin)) without overflow.
double logistic_loss(double margin);
/// d/dmargin of logistic_loss: -sigma(-margin).
double logistic_slope(double margin);

/// Plain loop over `batch`; the reference the parallel kernel is tested against.
LossAndGradient logistic_batch_serial(const Dataset& data, ConstView w,
                                      std::span<const std::size_t> batch);

/// Full-dataset loss and gradient, serial reference.
LossAndGradient logistic_full_serial(const Dataset& data, ConstView w);
double logistic_value_serial(const Dataset& data, ConstView w);

/// Full-dataset loss and gradient with OpenMP. Examples are split into
/// fixed-size blocks whose partial sums are combined in block order, so the
/// result does not depend on the thread count.
LossAndGradient logistic_full_parallel(const Dataset& data, ConstView w);
double logistic_value_parallel(const Dataset& data, ConstView w);

}  // namespace dadapt::problems
