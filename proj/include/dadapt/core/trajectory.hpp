#pragma once

#include <cstddef>
#include <vector>

#include "dadapt/core/vector.hpp"

namespace dadapt {

struct StepRecord {
  std::size_t step = 0;
  double d = 0.0;       // d_k, the scale used for this step
  double dhat = 0.0;    // candidate bound produced by this step (raw, may be negative)
  double rate = 0.0;    // gamma_k or lambda_k depending on the algorithm
  double f = 0.0;       // f(x_k)
  double grad_norm_sq = 0.0;
  double elapsed = 0.0; // cumulative oracle work (gradient evaluations)
};

/// Per-step records plus the running weighted average of iterates.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::size_t dim) : avg_num_(dim, 0.0) {}

  void record(const StepRecord& r) { records_.push_back(r); }
  const std::vector<StepRecord>& records() const { return records_; }

  /// avg_num += w * x, avg_den += w. w == 0 is a no-op.
  void weighted_average_update(ConstView x, double w);
  /// avg_num / avg_den; empty when no positive weight has been added.
  Vector average() const;
  double average_weight() const { return avg_den_; }

  /// True when every recorded d is >= its predecessor.
  bool d_non_decreasing() const;

 private:
  std::vector<StepRecord> records_;
  Vector avg_num_;
  double avg_den_ = 0.0;
};

}  // namespace dadapt
