#include "dadapt/core/trajectory.hpp"

namespace dadapt {

void Trajectory::weighted_average_update(ConstView x, double w) {
  if (w == 0.0) return;
  if (avg_num_.empty()) avg_num_.assign(x.size(), 0.0);
  axpy(w, x, avg_num_);
  avg_den_ += w;
}

Vector Trajectory::average() const {
  if (avg_den_ <= 0.0) return {};
  Vector out(avg_num_);
  for (double& v : out) v /= avg_den_;
  return out;
}

bool Trajectory::d_non_decreasing() const {
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].d < records_[i - 1].d) return false;
  }
  return true;
}

}  // namespace dadapt
