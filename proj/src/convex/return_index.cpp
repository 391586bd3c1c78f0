#include "dadapt/convex/return_index.hpp"

#include "dadapt/core/errors.hpp"

namespace dadapt::convex {

std::size_t select_return_index(std::span<const double> d_seq) {
  if (d_seq.size() < 2) throw PreconditionError("return index needs d_0 and d_1 at least");
  std::size_t best = 0;
  double best_ratio = 0.0;
  double prefix = 0.0;
  for (std::size_t k = 0; k + 1 < d_seq.size(); ++k) {
    prefix += d_seq[k];
    const double ratio = d_seq[k + 1] / prefix;
    if (k == 0 || ratio <= best_ratio) {
      best_ratio = ratio;
      best = k;
    }
  }
  return best;
}

}  // namespace dadapt::convex
