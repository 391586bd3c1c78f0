#include "dadapt/core/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dadapt/core/errors.hpp"

namespace dadapt {

Schedule Schedule::stagewise(std::vector<double> fractions, double factor) {
  Schedule s;
  s.kind = ScheduleKind::kStagewise;
  s.stage_fractions = std::move(fractions);
  s.stage_factor = factor;
  s.validate();
  return s;
}

Schedule Schedule::inverse_sqrt_warmup(std::size_t warmup) {
  Schedule s;
  s.kind = ScheduleKind::kInverseSqrtWarmup;
  s.warmup_steps = warmup;
  s.validate();
  return s;
}

Schedule Schedule::cosine() {
  Schedule s;
  s.kind = ScheduleKind::kCosine;
  return s;
}

void Schedule::validate() const {
  switch (kind) {
    case ScheduleKind::kFlat:
    case ScheduleKind::kCosine:
      return;
    case ScheduleKind::kStagewise: {
      if (!(stage_factor > 0.0 && stage_factor <= 1.0))
        throw ConfigError("stagewise factor must lie in (0, 1]");
      double prev = 0.0;
      for (double f : stage_fractions) {
        if (!(f > prev && f <= 1.0))
          throw ConfigError("stage fractions must be strictly increasing within (0, 1]");
        prev = f;
      }
      return;
    }
    case ScheduleKind::kInverseSqrtWarmup:
      if (warmup_steps == 0) throw ConfigError("warmup step count must be positive");
      return;
  }
}

double schedule_eval(const Schedule& schedule, std::size_t k, std::size_t n_total) {
  if (n_total == 0) throw ConfigError("schedule needs a positive step count");
  switch (schedule.kind) {
    case ScheduleKind::kFlat:
      return 1.0;
    case ScheduleKind::kStagewise: {
      double m = 1.0;
      const double progress = static_cast<double>(k) / static_cast<double>(n_total);
      for (double f : schedule.stage_fractions) {
        if (progress >= f) m *= schedule.stage_factor;
      }
      return m;
    }
    case ScheduleKind::kInverseSqrtWarmup: {
      if (schedule.warmup_steps == 0) throw ConfigError("warmup step count must be positive");
      const double w = static_cast<double>(schedule.warmup_steps);
      // (k + 1) in the ramp keeps the very first multiplier positive.
      const double ramp = std::min(static_cast<double>(k + 1) / w, 1.0);
      const double decay =
          std::min(1.0, std::sqrt(w / static_cast<double>(std::max<std::size_t>(k, 1))));
      return ramp * decay;
    }
    case ScheduleKind::kCosine: {
      // Clamp so the multiplier never reaches zero at or past the horizon.
      const std::size_t kk = std::min(k, n_total - 1);
      return 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(kk) /
                                   static_cast<double>(n_total)));
    }
  }
  return 1.0;
}

}  // namespace dadapt
