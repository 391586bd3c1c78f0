#pragma once

#include <cstddef>
#include <vector>

namespace dadapt {

enum class ScheduleKind { kFlat, kStagewise, kInverseSqrtWarmup, kCosine };

/// Learning-rate multiplier sequence with base value 1.0.
struct Schedule {
  ScheduleKind kind = ScheduleKind::kFlat;
  // stagewise: multiply by `stage_factor` once per boundary passed, where the
  // boundaries sit at `stage_fractions[i] * n_total`.
  std::vector<double> stage_fractions;
  double stage_factor = 0.1;
  // inverse_sqrt_warmup
  std::size_t warmup_steps = 0;

  static Schedule flat() { return {}; }
  static Schedule stagewise(std::vector<double> fractions, double factor);
  static Schedule inverse_sqrt_warmup(std::size_t warmup);
  static Schedule cosine();

  /// Throws ConfigError on invalid parameters.
  void validate() const;

  bool operator==(const Schedule&) const = default;
};

/// Multiplier for step k of n_total; always in (0, 1].
double schedule_eval(const Schedule& schedule, std::size_t k, std::size_t n_total);

}  // namespace dadapt
