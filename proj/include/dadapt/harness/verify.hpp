#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dadapt/analysis/report.hpp"

namespace dadapt::harness {

enum class Suite { kLemmas, kBounds, kAll };

/// Throws ConfigError for names other than lemmas, bounds, all.
Suite parse_suite(std::string_view name);

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Random instances for the lemma sweeps.
  std::size_t lemma_instances = 1000;
  /// Random piecewise-linear problems for the trajectory checks.
  std::size_t problem_instances = 100;
  std::size_t problem_steps = 1000;
};

/// Lemmas: gradient-sum bounds and the min-ratio lemma on random sequences,
/// the EMA identity, and the telescoping identity on random problems.
/// Bounds: dhat <= D, d ceiling, s-norm bounds and option dominance on random
/// piecewise-linear problems, plus the rate and asymptotic-d checks on |x|.
std::vector<analysis::BoundReport> run_verification(Suite suite, const VerifyOptions& options);

}  // namespace dadapt::harness
