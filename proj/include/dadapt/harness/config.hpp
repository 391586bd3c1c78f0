#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dadapt/core/schedule.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::harness {

enum class Algorithm {
  kDaI,
  kDaII,
  kGd,
  kAdaGradDa,
  kSgdDa,
  kAdamDa,
  kAdaGradNorm,
  kPolyak,
  kFixed,
  kAdaGrad,
  kAdam,
};

std::string_view algorithm_name(Algorithm a);
/// Throws ConfigError for unknown names.
Algorithm parse_algorithm(std::string_view name);
/// True for the learning-rate-free algorithms (never grid points).
bool is_dadapt(Algorithm a);

enum class ProblemKind { kAbs, kPiecewise, kLogisticSynth, kLibsvm };

std::string_view problem_name(ProblemKind p);
ProblemKind parse_problem(std::string_view name);

/// Everything needed to reproduce a batch of runs. The text form written by
/// to_text() parses back to an equal config.
struct ExperimentConfig {
  std::string name = "run";
  ProblemKind problem = ProblemKind::kAbs;
  std::string data;  // LIBSVM path for problem = libsvm

  Algorithm algorithm = Algorithm::kDaI;
  double d0 = 1e-6;
  /// "fixed" puts G in the dual averaging step-size denominator; "none" does not.
  bool g_fixed = false;
  std::optional<double> G;
  std::optional<double> D;
  std::optional<double> lr;
  double beta = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double decay = 0.0;

  Schedule schedule;

  std::optional<std::size_t> steps;
  std::size_t epochs = 100;
  std::size_t batch_size = 16;
  std::size_t record_every = 1;
  std::vector<std::uint64_t> seeds{0};
  std::string output = "out";
  std::optional<Vector> x0;

  // Problem parameters.
  double abs_start = 1.0;
  std::uint64_t data_seed = 1;
  std::size_t synth_examples = 1000;
  std::size_t synth_dim = 20;
  double synth_margin = 0.5;
  double synth_noise = 0.1;
  std::uint64_t pw_seed = 0;
  std::size_t pw_min_dim = 1;
  std::size_t pw_max_dim = 8;
  std::size_t pw_extra = 4;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Applies one `key=value` assignment. Throws ConfigError for unknown keys or
/// bad values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Parses the flat `key = value` format; '#' starts a comment, blank lines are
/// ignored. Throws ConfigError naming the offending line.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text: every key, fixed order, shortest round-trip numbers.
std::string to_text(const ExperimentConfig& config);

/// Hash of everything that affects a run except seeds, name and output path.
std::uint64_t config_hash(const ExperimentConfig& config);
/// Hash of the problem description alone; keys the sampling stream so that
/// runs differing only in optimizer settings see the same batches.
std::uint64_t problem_hash(const ExperimentConfig& config);

/// Checks cross-field constraints. Throws ConfigError.
void validate(const ExperimentConfig& config);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace dadapt::harness
