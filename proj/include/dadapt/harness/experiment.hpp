#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dadapt/harness/config.hpp"
#include "dadapt/harness/driver.hpp"

namespace dadapt::harness {

inline constexpr std::string_view kTrajectoryCsvHeader = "step,d,dhat,gamma_or_lambda,f,gnorm2,elapsed";
inline constexpr std::string_view kSummaryCsvHeader =
    "name,run_id,seed,algorithm,d0,steps,f_final,f_last,d_final,t,f_t,diverged,heuristic_g,"
    "out_of_theory";
inline constexpr std::string_view kGridCsvHeader = "kind,algorithm,lr,f_final,f_final_2se,diverged,best";
inline constexpr std::string_view kSweepCsvHeader =
    "d0,f_final,f_final_2se,d_final,diverged,out_of_theory";
inline constexpr std::string_view kToyCsvHeader = "step,x,d,dhat,gamma,f";

/// Worker count for the run pool: DADAPT_WORKERS if set to a positive
/// integer, otherwise the OpenMP default.
int worker_count();

struct Job {
  ExperimentConfig config;
  std::uint64_t seed = 0;
};

/// Runs every job on the pool. Results come back in job order; the first
/// exception thrown by any job is rethrown after all jobs finish.
std::vector<RunOutput> run_jobs(std::span<const Job> jobs);

struct MeanSe {
  double mean = 0.0;
  /// Two standard errors of the mean (sample standard deviation / sqrt(n)).
  double two_se = 0.0;
};
MeanSe mean_two_se(std::span<const double> values);

std::string trajectory_csv(std::span<const StepRecord> records);
std::string summary_csv(const ExperimentConfig& config, std::span<const RunSummary> runs);

/// Writes to path.tmp and renames over path.
void write_file_atomic(const std::string& path, std::string_view content);

struct ExperimentResult {
  std::vector<RunSummary> runs;
  MeanSe f_final;
  MeanSe d_final;
  bool any_diverged = false;
  std::vector<std::string> files;
};

/// One CSV per seed (<output>/<name>_seed<k>.csv) plus <output>/<name>_summary.csv.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct GridPoint {
  double lr = 0.0;
  MeanSe f_final;
  bool diverged = false;
};

struct GridResult {
  std::vector<GridPoint> points;
  /// Lowest mean final loss among non-diverged points; ties go to the smaller lr.
  std::optional<std::size_t> best;
  Algorithm compare_algorithm = Algorithm::kDaI;
  MeanSe compare_f_final;
  bool compare_diverged = false;
  std::string table;  // CSV with kGridCsvHeader
};

/// D-Adaptation counterpart used in grid comparisons.
Algorithm default_comparison(Algorithm baseline);

/// Runs the template's (tuned) algorithm at each lr, then the comparison
/// algorithm once with the same problem and seeds. Throws ConfigError for an
/// empty grid or a learning-rate-free template algorithm.
GridResult grid_search(const ExperimentConfig& config, std::span<const double> lrs,
                       std::optional<Algorithm> compare = std::nullopt);

struct SweepPoint {
  double d0 = 0.0;
  MeanSe f_final;
  double d_final = 0.0;  // mean over seeds
  bool diverged = false;
  bool out_of_theory = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// (max - min) / |min| of mean final loss over non-diverged points.
  double relative_spread = 0.0;
  std::string table;  // CSV with kSweepCsvHeader
};

SweepResult d0_sweep(const ExperimentConfig& config, std::span<const double> d0s);

/// |x| from x_0 = 1 with dual averaging, Option I, d_0 = 0.1: rows k = 0..steps
/// with x_k, d_k, the dhat produced by the previous step, gamma_k and f(x_k).
std::string trace_toy(std::size_t steps, double d0 = 0.1);

}  // namespace dadapt::harness
