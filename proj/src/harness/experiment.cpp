#include "dadapt/harness/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dadapt/convex/dual_averaging.hpp"
#include "dadapt/core/errors.hpp"
#include "dadapt/problems/convex_problems.hpp"

namespace dadapt::harness {

namespace fs = std::filesystem;

int worker_count() {
  if (const char* env = std::getenv("DADAPT_WORKERS")) {
    int n = 0;
    const std::string_view v(env);
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec == std::errc() && res.ptr == v.data() + v.size() && n > 0) return n;
  }
  return omp_get_max_threads();
}

std::vector<RunOutput> run_jobs(std::span<const Job> jobs) {
  std::vector<RunOutput> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = run_single(jobs[i].config, jobs[i].seed);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

MeanSe mean_two_se(std::span<const double> values) {
  MeanSe r;
  if (values.empty()) return r;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  r.mean = sum / n;
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.two_se = 2.0 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return r;
}

std::string trajectory_csv(std::span<const StepRecord> records) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.step);
    for (double v : {r.d, r.dhat, r.rate, r.f, r.grad_norm_sq, r.elapsed}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, 16);
  return std::string(buf, res.ptr);
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string summary_csv(const ExperimentConfig& config, std::span<const RunSummary> runs) {
  std::ostringstream out;
  out << kSummaryCsvHeader << '\n';
  const std::string alg(algorithm_name(config.algorithm));
  const std::string d0 = format_double(config.d0);
  std::vector<double> f, d;
  bool diverged = false;
  for (const auto& r : runs) {
    out << config.name << ',' << hex(r.run_id) << ',' << r.seed << ',' << alg << ',' << d0 << ','
        << r.steps << ',' << format_double(r.f_final) << ',' << format_double(r.f_last) << ','
        << format_double(r.d_final) << ',' << (r.t ? std::to_string(*r.t) : "") << ','
        << (r.f_t ? format_double(*r.f_t) : "") << ',' << flag(r.diverged) << ','
        << flag(r.heuristic_g) << ',' << flag(r.out_of_theory) << '\n';
    f.push_back(r.f_final);
    d.push_back(r.d_final);
    diverged = diverged || r.diverged;
  }
  const MeanSe fs = mean_two_se(f);
  const MeanSe ds = mean_two_se(d);
  out << config.name << ",,mean," << alg << ',' << d0 << ",," << format_double(fs.mean) << ",,"
      << format_double(ds.mean) << ",,," << flag(diverged) << ",,\n";
  out << config.name << ",,2se," << alg << ',' << d0 << ",," << format_double(fs.two_se) << ",,"
      << format_double(ds.two_se) << ",,,,,\n";
  return out.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write failed for '" + tmp + "'");
  }
  fs::rename(tmp, target);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<Job> jobs;
  for (auto seed : config.seeds) jobs.push_back({config, seed});
  const std::vector<RunOutput> outs = run_jobs(jobs);

  ExperimentResult result;
  std::vector<double> f, d;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string path = (fs::path(config.output) /
                              (config.name + "_seed" + std::to_string(config.seeds[i]) + ".csv"))
                                 .string();
    write_file_atomic(path, trajectory_csv(outs[i].records));
    result.files.push_back(path);
    result.runs.push_back(outs[i].summary);
    f.push_back(outs[i].summary.f_final);
    d.push_back(outs[i].summary.d_final);
    result.any_diverged = result.any_diverged || outs[i].summary.diverged;
  }
  result.f_final = mean_two_se(f);
  result.d_final = mean_two_se(d);
  const std::string summary =
      (fs::path(config.output) / (config.name + "_summary.csv")).string();
  write_file_atomic(summary, summary_csv(config, result.runs));
  result.files.push_back(summary);
  return result;
}

Algorithm default_comparison(Algorithm baseline) {
  switch (baseline) {
    case Algorithm::kAdaGrad:
      return Algorithm::kAdaGradDa;
    case Algorithm::kAdam:
      return Algorithm::kAdamDa;
    default:
      return Algorithm::kDaI;
  }
}

namespace {

// Groups consecutive runs of `per_point` seeds.
struct PointStats {
  MeanSe f;
  double d_mean = 0.0;
  bool diverged = false;
  bool out_of_theory = false;
};

PointStats point_stats(std::span<const RunOutput> outs) {
  PointStats p;
  std::vector<double> f;
  for (const auto& o : outs) {
    f.push_back(o.summary.f_final);
    p.d_mean += o.summary.d_final / static_cast<double>(outs.size());
    p.diverged = p.diverged || o.summary.diverged;
    p.out_of_theory = p.out_of_theory || o.summary.out_of_theory;
  }
  p.f = mean_two_se(f);
  return p;
}

}  // namespace

GridResult grid_search(const ExperimentConfig& config, std::span<const double> lrs,
                       std::optional<Algorithm> compare) {
  if (lrs.empty()) throw ConfigError("learning-rate grid is empty");
  if (is_dadapt(config.algorithm))
    throw ConfigError("grid search tunes baselines; " + std::string(algorithm_name(config.algorithm)) +
                      " is learning-rate free");
  for (double lr : lrs)
    if (!(lr > 0.0)) throw ConfigError("grid learning rates must be positive");

  GridResult result;
  result.compare_algorithm = compare.value_or(default_comparison(config.algorithm));
  if (!is_dadapt(result.compare_algorithm))
    throw ConfigError("comparison algorithm must be a D-Adaptation method");

  std::vector<Job> jobs;
  for (double lr : lrs) {
    ExperimentConfig c = config;
    c.lr = lr;
    validate(c);
    for (auto seed : c.seeds) jobs.push_back({c, seed});
  }
  ExperimentConfig cmp = config;
  cmp.algorithm = result.compare_algorithm;
  cmp.lr.reset();
  validate(cmp);
  for (auto seed : cmp.seeds) jobs.push_back({cmp, seed});

  const std::vector<RunOutput> outs = run_jobs(jobs);
  const std::size_t per = config.seeds.size();
  const std::span<const RunOutput> all(outs);
  for (std::size_t i = 0; i < lrs.size(); ++i) {
    const PointStats p = point_stats(all.subspan(i * per, per));
    result.points.push_back({lrs[i], p.f, p.diverged});
    if (p.diverged) continue;
    if (!result.best) {
      result.best = i;
      continue;
    }
    const GridPoint& b = result.points[*result.best];
    if (p.f.mean < b.f_final.mean || (p.f.mean == b.f_final.mean && lrs[i] < b.lr)) result.best = i;
  }
  const PointStats c = point_stats(all.subspan(lrs.size() * per, per));
  result.compare_f_final = c.f;
  result.compare_diverged = c.diverged;

  std::ostringstream t;
  t << kGridCsvHeader << '\n';
  const std::string base(algorithm_name(config.algorithm));
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    t << "grid," << base << ',' << format_double(p.lr) << ',' << format_double(p.f_final.mean)
      << ',' << format_double(p.f_final.two_se) << ',' << flag(p.diverged) << ','
      << flag(result.best && *result.best == i) << '\n';
  }
  t << "dadapt," << algorithm_name(result.compare_algorithm) << ",,"
    << format_double(c.f.mean) << ',' << format_double(c.f.two_se) << ',' << flag(c.diverged)
    << ",false\n";
  result.table = t.str();
  return result;
}

SweepResult d0_sweep(const ExperimentConfig& config, std::span<const double> d0s) {
  if (d0s.empty()) throw ConfigError("d0 list is empty");
  std::vector<Job> jobs;
  for (double d0 : d0s) {
    ExperimentConfig c = config;
    c.d0 = d0;
    validate(c);
    for (auto seed : c.seeds) jobs.push_back({c, seed});
  }
  const std::vector<RunOutput> outs = run_jobs(jobs);
  const std::size_t per = config.seeds.size();
  const std::span<const RunOutput> all(outs);

  SweepResult result;
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < d0s.size(); ++i) {
    const PointStats p = point_stats(all.subspan(i * per, per));
    result.points.push_back({d0s[i], p.f, p.d_mean, p.diverged, p.out_of_theory});
    if (p.diverged) continue;
    lo = any ? std::min(lo, p.f.mean) : p.f.mean;
    hi = any ? std::max(hi, p.f.mean) : p.f.mean;
    any = true;
  }
  if (any) result.relative_spread = lo != 0.0 ? (hi - lo) / std::abs(lo) : hi - lo;

  std::ostringstream t;
  t << kSweepCsvHeader << '\n';
  for (const auto& p : result.points) {
    t << format_double(p.d0) << ',' << format_double(p.f_final.mean) << ','
      << format_double(p.f_final.two_se) << ',' << format_double(p.d_final) << ','
      << flag(p.diverged) << ',' << flag(p.out_of_theory) << '\n';
  }
  result.table = t.str();
  return result;
}

std::string trace_toy(std::size_t steps, double d0) {
  problems::AbsValueProblem problem;
  Rng rng = seeded_rng(0, 0);
  convex::DualAveraging da(problem.default_start(), d0, convex::DaOption::kI);
  std::ostringstream out;
  out << kToyCsvHeader << '\n';
  double dhat = 0.0;
  double gamma = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const Vector& x = da.x();
    const Vector g = problem.subgradient(x, rng);
    const bool stop = k == steps || (k == 0 && is_zero(g));
    if (k > 0) gamma = da.gamma();
    if (k == 0 && !is_zero(g)) gamma = 1.0 / norm(g);
    out << k << ',' << format_double(x[0]) << ',' << format_double(da.d()) << ','
        << format_double(dhat) << ',' << format_double(gamma) << ','
        << format_double(problem.value(x)) << '\n';
    if (stop) break;
    dhat = da.step(g).dhat;
  }
  return out.str();
}

}  // namespace dadapt::harness
