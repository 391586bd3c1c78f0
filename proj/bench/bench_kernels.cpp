// Timings for the serial and OpenMP logistic kernels and for the run pool.
// Usage: bench_kernels [examples] [dim] [repeats]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "dadapt/core/rng.hpp"
#include "dadapt/harness/experiment.hpp"
#include "dadapt/problems/dataset.hpp"
#include "dadapt/problems/kernels.hpp"

using namespace dadapt;

namespace {

template <class F>
double seconds_per_call(int repeats, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t examples = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200000;
  const std::size_t dim = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 50;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 20;

  problems::SynthOptions opt;
  opt.examples = examples;
  opt.dim = dim;
  const auto data = problems::synth_dataset(1, opt);
  Rng rng = seeded_rng(2, 0);
  Vector w(dim + 1);
  for (double& v : w) v = rng.normal() * 0.1;

  std::printf("workers %d, %zu examples, dim %zu\n", harness::worker_count(), examples, dim);

  problems::LossAndGradient serial, parallel;
  const double t_serial =
      seconds_per_call(repeats, [&] { serial = problems::logistic_full_serial(data, w); });
  const double t_parallel =
      seconds_per_call(repeats, [&] { parallel = problems::logistic_full_parallel(data, w); });
  double max_diff = std::abs(serial.value - parallel.value);
  for (std::size_t i = 0; i < w.size(); ++i)
    max_diff = std::max(max_diff, std::abs(serial.gradient[i] - parallel.gradient[i]));
  std::printf("loss+gradient  serial %.3f ms  parallel %.3f ms  speedup %.2fx  max diff %.2g\n",
              t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel, max_diff);

  const double v_serial =
      seconds_per_call(repeats, [&] { (void)problems::logistic_value_serial(data, w); });
  const double v_parallel =
      seconds_per_call(repeats, [&] { (void)problems::logistic_value_parallel(data, w); });
  std::printf("loss only      serial %.3f ms  parallel %.3f ms  speedup %.2fx\n", v_serial * 1e3,
              v_parallel * 1e3, v_serial / v_parallel);

  harness::ExperimentConfig c;
  c.problem = harness::ProblemKind::kLogisticSynth;
  c.algorithm = harness::Algorithm::kAdamDa;
  c.epochs = 20;
  c.record_every = 1000000;
  std::vector<harness::Job> jobs;
  for (std::uint64_t seed = 0; seed < 8; ++seed) jobs.push_back({c, seed});
  const double t_pool = seconds_per_call(1, [&] { (void)harness::run_jobs(jobs); });
  const double t_one = seconds_per_call(1, [&] { (void)harness::run_single(c, 0); });
  std::printf("run pool       8 runs %.3f s  one run %.3f s  ratio %.2f\n", t_pool, t_one,
              t_pool / t_one);
  return 0;
}
