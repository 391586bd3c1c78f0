// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dadapt/analysis/checks.hpp"
#include "dadapt/convex/adagrad.hpp"
#include "dadapt/convex/dual_averaging.hpp"
#include "dadapt/convex/gradient_descent.hpp"
#include "dadapt/convex/run.hpp"
#include "dadapt/core/rng.hpp"
#include "dadapt/harness/config.hpp"
#include "dadapt/harness/driver.hpp"
#include "dadapt/harness/experiment.hpp"
#include "dadapt/ml/adam.hpp"
#include "dadapt/ml/ema.hpp"
#include "dadapt/ml/sgd.hpp"
#include "dadapt/problems/convex_problems.hpp"

using namespace dadapt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds) {
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

void run_criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, title, o, secs);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Piecewise-linear runs shared by criteria 1, 2 and 5.
struct PiecewiseRun {
  convex::ConvexRunResult result;
  double distance = 0.0;
  double d0 = 0.0;
};

constexpr std::size_t kInstances = 100;
constexpr std::size_t kSteps = 1000;

std::vector<PiecewiseRun> piecewise_runs;
double piecewise_seconds = 0.0;

void build_piecewise_runs() {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < kInstances; ++i) {
    auto problem = problems::PiecewiseMaxProblem::random(0, i);
    const Vector x0 = problem.default_start();
    const Vector xs = *problem.minimizer();
    for (int variant = 0; variant < 4; ++variant) {
      convex::ConvexRunConfig rc;
      rc.steps = kSteps;
      double dist = distance(x0, xs);
      switch (variant) {
        case 0:
          rc.option = convex::DaOption::kI;
          break;
        case 1:
          rc.option = convex::DaOption::kII;
          break;
        case 2:
          rc.algorithm = convex::ConvexAlgorithm::kGradientDescent;
          break;
        default:
          rc.algorithm = convex::ConvexAlgorithm::kAdaGrad;
          dist = distance_inf(x0, xs);
          break;
      }
      rc.d0 = 1e-3 * dist;
      piecewise_runs.push_back({convex::run_convex(problem, rc), dist, rc.d0});
    }
  }
  piecewise_seconds = elapsed_since(start);
}

Outcome criterion_lower_bound() {
  std::size_t violations = 0;
  double worst = -INFINITY;
  for (const auto& run : piecewise_runs) {
    const auto lb = analysis::check_d_lower_bound(run.result.trace, run.distance);
    const auto ceil = analysis::check_d_ceiling(run.result.trace, run.d0, run.distance);
    if (!lb.satisfied()) ++violations;
    if (!ceil.satisfied()) ++violations;
    worst = std::max(worst, lb.lhs - lb.rhs);
  }
  const bool fast = piecewise_seconds < 30.0;
  return {violations == 0 && fast,
          std::to_string(piecewise_runs.size()) + " runs, " + std::to_string(violations) +
              " violations, max dhat - D = " + fmt("%.3g", worst) +
              fmt(", runs took %.2fs (limit 30s)", piecewise_seconds)};
}

Outcome criterion_identities() {
  std::size_t violations = 0;
  double worst_residual = 0.0;
  for (const auto& run : piecewise_runs) {
    const auto tel = analysis::check_telescoping(run.result.trace);
    const auto sn = analysis::check_snorm_bound(run.result.trace);
    if (!tel.satisfied()) ++violations;
    if (!sn.satisfied()) ++violations;
    if (tel.name == "telescoping") worst_residual = std::max(worst_residual, tel.lhs);
  }
  return {violations == 0, std::to_string(violations) + " violations, worst telescoping residual " +
                               fmt("%.3g (tolerance 1e-8)", worst_residual)};
}

Outcome criterion_rate() {
  problems::AbsValueProblem abs;
  convex::ConvexRunConfig rc;
  rc.d0 = 0.1;
  rc.steps = 10001;
  rc.use_gradient_bound = true;
  const auto start = std::chrono::steady_clock::now();
  const auto with_g = convex::run_convex(abs, rc);
  rc.use_gradient_bound = false;
  const auto plain = convex::run_convex(abs, rc);
  const double secs = elapsed_since(start);

  bool ok = secs < 1.0;
  std::string detail;
  for (const auto& r : analysis::check_rate_bounded_step(with_g, 1.0, 1.0, 0.0)) {
    ok = ok && r.satisfied() && r.slack > 0.0;
    detail += r.name + fmt(" %.3g <= %.3g, ", r.lhs, r.rhs);
  }
  const auto t1 = analysis::check_rate_plain_step(plain, 1.0, 1.0, 0.0);
  ok = ok && t1.satisfied();
  detail += t1.name + fmt(" %.3g <= %.3g", t1.lhs, t1.rhs) + fmt(", runs %.3fs (limit 1s)", secs);
  return {ok, detail};
}

Outcome criterion_asymptotic() {
  problems::AbsValueProblem abs;
  convex::ConvexRunConfig rc;
  rc.d0 = 0.1;
  rc.steps = 100001;
  const auto start = std::chrono::steady_clock::now();
  const auto run = convex::run_convex(abs, rc);
  const double secs = elapsed_since(start);
  const double final_dist = std::abs(run.x_last[0]);
  const auto r = analysis::check_dasym(run, 1.0, final_dist);
  return {r.satisfied() && secs < 5.0,
          fmt("final d %.6f >= %.6f", r.rhs, r.lhs) + fmt(", |x_n| = %.3g", final_dist) +
              fmt(", run %.2fs (limit 5s)", secs)};
}

Outcome criterion_dominance() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (const auto& run : piecewise_runs) {
    if (run.result.trace.kind != convex::TraceKind::kDualAveraging) continue;
    ++checked;
    if (!analysis::check_option_dominance(run.result.trace).satisfied()) ++violations;
  }
  return {checked > 0 && violations == 0,
          std::to_string(checked) + " dual averaging runs, " + std::to_string(violations) +
              " violations"};
}

harness::ExperimentConfig logistic_problem() {
  harness::ExperimentConfig c;
  c.problem = harness::ProblemKind::kLogisticSynth;
  c.synth_examples = 1000;
  c.synth_dim = 20;
  c.batch_size = 16;
  c.epochs = 100;
  c.schedule = Schedule::stagewise({0.6, 0.8, 0.95}, 0.1);
  c.seeds = {1};
  c.record_every = 1000000;
  return c;
}

Outcome criterion_d0_insensitivity() {
  auto c = logistic_problem();
  c.algorithm = harness::Algorithm::kAdamDa;
  const std::vector<double> d0s{1e-16, 1e-12, 1e-8, 1e-6, 1e-4, 1e-2};
  const auto start = std::chrono::steady_clock::now();
  const auto sweep = harness::d0_sweep(c, d0s);
  const double secs = elapsed_since(start);
  bool any_diverged = false;
  for (const auto& p : sweep.points) any_diverged = any_diverged || p.diverged;
  return {!any_diverged && sweep.relative_spread < 0.01 && secs < 60.0,
          "adam_da final loss spread " + fmt("%.3g (limit 0.01)", sweep.relative_spread) +
              fmt(", sweep %.2fs (limit 60s)", secs)};
}

Outcome criterion_grid_match() {
  auto c = logistic_problem();
  c.algorithm = harness::Algorithm::kAdaGrad;
  const std::vector<double> lrs{1e-4, 1e-3, 1e-2, 1e-1, 1e0, 1e1, 1e2};
  const auto grid = harness::grid_search(c, lrs, harness::Algorithm::kAdaGradDa);
  if (!grid.best) return {false, "every grid point diverged"};
  const auto& best = grid.points[*grid.best];
  const double rel = std::abs(grid.compare_f_final.mean - best.f_final.mean) / best.f_final.mean;
  return {!grid.compare_diverged && rel <= 0.05,
          fmt("adagrad_da %.7g vs best adagrad %.7g", grid.compare_f_final.mean,
              best.f_final.mean) +
              fmt(" at lr %g, relative gap %.3g (limit 0.05)", best.lr, rel)};
}

Outcome criterion_ema() {
  Rng rng = seeded_rng(7, 0xe3a);
  double worst = 0.0;
  for (double c : {0.5, 0.9, 0.999}) {
    for (int seq = 0; seq < 100; ++seq) {
      ml::EmaPair pair(c);
      for (int k = 0; k < 100; ++k) {
        pair.step(rng.normal());
        const double implied = pair.implied_ema();
        const double scale = std::max(std::abs(pair.u_hat()), std::abs(implied));
        if (scale > 0.0) worst = std::max(worst, std::abs(pair.u_hat() - implied) / scale);
      }
    }
  }
  return {worst <= 1e-10, fmt("worst relative error %.3g (limit 1e-10)", worst)};
}

Outcome criterion_lemma_sweeps() {
  Rng rng = seeded_rng(11, 0x5e);
  std::size_t gs_viol = 0;
  std::size_t md_viol = 0;
  std::size_t md_skip = 0;
  for (int i = 0; i < 1000; ++i) {
    const double bound = rng.uniform(0.1, 10.0);
    std::vector<double> norms(1 + static_cast<std::size_t>(rng.below(64)));
    for (double& v : norms) v = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, bound);
    for (const auto& r : analysis::check_gradient_sums(norms, bound))
      if (!r.satisfied()) ++gs_viol;
  }
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> d(2 + static_cast<std::size_t>(rng.below(200)));
    d[0] = std::exp(rng.uniform(-10.0, 0.0));
    const double grow_prob = rng.uniform(0.0, 0.5);
    const double max_jump = rng.uniform(0.1, 3.0);
    for (std::size_t k = 1; k < d.size(); ++k)
      d[k] = rng.uniform() < grow_prob ? d[k - 1] * std::exp(rng.uniform(0.0, max_jump)) : d[k - 1];
    const auto r = analysis::check_mindk(d);
    if (r.violated()) ++md_viol;
    if (r.skipped()) ++md_skip;
  }
  return {gs_viol == 0 && md_viol == 0,
          "gradient sums: 1000 instances, " + std::to_string(gs_viol) +
              " violations; min ratio: 1000 instances, " + std::to_string(md_viol) +
              " violations, " + std::to_string(md_skip) + " gated"};
}

Outcome criterion_hand_traces() {
  std::vector<std::string> bad;
  auto expect = [&](const char* what, double got, double want) {
    if (!(std::abs(got - want) <= 1e-9)) bad.push_back(what + fmt(" got %.12g want %.12g", got, want));
  };
  {
    convex::DualAveraging da({1.0}, 0.1, convex::DaOption::kI);
    const auto s0 = da.step(Vector{1.0});
    expect("da s1", da.s()[0], 0.1);
    expect("da gamma1", s0.gamma_next, 1.0);
    expect("da dhat1", da.dhat(), 0.0);
    expect("da x1", da.x()[0], 0.9);
    const auto s1 = da.step(Vector{1.0});
    expect("da s2", da.s()[0], 0.2);
    expect("da gamma2", s1.gamma_next, 1.0 / std::sqrt(2.0));
    expect("da dhat2", da.dhat(), (0.04 / std::sqrt(2.0) - 0.02) / 0.4);
    expect("da d2", da.d(), 0.1);
    expect("da x2", da.x()[0], 1.0 - 0.2 / std::sqrt(2.0));
  }
  {
    convex::DAdaptGradientDescent gd({1.0}, 0.1, 1.0);
    gd.step(Vector{1.0});
    expect("gd lambda0", gd.lambda(), 0.1 / std::sqrt(2.0));
    expect("gd dhat1", gd.dhat(), 0.0);
    expect("gd x1", gd.x()[0], 1.0 - 0.1 / std::sqrt(2.0));
  }
  {
    convex::DAdaptAdaGrad ag({1.0}, 0.1, 1.0);
    ag.step(Vector{1.0});
    expect("adagrad s1", ag.s()[0], 0.1);
    expect("adagrad a1", ag.a()[0], std::sqrt(2.0));
    expect("adagrad dhat1", ag.dhat(), (0.01 / std::sqrt(2.0) - 0.01) / 0.2);
    expect("adagrad d1", ag.d(), 0.1);
    expect("adagrad x1", ag.x()[0], 1.0 - 0.1 / std::sqrt(2.0));
  }
  {
    ml::DAdaptSgd sgd({1.0}, 0.1, 0.9, 1.0);
    sgd.step(Vector{1.0}, 1.0);
    expect("sgd z1", sgd.z()[0], 0.9);
    expect("sgd x1", sgd.x()[0], 0.99);
    expect("sgd dhat1", sgd.dhat(), 0.0);
    sgd.step(Vector{1.0}, 1.0);
    expect("sgd s2", sgd.s()[0], 0.2);
    expect("sgd z2", sgd.z()[0], 0.8);
    expect("sgd x2", sgd.x()[0], 0.971);
    expect("sgd dhat2", sgd.dhat(), 0.1);
    expect("sgd d2", sgd.d(), 0.1);
  }
  {
    ml::DAdaptAdam adam({1.0}, 0.1);
    adam.step(Vector{1.0}, 1.0);
    expect("adam m1", adam.m()[0], 0.01);
    expect("adam v1", adam.v()[0], 0.001);
    expect("adam x1", adam.x()[0], 1.0 - 0.01 / (std::sqrt(0.001) + 1e-8));
    expect("adam s1", adam.s()[0], (1.0 - std::sqrt(0.999)) * 0.1);
    expect("adam r1", adam.r(), 0.0);
    expect("adam d1", adam.d(), 0.1);
  }
  std::string detail = bad.empty() ? "all hand-trace values within 1e-9" : "";
  for (const auto& b : bad) detail += b + "; ";
  return {bad.empty(), detail};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_determinism() {
  const fs::path root = fs::temp_directory_path() / "dadapt_acceptance_determinism";
  fs::remove_all(root);
  std::vector<harness::ExperimentConfig> configs;
  {
    harness::ExperimentConfig toy;
    toy.name = "toy";
    toy.steps = 500;
    toy.seeds = {0, 1};
    configs.push_back(toy);
    auto logistic = logistic_problem();
    logistic.name = "logistic";
    logistic.epochs = 10;
    logistic.record_every = 7;
    logistic.seeds = {1, 2, 3};
    for (auto alg : {harness::Algorithm::kSgdDa, harness::Algorithm::kAdamDa,
                     harness::Algorithm::kAdaGradDa}) {
      logistic.algorithm = alg;
      logistic.name = "logistic_" + std::string(harness::algorithm_name(alg));
      configs.push_back(logistic);
    }
  }
  std::size_t compared = 0;
  std::size_t mismatched = 0;
  for (auto& c : configs) {
    std::vector<std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
      c.output = (root / ("pass" + std::to_string(pass))).string();
      const auto result = harness::run_experiment(c);
      for (std::size_t i = 0; i < result.files.size(); ++i) {
        const std::string content = read_file(result.files[i]);
        if (pass == 0) {
          first.push_back(content);
        } else {
          ++compared;
          if (content != first[i]) ++mismatched;
        }
      }
    }
  }
  fs::remove_all(root);
  return {compared > 0 && mismatched == 0,
          std::to_string(compared) + " output files compared across two executions, " +
              std::to_string(mismatched) + " differ"};
}

}  // namespace

int main() {
  build_piecewise_runs();
  run_criterion(1, "d lower bound soundness", criterion_lower_bound);
  run_criterion(2, "telescoping and s-norm bounds", criterion_identities);
  run_criterion(3, "non-asymptotic rate on |x|", criterion_rate);
  run_criterion(4, "asymptotic d level", criterion_asymptotic);
  run_criterion(5, "option II dominates option I", criterion_dominance);
  run_criterion(6, "d0 insensitivity", criterion_d0_insensitivity);
  run_criterion(7, "grid match against tuned AdaGrad", criterion_grid_match);
  run_criterion(8, "EMA equivalence", criterion_ema);
  run_criterion(9, "randomized lemma sweeps", criterion_lemma_sweeps);
  run_criterion(10, "hand traces", criterion_hand_traces);
  run_criterion(11, "determinism", criterion_determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
