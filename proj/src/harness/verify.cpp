#include "dadapt/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dadapt/analysis/checks.hpp"
#include "dadapt/convex/run.hpp"
#include "dadapt/core/errors.hpp"
#include "dadapt/core/rng.hpp"
#include "dadapt/ml/ema.hpp"
#include "dadapt/problems/convex_problems.hpp"

namespace dadapt::harness {

using analysis::BoundReport;

Suite parse_suite(std::string_view name) {
  if (name == "lemmas") return Suite::kLemmas;
  if (name == "bounds") return Suite::kBounds;
  if (name == "all") return Suite::kAll;
  throw ConfigError("unknown suite '" + std::string(name) + "' (lemmas, bounds, all)");
}

namespace {

struct PiecewiseRun {
  convex::ConvexRunResult result;
  double distance = 0.0;
  double d0 = 0.0;
};

// The four deterministic variants on one random instance.
std::vector<PiecewiseRun> piecewise_runs(std::uint64_t seed, std::size_t instance,
                                         std::size_t steps) {
  auto problem = problems::PiecewiseMaxProblem::random(seed, instance);
  const Vector x0 = problem.default_start();
  const Vector xs = *problem.minimizer();
  std::vector<PiecewiseRun> runs;
  const double d0 = 1e-3 * distance(x0, xs);
  for (int variant = 0; variant < 4; ++variant) {
    convex::ConvexRunConfig rc;
    rc.steps = steps;
    rc.d0 = d0;
    double dist = distance(x0, xs);
    switch (variant) {
      case 0:
        rc.algorithm = convex::ConvexAlgorithm::kDualAveraging;
        rc.option = convex::DaOption::kI;
        break;
      case 1:
        rc.algorithm = convex::ConvexAlgorithm::kDualAveraging;
        rc.option = convex::DaOption::kII;
        break;
      case 2:
        rc.algorithm = convex::ConvexAlgorithm::kGradientDescent;
        break;
      default:
        rc.algorithm = convex::ConvexAlgorithm::kAdaGrad;
        dist = distance_inf(x0, xs);
        rc.d0 = 1e-3 * dist;
        break;
    }
    runs.push_back({convex::run_convex(problem, rc), dist, rc.d0});
  }
  return runs;
}

void lemma_reports(const VerifyOptions& opt, std::vector<BoundReport>& out) {
  Rng rng = seeded_rng(opt.seed, 0x1e33);
  for (std::size_t i = 0; i < opt.lemma_instances; ++i) {
    const double bound = rng.uniform(0.1, 10.0);
    const std::size_t len = 1 + static_cast<std::size_t>(rng.below(64));
    std::vector<double> norms(len);
    for (double& v : norms) v = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.0, bound);
    for (auto& r : analysis::check_gradient_sums(norms, bound)) out.push_back(std::move(r));

    std::vector<double> d(2 + static_cast<std::size_t>(rng.below(200)));
    d[0] = std::exp(rng.uniform(-10.0, 0.0));
    const double grow_prob = rng.uniform(0.0, 0.5);
    const double max_jump = rng.uniform(0.1, 3.0);
    for (std::size_t k = 1; k < d.size(); ++k)
      d[k] = rng.uniform() < grow_prob ? d[k - 1] * std::exp(rng.uniform(0.0, max_jump)) : d[k - 1];
    out.push_back(analysis::check_mindk(d));
  }

  for (double c : {0.5, 0.9, 0.999}) {
    double worst = 0.0;
    for (std::size_t seq = 0; seq < 100; ++seq) {
      ml::EmaPair pair(c);
      for (int k = 0; k < 100; ++k) {
        pair.step(rng.normal());
        const double implied = pair.implied_ema();
        const double scale = std::max(std::abs(pair.u_hat()), std::abs(implied));
        if (scale > 0.0) worst = std::max(worst, std::abs(pair.u_hat() - implied) / scale);
      }
    }
    out.push_back(analysis::make_report("ema_identity", worst, 1e-10, 0.0,
                                        "c=" + std::to_string(c)));
  }

  const std::size_t problems_n = std::min<std::size_t>(opt.problem_instances, 20);
  for (std::size_t i = 0; i < problems_n; ++i)
    for (const auto& run : piecewise_runs(opt.seed, i, opt.problem_steps))
      out.push_back(analysis::check_telescoping(run.result.trace));
}

void bound_reports(const VerifyOptions& opt, std::vector<BoundReport>& out) {
  for (std::size_t i = 0; i < opt.problem_instances; ++i) {
    for (const auto& run : piecewise_runs(opt.seed, i, opt.problem_steps)) {
      const auto& trace = run.result.trace;
      out.push_back(analysis::check_d_lower_bound(trace, run.distance));
      out.push_back(analysis::check_d_ceiling(trace, run.d0, run.distance));
      out.push_back(analysis::check_snorm_bound(trace));
      if (trace.kind == convex::TraceKind::kDualAveraging)
        out.push_back(analysis::check_option_dominance(trace));
    }
  }

  problems::AbsValueProblem abs;
  convex::ConvexRunConfig rc;
  rc.d0 = 0.1;
  rc.steps = 10001;
  rc.use_gradient_bound = true;
  const auto fixed = convex::run_convex(abs, rc);
  for (auto& r : analysis::check_rate_bounded_step(fixed, 1.0, 1.0, 0.0)) out.push_back(std::move(r));

  rc.use_gradient_bound = false;
  const auto plain = convex::run_convex(abs, rc);
  out.push_back(analysis::check_rate_plain_step(plain, 1.0, 1.0, 0.0));

  rc.steps = 100001;
  const auto long_run = convex::run_convex(abs, rc);
  out.push_back(analysis::check_dasym(long_run, 1.0, std::abs(long_run.x_last[0])));
}

}  // namespace

std::vector<BoundReport> run_verification(Suite suite, const VerifyOptions& options) {
  std::vector<BoundReport> out;
  if (suite != Suite::kBounds) lemma_reports(options, out);
  if (suite != Suite::kLemmas) bound_reports(options, out);
  return out;
}

}  // namespace dadapt::harness
