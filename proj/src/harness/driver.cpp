#include "dadapt/harness/driver.hpp"

#include <cmath>
#include <functional>

#include "dadapt/convex/run.hpp"
#include "dadapt/core/errors.hpp"
#include "dadapt/harness/baselines.hpp"
#include "dadapt/ml/adam.hpp"
#include "dadapt/ml/sgd.hpp"
#include "dadapt/problems/convex_problems.hpp"
#include "dadapt/problems/logistic.hpp"

namespace dadapt::harness {

namespace {

struct StepOut {
  double d = 0.0;
  double dhat = 0.0;
  double rate = 0.0;
  double d_after = 0.0;
};

enum class Returned { kLast, kUniformAverage };

struct Loop {
  std::function<StepOut(const Vector& g, double multiplier)> step;
  std::function<const Vector&()> x;
  Returned returned = Returned::kLast;
};

Vector start_point(const ExperimentConfig& config, const Problem& problem) {
  Vector x0 = config.x0 ? *config.x0 : problem.default_start();
  if (x0.size() != problem.dim())
    throw ConfigError("x0 has " + std::to_string(x0.size()) + " entries, problem has " +
                      std::to_string(problem.dim()));
  return x0;
}

double require_fstar(const Problem& problem) {
  const auto fstar = problem.fstar();
  if (!fstar) throw ConfigError("polyak needs a problem with known f*");
  return *fstar;
}

double require_bound(const ExperimentConfig& config, const Problem& problem) {
  if (config.G) return *config.G;
  if (const auto g = problem.lipschitz()) return *g;
  throw ConfigError("fixed step needs G (set G = ...)");
}

// Shared loop for everything outside the dual averaging family.
RunOutput drive(const ExperimentConfig& config, Problem& problem, Loop loop, Rng& rng,
                std::size_t n, RunOutput out) {
  const double work = problem.work_per_gradient();
  Vector sum(problem.dim(), 0.0);
  std::size_t summed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& x = loop.x();
    const Vector g = problem.subgradient(x, rng);
    const bool record = (k % config.record_every == 0) || k + 1 == n;
    const double fx = record ? problem.value(x) : 0.0;
    if (loop.returned == Returned::kUniformAverage) {
      axpy(1.0, x, sum);
      ++summed;
    }
    const double multiplier = schedule_eval(config.schedule, k, n);
    const StepOut s = loop.step(g, multiplier);
    if (record) {
      out.records.push_back({k, s.d, s.dhat, s.rate, fx, norm_sq(g),
                             static_cast<double>(k + 1) * work});
    }
    out.summary.steps = k + 1;
    out.summary.d_final = s.d_after;
    const Vector& next = loop.x();
    if (!std::isfinite(fx) || !all_finite(next) || norm(next) > kDivergenceNorm) {
      out.summary.diverged = true;
      break;
    }
  }
  const Vector& last = loop.x();
  out.summary.f_last = problem.value(last);
  if (loop.returned == Returned::kUniformAverage && summed > 0) {
    for (double& v : sum) v /= static_cast<double>(summed);
    out.x_returned = std::move(sum);
  } else {
    out.x_returned = last;
  }
  out.summary.f_final = problem.value(out.x_returned);
  if (!std::isfinite(out.summary.f_final) || !std::isfinite(out.summary.f_last))
    out.summary.diverged = true;
  return out;
}

RunOutput run_convex_family(const ExperimentConfig& config, Problem& problem, std::uint64_t seed,
                            std::size_t n, RunOutput out) {
  convex::ConvexRunConfig rc;
  switch (config.algorithm) {
    case Algorithm::kDaI:
      rc.algorithm = convex::ConvexAlgorithm::kDualAveraging;
      rc.option = convex::DaOption::kI;
      break;
    case Algorithm::kDaII:
      rc.algorithm = convex::ConvexAlgorithm::kDualAveraging;
      rc.option = convex::DaOption::kII;
      break;
    case Algorithm::kGd:
      rc.algorithm = convex::ConvexAlgorithm::kGradientDescent;
      break;
    default:
      rc.algorithm = convex::ConvexAlgorithm::kAdaGrad;
      break;
  }
  rc.d0 = config.d0;
  rc.use_gradient_bound = config.g_fixed;
  rc.gradient_bound = config.G;
  rc.steps = n;
  rc.x0 = start_point(config, problem);
  rc.schedule = config.schedule;
  rc.record_every = config.record_every;
  rc.max_norm = kDivergenceNorm;
  rc.seed = seed;
  rc.stream = problem_hash(config);

  convex::ConvexRunResult r = convex::run_convex(problem, rc);
  out.records = r.trajectory.records();
  out.summary.steps = r.steps_taken;
  out.summary.d_final = r.d_sequence.back();
  out.summary.heuristic_g = r.heuristic_bound;
  out.summary.diverged = r.diverged;
  out.x_returned = r.x_hat;
  out.summary.f_final = r.f_hat;
  out.summary.f_last = problem.value(r.x_last);
  if (rc.algorithm == convex::ConvexAlgorithm::kDualAveraging && r.t) {
    out.summary.t = r.t;
    out.summary.f_t = r.f_hat_t;
  }
  if (!std::isfinite(out.summary.f_final) || !std::isfinite(out.summary.f_last))
    out.summary.diverged = true;
  return out;
}

}  // namespace

std::unique_ptr<Problem> make_problem(const ExperimentConfig& config) {
  switch (config.problem) {
    case ProblemKind::kAbs:
      return std::make_unique<problems::AbsValueProblem>(config.abs_start);
    case ProblemKind::kPiecewise: {
      problems::PiecewiseOptions opt;
      opt.min_dim = config.pw_min_dim;
      opt.max_dim = config.pw_max_dim;
      opt.extra_pieces = config.pw_extra;
      return std::make_unique<problems::PiecewiseMaxProblem>(
          problems::PiecewiseMaxProblem::random(config.pw_seed, 0, opt));
    }
    case ProblemKind::kLogisticSynth: {
      problems::SynthOptions opt;
      opt.examples = config.synth_examples;
      opt.dim = config.synth_dim;
      opt.margin = config.synth_margin;
      opt.noise = config.synth_noise;
      auto data = std::make_shared<const problems::Dataset>(
          problems::synth_dataset(config.data_seed, opt));
      return std::make_unique<problems::LogisticProblem>(data, config.batch_size);
    }
    case ProblemKind::kLibsvm: {
      auto data = std::make_shared<const problems::Dataset>(problems::load_libsvm(config.data));
      if (data->empty()) throw ConfigError("dataset '" + config.data + "' has no examples");
      return std::make_unique<problems::LogisticProblem>(data, config.batch_size);
    }
  }
  throw ConfigError("unknown problem");
}

std::size_t resolve_steps(const ExperimentConfig& config, const Problem& problem) {
  if (config.steps) return *config.steps;
  if (const auto* lp = dynamic_cast<const problems::LogisticProblem*>(&problem))
    return config.epochs * lp->steps_per_epoch();
  return 1000;
}

std::optional<double> known_distance(const ExperimentConfig& config, const Problem& problem) {
  if (config.D) return config.D;
  const auto xs = problem.minimizer();
  if (!xs) return std::nullopt;
  return distance(start_point(config, problem), *xs);
}

RunOutput run_single(const ExperimentConfig& config, std::uint64_t seed) {
  auto problem = make_problem(config);
  return run_single(config, seed, *problem);
}

RunOutput run_single(const ExperimentConfig& config, std::uint64_t seed, Problem& problem) {
  validate(config);
  const std::size_t n = resolve_steps(config, problem);
  const auto dist = known_distance(config, problem);

  RunOutput out;
  out.summary.seed = seed;
  out.summary.run_id = config_hash(config) ^ (seed * 0x9E3779B97F4A7C15ULL);
  out.summary.out_of_theory = dist && config.d0 > *dist && is_dadapt(config.algorithm);

  switch (config.algorithm) {
    case Algorithm::kDaI:
    case Algorithm::kDaII:
    case Algorithm::kGd:
    case Algorithm::kAdaGradDa:
      return run_convex_family(config, problem, seed, n, std::move(out));
    default:
      break;
  }

  Rng rng = seeded_rng(seed, problem_hash(config));
  const Vector x0 = start_point(config, problem);
  const double lr = config.lr.value_or(1.0);
  Loop loop;

  switch (config.algorithm) {
    case Algorithm::kSgdDa: {
      auto opt = std::make_shared<ml::DAdaptSgd>(x0, config.d0, config.beta, config.G);
      loop.step = [opt, lr](const Vector& g, double m) {
        const double d = opt->d();
        const auto diag = opt->step(g, lr * m);
        const double rate = opt->gradient_bound() ? d * lr * m / *opt->gradient_bound() : 0.0;
        return StepOut{d, diag.dhat, rate, diag.d_next};
      };
      loop.x = [opt]() -> const Vector& { return opt->x(); };
      break;
    }
    case Algorithm::kAdamDa: {
      ml::AdamOptions ao{config.beta1, config.beta2, config.eps, config.decay};
      auto opt = std::make_shared<ml::DAdaptAdam>(x0, config.d0, ao);
      loop.step = [opt, lr](const Vector& g, double m) {
        const double d = opt->d();
        const auto diag = opt->step(g, lr * m);
        return StepOut{d, diag.dhat, d * lr * m, diag.d_next};
      };
      loop.x = [opt]() -> const Vector& { return opt->x(); };
      break;
    }
    case Algorithm::kAdaGradNorm: {
      if (!dist) throw ConfigError("adagrad_norm needs D (set D = ... or use a problem with known x*)");
      auto opt = std::make_shared<AdaGradNorm>(x0, *dist);
      const double d = *dist;
      loop.step = [opt, d](const Vector& g, double) { return StepOut{d, 0.0, opt->step(g), d}; };
      loop.x = [opt]() -> const Vector& { return opt->x(); };
      loop.returned = Returned::kUniformAverage;
      break;
    }
    case Algorithm::kPolyak: {
      const double fstar = require_fstar(problem);
      auto x = std::make_shared<Vector>(x0);
      Problem* p = &problem;
      loop.step = [x, p, fstar](const Vector& g, double) {
        const double fx = p->value(*x);
        const double g_sq = norm_sq(g);
        const double rate = g_sq > 0.0 ? (fx - fstar) / g_sq : 0.0;
        *x = polyak_step(*x, g, fx, fstar);
        return StepOut{0.0, 0.0, rate};
      };
      loop.x = [x]() -> const Vector& { return *x; };
      break;
    }
    case Algorithm::kFixed: {
      double gamma = 0.0;
      if (config.lr) {
        gamma = *config.lr;
      } else {
        if (!dist) throw ConfigError("fixed step needs lr, or D and G");
        gamma = *dist / (require_bound(config, problem) * std::sqrt(static_cast<double>(n)));
      }
      auto x = std::make_shared<Vector>(x0);
      loop.step = [x, gamma](const Vector& g, double m) {
        axpy(-gamma * m, g, *x);
        return StepOut{0.0, 0.0, gamma * m};
      };
      loop.x = [x]() -> const Vector& { return *x; };
      loop.returned = Returned::kUniformAverage;
      break;
    }
    case Algorithm::kAdaGrad: {
      auto opt = std::make_shared<PlainAdaGrad>(x0, config.eps);
      loop.step = [opt, lr](const Vector& g, double m) {
        opt->step(g, lr * m);
        return StepOut{0.0, 0.0, lr * m};
      };
      loop.x = [opt]() -> const Vector& { return opt->x(); };
      break;
    }
    case Algorithm::kAdam: {
      auto opt = std::make_shared<PlainAdam>(x0, config.beta1, config.beta2, config.eps,
                                             config.decay);
      loop.step = [opt, lr](const Vector& g, double m) {
        opt->step(g, lr * m);
        return StepOut{0.0, 0.0, lr * m};
      };
      loop.x = [opt]() -> const Vector& { return opt->x(); };
      break;
    }
    default:
      throw ConfigError("unhandled algorithm");
  }
  return drive(config, problem, std::move(loop), rng, n, std::move(out));
}

}  // namespace dadapt::harness
