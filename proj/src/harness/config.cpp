#include "dadapt/harness/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "dadapt/core/errors.hpp"
#include "dadapt/core/rng.hpp"

namespace dadapt::harness {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 11> kAlgorithms{{
    {Algorithm::kDaI, "da_I"},
    {Algorithm::kDaII, "da_II"},
    {Algorithm::kGd, "gd"},
    {Algorithm::kAdaGradDa, "adagrad_da"},
    {Algorithm::kSgdDa, "sgd_da"},
    {Algorithm::kAdamDa, "adam_da"},
    {Algorithm::kAdaGradNorm, "adagrad_norm"},
    {Algorithm::kPolyak, "polyak"},
    {Algorithm::kFixed, "fixed"},
    {Algorithm::kAdaGrad, "adagrad"},
    {Algorithm::kAdam, "adam"},
}};

constexpr std::array<std::pair<ProblemKind, std::string_view>, 4> kProblems{{
    {ProblemKind::kAbs, "abs"},
    {ProblemKind::kPiecewise, "piecewise"},
    {ProblemKind::kLogisticSynth, "logistic_synth"},
    {ProblemKind::kLibsvm, "libsvm"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string bad_value(std::string_view key, std::string_view value) {
  return "invalid value '" + std::string(value) + "' for " + std::string(key);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) throw ConfigError(bad_value(key, v));
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) throw ConfigError(bad_value(key, v));
  return out;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = v.find(',');
    const auto part = trim(v.substr(0, comma));
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return parts;
}

std::optional<double> to_optional(std::string_view key, std::string_view v) {
  if (v == "none" || v.empty()) return std::nullopt;
  return to_double(key, v);
}

std::string_view schedule_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::kFlat:
      return "flat";
    case ScheduleKind::kStagewise:
      return "stagewise";
    case ScheduleKind::kInverseSqrtWarmup:
      return "warmup";
    case ScheduleKind::kCosine:
      return "cosine";
  }
  return "flat";
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string optional_text(const std::optional<double>& v) {
  return v ? format_double(*v) : "none";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [alg, name] : kAlgorithms)
    if (alg == a) return name;
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [alg, n] : kAlgorithms)
    if (n == name) return alg;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool is_dadapt(Algorithm a) {
  switch (a) {
    case Algorithm::kDaI:
    case Algorithm::kDaII:
    case Algorithm::kGd:
    case Algorithm::kAdaGradDa:
    case Algorithm::kSgdDa:
    case Algorithm::kAdamDa:
      return true;
    default:
      return false;
  }
}

std::string_view problem_name(ProblemKind p) {
  for (const auto& [kind, name] : kProblems)
    if (kind == p) return name;
  return "?";
}

ProblemKind parse_problem(std::string_view name) {
  for (const auto& [kind, n] : kProblems)
    if (n == name) return kind;
  throw ConfigError("unknown problem '" + std::string(name) + "'");
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  key = trim(key);
  if (key == "name") {
    if (value.empty()) throw ConfigError("name must not be empty");
    c.name = value;
  } else if (key == "problem") {
    c.problem = parse_problem(value);
  } else if (key == "data") {
    c.data = value;
  } else if (key == "algorithm") {
    c.algorithm = parse_algorithm(value);
  } else if (key == "d0") {
    c.d0 = to_double(key, value);
  } else if (key == "g_mode") {
    if (value == "fixed") c.g_fixed = true;
    else if (value == "none") c.g_fixed = false;
    else throw ConfigError(bad_value(key, value));
  } else if (key == "G") {
    c.G = to_optional(key, value);
  } else if (key == "D") {
    c.D = to_optional(key, value);
  } else if (key == "lr") {
    c.lr = to_optional(key, value);
  } else if (key == "beta") {
    c.beta = to_double(key, value);
  } else if (key == "beta1") {
    c.beta1 = to_double(key, value);
  } else if (key == "beta2") {
    c.beta2 = to_double(key, value);
  } else if (key == "eps") {
    c.eps = to_double(key, value);
  } else if (key == "decay") {
    c.decay = to_double(key, value);
  } else if (key == "schedule") {
    if (value == "flat") c.schedule.kind = ScheduleKind::kFlat;
    else if (value == "stagewise") c.schedule.kind = ScheduleKind::kStagewise;
    else if (value == "warmup") c.schedule.kind = ScheduleKind::kInverseSqrtWarmup;
    else if (value == "cosine") c.schedule.kind = ScheduleKind::kCosine;
    else throw ConfigError(bad_value(key, value));
  } else if (key == "stages") {
    c.schedule.stage_fractions.clear();
    for (auto part : split_list(value)) c.schedule.stage_fractions.push_back(to_double(key, part));
  } else if (key == "stage_factor") {
    c.schedule.stage_factor = to_double(key, value);
  } else if (key == "warmup_steps") {
    c.schedule.warmup_steps = to_uint(key, value);
  } else if (key == "steps") {
    if (value == "none" || value.empty()) c.steps.reset();
    else c.steps = to_uint(key, value);
  } else if (key == "epochs") {
    c.epochs = to_uint(key, value);
  } else if (key == "batch_size") {
    c.batch_size = to_uint(key, value);
  } else if (key == "record_every") {
    c.record_every = to_uint(key, value);
  } else if (key == "seeds") {
    c.seeds.clear();
    for (auto part : split_list(value)) c.seeds.push_back(to_uint(key, part));
  } else if (key == "output") {
    c.output = value;
  } else if (key == "x0") {
    if (value == "none" || value.empty()) {
      c.x0.reset();
    } else {
      Vector x;
      for (auto part : split_list(value)) x.push_back(to_double(key, part));
      c.x0 = std::move(x);
    }
  } else if (key == "abs_start") {
    c.abs_start = to_double(key, value);
  } else if (key == "data_seed") {
    c.data_seed = to_uint(key, value);
  } else if (key == "synth_examples") {
    c.synth_examples = to_uint(key, value);
  } else if (key == "synth_dim") {
    c.synth_dim = to_uint(key, value);
  } else if (key == "synth_margin") {
    c.synth_margin = to_double(key, value);
  } else if (key == "synth_noise") {
    c.synth_noise = to_double(key, value);
  } else if (key == "pw_seed") {
    c.pw_seed = to_uint(key, value);
  } else if (key == "pw_min_dim") {
    c.pw_min_dim = to_uint(key, value);
  } else if (key == "pw_max_dim") {
    c.pw_max_dim = to_uint(key, value);
  } else if (key == "pw_extra") {
    c.pw_extra = to_uint(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string problem_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "problem = " << problem_name(c.problem) << '\n';
  out << "data = " << c.data << '\n';
  out << "batch_size = " << c.batch_size << '\n';
  out << "abs_start = " << format_double(c.abs_start) << '\n';
  out << "data_seed = " << c.data_seed << '\n';
  out << "synth_examples = " << c.synth_examples << '\n';
  out << "synth_dim = " << c.synth_dim << '\n';
  out << "synth_margin = " << format_double(c.synth_margin) << '\n';
  out << "synth_noise = " << format_double(c.synth_noise) << '\n';
  out << "pw_seed = " << c.pw_seed << '\n';
  out << "pw_min_dim = " << c.pw_min_dim << '\n';
  out << "pw_max_dim = " << c.pw_max_dim << '\n';
  out << "pw_extra = " << c.pw_extra << '\n';
  return out.str();
}

std::string optimizer_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "algorithm = " << algorithm_name(c.algorithm) << '\n';
  out << "d0 = " << format_double(c.d0) << '\n';
  out << "g_mode = " << (c.g_fixed ? "fixed" : "none") << '\n';
  out << "G = " << optional_text(c.G) << '\n';
  out << "D = " << optional_text(c.D) << '\n';
  out << "lr = " << optional_text(c.lr) << '\n';
  out << "beta = " << format_double(c.beta) << '\n';
  out << "beta1 = " << format_double(c.beta1) << '\n';
  out << "beta2 = " << format_double(c.beta2) << '\n';
  out << "eps = " << format_double(c.eps) << '\n';
  out << "decay = " << format_double(c.decay) << '\n';
  out << "schedule = " << schedule_name(c.schedule.kind) << '\n';
  out << "stages = " << join(c.schedule.stage_fractions) << '\n';
  out << "stage_factor = " << format_double(c.schedule.stage_factor) << '\n';
  out << "warmup_steps = " << c.schedule.warmup_steps << '\n';
  out << "steps = " << (c.steps ? std::to_string(*c.steps) : "none") << '\n';
  out << "epochs = " << c.epochs << '\n';
  out << "record_every = " << c.record_every << '\n';
  out << "x0 = " << (c.x0 ? join(*c.x0) : "none") << '\n';
  return out.str();
}

}  // namespace

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "name = " << c.name << '\n';
  out << problem_text(c) << optimizer_text(c);
  out << "seeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) out << (i ? "," : "") << c.seeds[i];
  out << '\n';
  out << "output = " << c.output << '\n';
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string text = problem_text(config) + optimizer_text(config);
  return fnv1a64(text);
}

std::uint64_t problem_hash(const ExperimentConfig& config) {
  return fnv1a64(problem_text(config));
}

void validate(const ExperimentConfig& c) {
  if (!(c.d0 > 0.0) || !std::isfinite(c.d0)) throw ConfigError("d0 must be positive and finite");
  if (c.G && !(*c.G > 0.0)) throw ConfigError("G must be positive");
  if (c.D && !(*c.D > 0.0)) throw ConfigError("D must be positive");
  if (c.lr && !(*c.lr > 0.0)) throw ConfigError("lr must be positive");
  if (c.seeds.empty()) throw ConfigError("seeds must list at least one seed");
  if (c.steps && *c.steps == 0) throw ConfigError("steps must be positive");
  if (c.epochs == 0) throw ConfigError("epochs must be positive");
  if (c.record_every == 0) throw ConfigError("record_every must be positive");
  if (!(c.beta >= 0.0 && c.beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(c.beta2 > 0.0 && c.beta2 < 1.0)) throw ConfigError("beta2 must lie in (0, 1)");
  if (!(c.eps >= 0.0)) throw ConfigError("eps must be non-negative");
  if (!(c.decay >= 0.0)) throw ConfigError("decay must be non-negative");
  if (c.problem == ProblemKind::kLibsvm && c.data.empty())
    throw ConfigError("problem = libsvm needs data = <path>");
  if (c.g_fixed && c.algorithm != Algorithm::kDaI && c.algorithm != Algorithm::kDaII)
    throw ConfigError("g_mode = fixed applies to da_I and da_II only");
  if ((c.algorithm == Algorithm::kSgdDa || c.algorithm == Algorithm::kAdamDa) && c.lr &&
      *c.lr > 1.0)
    throw ConfigError("lr multiplier for sgd_da and adam_da must lie in (0, 1]");
  if ((c.algorithm == Algorithm::kAdaGrad || c.algorithm == Algorithm::kAdam) && !c.lr)
    throw ConfigError("algorithm " + std::string(algorithm_name(c.algorithm)) + " needs lr");
  c.schedule.validate();
}

}  // namespace dadapt::harness
