#include "dadapt/problems/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dadapt/core/errors.hpp"
#include "dadapt/core/rng.hpp"
#include "dadapt/core/vector.hpp"

namespace dadapt::problems {

bool operator==(const Feature& a, const Feature& b) {
  return a.index == b.index && a.value == b.value;
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.dim_ == b.dim_ && a.labels_ == b.labels_ && a.offsets_ == b.offsets_ &&
         a.features_ == b.features_;
}

void Dataset::add(std::span<const Feature> features, int label) {
  if (label != 1 && label != -1) throw PreconditionError("labels must be -1 or +1");
  std::uint32_t prev = 0;
  for (const auto& f : features) {
    if (f.index <= prev) throw PreconditionError("feature indices must be ascending and >= 1");
    if (!std::isfinite(f.value)) throw PreconditionError("feature values must be finite");
    prev = f.index;
  }
  features_.insert(features_.end(), features.begin(), features.end());
  offsets_.push_back(features_.size());
  labels_.push_back(label);
  if (prev > dim_) dim_ = prev;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', which LIBSVM labels commonly carry.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v))
    throw ParseError(line, std::string("non-numeric ") + what + " '" + std::string(token) + "'");
  return v;
}

}  // namespace

Dataset parse_libsvm(std::string_view text) {
  Dataset data;
  std::vector<Feature> row;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    row.clear();
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string_view {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      return line.substr(start, pos - start);
    };

    const double raw_label = parse_double(next_token(), line_no, "label");
    int label = 0;
    if (raw_label == 1.0) {
      label = 1;
    } else if (raw_label == -1.0 || raw_label == 0.0) {
      label = -1;
    } else {
      throw ParseError(line_no, "multiclass label " + std::to_string(raw_label) + " not supported");
    }

    std::uint32_t prev = 0;
    for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError(line_no, "malformed feature '" + std::string(tok) + "'");
      const auto idx_text = tok.substr(0, colon);
      std::uint32_t index = 0;
      const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || index == 0)
        throw ParseError(line_no, "bad feature index '" + std::string(idx_text) + "'");
      if (index <= prev) throw ParseError(line_no, "feature indices must be ascending");
      prev = index;
      row.push_back({index, parse_double(tok.substr(colon + 1), line_no, "feature value")});
    }
    data.add(row, label);
  }
  return data;
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

std::string serialize_libsvm(const Dataset& data) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += data.label(i) > 0 ? "+1" : "-1";
    for (const auto& f : data.row(i)) {
      out += ' ';
      out += std::to_string(f.index);
      out += ':';
      const auto res = std::to_chars(buf, buf + sizeof(buf), f.value);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

Dataset synth_dataset(std::uint64_t seed, const SynthOptions& options) {
  if (options.examples < 2) throw ConfigError("synthetic dataset needs at least 2 examples");
  if (options.dim < 1) throw ConfigError("synthetic dataset needs dim >= 1");
  if (!(options.noise >= 0.0 && options.noise <= 1.0)) throw ConfigError("noise must lie in [0, 1]");

  Rng rng = seeded_rng(seed, 0x5EED);
  Vector direction(options.dim);
  for (double& v : direction) v = rng.normal();
  const double len = norm(direction);
  for (double& v : direction) v /= len;

  Dataset data;
  std::vector<Feature> row(options.dim);
  Vector x(options.dim);
  for (std::size_t n = 0; n < options.examples; ++n) {
    for (double& v : x) v = rng.normal();
    const int clean = dot(x, direction) >= 0.0 ? 1 : -1;
    axpy(options.margin * clean, direction, x);
    const int label = rng.uniform() < options.noise ? -clean : clean;
    for (std::size_t j = 0; j < options.dim; ++j)
      row[j] = {static_cast<std::uint32_t>(j + 1), x[j]};
    data.add(row, label);
  }
  return data;
}

}  // namespace dadapt::problems
