#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dadapt::problems {

struct Feature {
  std::uint32_t index;  // 1-based, as in the text format
  double value;
};

/// Binary-labelled sparse examples in compressed-row form.
class Dataset {
 public:
  Dataset() = default;

  /// Appends one example. Indices must be strictly ascending and >= 1, the
  /// label must be -1 or +1.
  void add(std::span<const Feature> features, int label);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  /// Largest feature index seen.
  std::size_t dim() const { return dim_; }

  std::span<const Feature> row(std::size_t i) const {
    return {features_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  int label(std::size_t i) const { return labels_[i]; }

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Feature> features_;
  std::vector<int> labels_;
  std::size_t dim_ = 0;
};

bool operator==(const Feature& a, const Feature& b);

/// Parses LIBSVM text: `<label> <index>:<value> ...` per line, '#' starts a
/// comment, LF or CRLF endings. Labels 0/-1 map to -1, +1/1 to +1, anything
/// else is rejected as multiclass. Throws ParseError with the line number.
Dataset parse_libsvm(std::string_view text);
Dataset load_libsvm(const std::string& path);

/// Writes LIBSVM text with shortest round-trip number formatting.
std::string serialize_libsvm(const Dataset& data);

struct SynthOptions {
  std::size_t examples = 1000;
  std::size_t dim = 20;
  /// Shift of each example along the hidden direction, times its label.
  double margin = 0.5;
  /// Probability that a label is flipped.
  double noise = 0.1;
};

/// Dense linearly structured data: x ~ N(0, I) shifted by margin * y * w_true
/// with y = sign(<w_true, x>) before the flip. Deterministic for a fixed seed.
Dataset synth_dataset(std::uint64_t seed, const SynthOptions& options);

}  // namespace dadapt::problems
