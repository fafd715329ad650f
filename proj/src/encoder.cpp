#include "tlearn/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tlearn {

IntervalSpec::IntervalSpec(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) throw std::invalid_argument("interval spec needs at least two endpoints");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (std::isnan(breakpoints_[i])) throw std::invalid_argument("interval endpoint is NaN");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("interval endpoints must be strictly increasing");
    }
  }
}

IntervalSpec IntervalSpec::uniform(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("interval count must be >= 1");
  std::vector<double> b(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) b[i] = lo + (hi - lo) * i / count;
  b.back() = hi;
  return IntervalSpec(std::move(b));
}

int IntervalSpec::discretize(double value) const {
  if (std::isnan(value)) throw std::domain_error("cannot discretize NaN");
  // First endpoint strictly greater than value, among the interior ones.
  const auto first = breakpoints_.begin() + 1;
  const auto last = breakpoints_.end() - 1;
  const auto it = std::upper_bound(first, last, value);
  return static_cast<int>(it - first) + 1;
}

void EncoderConfig::validate() const {
  if (fields.empty()) throw std::invalid_argument("encoder has no fields");
  if (hotness < 1 || hotness % 2 == 0) throw std::invalid_argument("hotness must be a positive odd integer");
}

int EncoderConfig::width() const {
  int w = 0;
  for (std::size_t f = 0; f < fields.size(); ++f) w += field_width(f);
  return w;
}

SpikeVolley encode_mhot(int index, int count, int hotness, SpikeTime at) {
  if (count < 1 || hotness < 1) throw std::domain_error("bad m-hot dimensions");
  if (index < 1 || index > count) {
    throw std::domain_error("interval " + std::to_string(index) + " outside 1.." + std::to_string(count));
  }
  SpikeVolley v(static_cast<std::size_t>(count + hotness - 1));
  for (int k = 0; k < hotness; ++k) v[static_cast<std::size_t>(index - 1 + k)] = at;
  return v;
}

std::vector<int> discretize_state(std::span<const double> values, const EncoderConfig& config) {
  if (values.size() != config.fields.size()) {
    throw std::invalid_argument("state has " + std::to_string(values.size()) + " values, encoder expects " +
                                std::to_string(config.fields.size()));
  }
  std::vector<int> out(values.size());
  for (std::size_t f = 0; f < values.size(); ++f) out[f] = config.fields[f].discretize(values[f]);
  return out;
}

SpikeVolley encode_state(const StateSample& sample, const EncoderConfig& config) {
  const std::vector<int> idx = discretize_state(sample.values, config);
  const bool temporized = config.mode == EncodingMode::temporized;
  if (temporized && sample.strength_times.size() != idx.size()) {
    throw std::invalid_argument("temporized encoding needs one strength time per field");
  }
  SpikeVolley out;
  for (std::size_t f = 0; f < idx.size(); ++f) {
    const SpikeTime at(temporized ? sample.strength_times[f] : 0);
    out.append(encode_mhot(idx[f], config.fields[f].count(), config.hotness, at));
  }
  return out;
}

}  // namespace tlearn
