#pragma once

#include <span>
#include <vector>

#include "tlearn/spike.hpp"

namespace tlearn {

// Interval boundaries for one state variable. Endpoints may be +/-inf.
class IntervalSpec {
 public:
  // Throws std::invalid_argument unless strictly increasing with >= 2 entries.
  explicit IntervalSpec(std::vector<double> breakpoints);

  // `count` equal intervals over [lo, hi].
  static IntervalSpec uniform(double lo, double hi, int count);

  int count() const { return static_cast<int>(breakpoints_.size()) - 1; }
  std::span<const double> breakpoints() const { return breakpoints_; }

  // 1-based interval index. Lower endpoints are closed; the top interval is
  // also closed on the right. Values outside the range clamp to the end
  // intervals. NaN throws std::domain_error.
  int discretize(double value) const;

  bool operator==(const IntervalSpec&) const = default;

 private:
  std::vector<double> breakpoints_;
};

enum class EncodingMode { binarized, temporized };

struct EncoderConfig {
  std::vector<IntervalSpec> fields;
  int hotness = 1;  // m, odd
  EncodingMode mode = EncodingMode::binarized;

  void validate() const;
  int field_width(std::size_t field) const { return fields[field].count() + hotness - 1; }
  int width() const;
};

struct StateSample {
  std::vector<double> values;
  // Per-field spike time offsets; used only in temporized mode.
  std::vector<int> strength_times;
};

// Binarized m-hot code for 1-based interval `index`: spikes on lines
// index .. index + hotness - 1 (1-based) of a width count + hotness - 1 bundle.
SpikeVolley encode_mhot(int index, int count, int hotness, SpikeTime at = SpikeTime(0));

// Per-field interval indices, in field order.
std::vector<int> discretize_state(std::span<const double> values, const EncoderConfig& config);

// Concatenation of the per-field m-hot codes in field order.
SpikeVolley encode_state(const StateSample& sample, const EncoderConfig& config);

}  // namespace tlearn
