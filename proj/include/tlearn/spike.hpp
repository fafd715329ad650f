#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlearn/fixed_point.hpp"
#include "tlearn/rng.hpp"

namespace tlearn {

// Discrete spike time: a small non-negative integer, or INF for "no spike".
// INF absorbs addition and orders after every finite time.
class SpikeTime {
 public:
  constexpr SpikeTime() = default;  // INF
  // Precondition: t >= 0.
  constexpr explicit SpikeTime(int t) : value_(t) {}

  static constexpr SpikeTime inf() { return SpikeTime{}; }

  constexpr bool is_inf() const { return value_ == kInfRaw; }
  constexpr bool finite() const { return value_ != kInfRaw; }
  // Precondition: finite().
  constexpr int value() const { return value_; }

  constexpr SpikeTime operator+(int k) const {
    return is_inf() ? SpikeTime{} : SpikeTime(value_ + k);
  }

  constexpr auto operator<=>(const SpikeTime&) const = default;

  std::string to_string() const;

 private:
  static constexpr int kInfRaw = std::numeric_limits<int>::max();
  int value_ = kInfRaw;
};

inline constexpr SpikeTime kInf = SpikeTime::inf();

// One spike time per line of a bundle.
class SpikeVolley {
 public:
  SpikeVolley() = default;
  explicit SpikeVolley(std::size_t width) : times_(width) {}
  explicit SpikeVolley(std::vector<SpikeTime> times) : times_(std::move(times)) {}
  SpikeVolley(std::initializer_list<SpikeTime> times) : times_(times) {}

  static SpikeVolley one_hot(std::size_t width, std::size_t line, SpikeTime at = SpikeTime(0));

  std::size_t width() const { return times_.size(); }
  const SpikeTime& operator[](std::size_t i) const { return times_[i]; }
  SpikeTime& operator[](std::size_t i) { return times_[i]; }
  std::span<const SpikeTime> times() const { return times_; }

  std::size_t spike_count() const;
  bool is_one_hot() const { return spike_count() == 1; }
  bool is_binarized() const;
  // Index of the first finite line, if any.
  std::optional<std::size_t> first_spike() const;
  // Earliest finite time, if any.
  std::optional<SpikeTime> min_time() const;

  void append(const SpikeVolley& other);

  bool operator==(const SpikeVolley&) const = default;

 private:
  std::vector<SpikeTime> times_;
};

// Ramp integrate-and-fire response shapes.
//   ramp:        r_w(t) = min(w, t + 1)
//   ramp_offset: as ramp, but weights at or below w_max / 2 start one time
//                unit later, r_w(t) = min(w, t). Lower weights therefore
//                raise the body potential more slowly.
enum class ResponseShape { ramp, ramp_offset };

std::optional<ResponseShape> parse_response_shape(std::string_view text);
std::string_view to_string(ResponseShape shape);

// Response at `t` time units after spike arrival through integer weight `w`.
constexpr int rif_response(int w, int t, ResponseShape shape = ResponseShape::ramp, int w_max = 8) {
  if (t < 0 || w <= 0) return 0;
  int rise = t + 1;
  if (shape == ResponseShape::ramp_offset && 2 * w <= w_max) rise = t;
  return rise < w ? rise : w;
}

struct NeuronConfig {
  int threshold = 1;
  int w_max = 8;
  // Time units evaluated per step; spikes are searched for in [0, time_units).
  int time_units = 4;
  ResponseShape response = ResponseShape::ramp_offset;

  void validate() const;
};

struct NeuronOutput {
  SpikeTime spike;
  int potential = 0;  // body potential at the spike time, 0 if none

  bool operator==(const NeuronOutput&) const = default;
};

// Body potential at time t: sum of responses through ceiling weights.
int body_potential(const SpikeVolley& inputs, std::span<const Fixed> weights, int t,
                   const NeuronConfig& config);

// SRM0 neuron: the output spike is the first t at which the body potential
// reaches the threshold. Throws std::invalid_argument on width mismatch.
NeuronOutput evaluate_neuron(const SpikeVolley& inputs, std::span<const Fixed> weights,
                             const NeuronConfig& config);

// Resolves ties that survive the earliest-time and highest-potential rules.
class TieBreaker {
 public:
  enum class Policy { lowest_index, consistent_random };

  // Lowest-index breaker.
  TieBreaker() = default;
  // Consistent pseudo-random breaker drawing from `rng`.
  explicit TieBreaker(Rng rng) : policy_(Policy::consistent_random), rng_(rng) {}

  Policy policy() const { return policy_; }

  // `tied` is sorted ascending and non-empty. `context` distinguishes tie
  // sets arising from different situations (e.g. the active input row).
  // While the same (context, tied) key repeats on consecutive calls the
  // previous resolution is returned; any other key draws afresh.
  std::size_t choose(std::span<const std::size_t> tied, long context = 0);

  // A decision that needed no tie breaking; ends any run of consecutive ties.
  void no_tie() { has_last_ = false; }

 private:
  Policy policy_ = Policy::lowest_index;
  Rng rng_;
  bool has_last_ = false;
  long last_context_ = 0;
  std::vector<std::size_t> last_tied_;
  std::size_t last_choice_ = 0;
};

// 1-WTA inhibition: passes the earliest spike; ties go to the highest
// potential at spike time, then to `ties`. All-INF in gives all-INF out.
SpikeVolley wta_1(std::span<const SpikeTime> spikes, std::span<const int> potentials,
                  TieBreaker& ties);

}  // namespace tlearn
