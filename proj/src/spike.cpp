#include "tlearn/spike.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlearn {

std::string SpikeTime::to_string() const { return is_inf() ? "inf" : std::to_string(value_); }

SpikeVolley SpikeVolley::one_hot(std::size_t width, std::size_t line, SpikeTime at) {
  SpikeVolley v(width);
  v.times_.at(line) = at;
  return v;
}

std::size_t SpikeVolley::spike_count() const {
  return static_cast<std::size_t>(
      std::count_if(times_.begin(), times_.end(), [](SpikeTime t) { return t.finite(); }));
}

bool SpikeVolley::is_binarized() const {
  return std::all_of(times_.begin(), times_.end(),
                     [](SpikeTime t) { return t.is_inf() || t.value() == 0; });
}

std::optional<std::size_t> SpikeVolley::first_spike() const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i].finite()) return i;
  }
  return std::nullopt;
}

std::optional<SpikeTime> SpikeVolley::min_time() const {
  auto it = std::min_element(times_.begin(), times_.end());
  if (it == times_.end() || it->is_inf()) return std::nullopt;
  return *it;
}

void SpikeVolley::append(const SpikeVolley& other) {
  times_.insert(times_.end(), other.times_.begin(), other.times_.end());
}

std::optional<ResponseShape> parse_response_shape(std::string_view text) {
  if (text == "ramp") return ResponseShape::ramp;
  if (text == "ramp_offset") return ResponseShape::ramp_offset;
  return std::nullopt;
}

std::string_view to_string(ResponseShape shape) {
  return shape == ResponseShape::ramp ? "ramp" : "ramp_offset";
}

void NeuronConfig::validate() const {
  if (threshold < 1) throw std::invalid_argument("neuron threshold must be >= 1");
  if (w_max < 1) throw std::invalid_argument("w_max must be >= 1");
  if (time_units < 1) throw std::invalid_argument("time_units must be >= 1");
}

int body_potential(const SpikeVolley& inputs, std::span<const Fixed> weights, int t,
                   const NeuronConfig& config) {
  if (inputs.width() != weights.size()) {
    throw std::invalid_argument("volley width " + std::to_string(inputs.width()) +
                                " does not match " + std::to_string(weights.size()) + " synapses");
  }
  int sum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const SpikeTime x = inputs[i];
    if (x.is_inf()) continue;
    sum += rif_response(static_cast<int>(weights[i].ceil()), t - x.value(), config.response,
                        config.w_max);
  }
  return sum;
}

NeuronOutput evaluate_neuron(const SpikeVolley& inputs, std::span<const Fixed> weights,
                             const NeuronConfig& config) {
  if (inputs.width() != weights.size()) {
    throw std::invalid_argument("volley width " + std::to_string(inputs.width()) +
                                " does not match " + std::to_string(weights.size()) + " synapses");
  }
  for (int t = 0; t < config.time_units; ++t) {
    const int potential = body_potential(inputs, weights, t, config);
    if (potential >= config.threshold) return {SpikeTime(t), potential};
  }
  return {};
}

std::size_t TieBreaker::choose(std::span<const std::size_t> tied, long context) {
  if (tied.empty()) throw std::invalid_argument("empty tie set");
  if (policy_ == Policy::lowest_index) return tied.front();
  if (has_last_ && last_context_ == context &&
      std::equal(tied.begin(), tied.end(), last_tied_.begin(), last_tied_.end())) {
    return last_choice_;
  }
  last_choice_ = tied[rng_.below(tied.size())];
  last_tied_.assign(tied.begin(), tied.end());
  last_context_ = context;
  has_last_ = true;
  return last_choice_;
}

SpikeVolley wta_1(std::span<const SpikeTime> spikes, std::span<const int> potentials,
                  TieBreaker& ties) {
  if (spikes.size() != potentials.size()) {
    throw std::invalid_argument("wta: spikes and potentials differ in length");
  }
  SpikeVolley out(spikes.size());
  const auto earliest = std::min_element(spikes.begin(), spikes.end());
  if (earliest == spikes.end() || earliest->is_inf()) return out;

  int best_potential = 0;
  bool any = false;
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (spikes[i] == *earliest && (!any || potentials[i] > best_potential)) {
      best_potential = potentials[i];
      any = true;
    }
  }
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    if (spikes[i] == *earliest && potentials[i] == best_potential) tied.push_back(i);
  }
  std::size_t winner = tied.front();
  if (tied.size() > 1) {
    winner = ties.choose(tied);
  } else {
    ties.no_tie();
  }
  out[winner] = *earliest;
  return out;
}

}  // namespace tlearn
