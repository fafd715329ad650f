#include "tlearn/ctnn.hpp"

#include <stdexcept>
#include <string>

namespace tlearn {

void CtnnParams::validate() const {
  neuron().validate();
  if (mu_capture.raw() < 0 || mu_backoff.raw() < 0 || mu_search.raw() < 0) {
    throw std::invalid_argument("ctnn learning increments must be >= 0");
  }
  if (w_init.raw() < 0 || w_init > Fixed::from_int(w_max)) {
    throw std::invalid_argument("ctnn w_init must lie in [0, w_max]");
  }
  if (neurons < 1) throw std::invalid_argument("ctnn needs at least one neuron");
}

CtnnColumn::CtnnColumn(std::size_t inputs, CtnnParams params)
    : params_(params),
      weights_(inputs, static_cast<std::size_t>(params.neurons), params.w_max, params.w_init) {
  params_.validate();
  if (inputs == 0) throw std::invalid_argument("ctnn needs at least one input line");
}

void CtnnColumn::check_width(const SpikeVolley& input) const {
  if (input.width() != inputs()) {
    throw std::invalid_argument("ctnn input width " + std::to_string(input.width()) + ", expected " +
                                std::to_string(inputs()));
  }
}

CtnnInference CtnnColumn::infer(const SpikeVolley& input) const {
  check_width(input);
  const NeuronConfig config = params_.neuron();
  CtnnInference result;
  result.neurons.reserve(neurons());
  std::vector<Fixed> column(inputs());
  for (std::size_t j = 0; j < neurons(); ++j) {
    for (std::size_t i = 0; i < inputs(); ++i) column[i] = weights_.at(i, j);
    result.neurons.push_back(evaluate_neuron(input, column, config));
  }
  std::vector<SpikeTime> spikes;
  std::vector<int> potentials;
  spikes.reserve(neurons());
  potentials.reserve(neurons());
  for (const auto& n : result.neurons) {
    spikes.push_back(n.spike);
    potentials.push_back(n.potential);
  }
  TieBreaker lowest_index;
  result.cid = wta_1(spikes, potentials, lowest_index);
  return result;
}

void CtnnColumn::stdp_update(const SpikeVolley& input, const SpikeVolley& output) {
  check_width(input);
  if (output.width() != neurons()) throw std::invalid_argument("ctnn output width mismatch");
  if (output.spike_count() > 1) throw std::logic_error("ctnn stdp_update: output volley is not one-hot");
  for (std::size_t j = 0; j < neurons(); ++j) {
    const SpikeTime z = output[j];
    for (std::size_t i = 0; i < inputs(); ++i) {
      const SpikeTime x = input[i];
      if (x.finite() && z.finite()) {
        weights_.adjust(i, j, x <= z ? params_.mu_capture : -params_.mu_backoff);
      } else if (x.finite()) {
        weights_.adjust(i, j, params_.mu_search);
      } else if (z.finite()) {
        weights_.adjust(i, j, -params_.mu_backoff);
      }
    }
  }
}

SpikeVolley CtnnColumn::step(const SpikeVolley& input) {
  CtnnInference inference = infer(input);
  stdp_update(input, inference.cid);
  return std::move(inference.cid);
}

}  // namespace tlearn
