#pragma once

#include <cstddef>
#include <vector>

#include "tlearn/spike.hpp"
#include "tlearn/weights.hpp"

namespace tlearn {

struct CtnnParams {
  int threshold = 6;
  Fixed mu_capture = Fixed::from_raw(8);  // 1/16
  Fixed mu_backoff = Fixed::from_raw(8);  // 1/16
  Fixed mu_search{};
  int w_max = 8;
  Fixed w_init = Fixed::from_int(5);
  int neurons = 16;  // Zcnt
  int time_units = 4;
  ResponseShape response = ResponseShape::ramp_offset;

  void validate() const;
  NeuronConfig neuron() const { return {threshold, w_max, time_units, response}; }
};

struct CtnnInference {
  SpikeVolley cid;                    // one-hot, or all-INF
  std::vector<NeuronOutput> neurons;  // pre-inhibition outputs
};

// Online clustering column: a p x Zcnt crossbar of excitatory RIF neurons
// behind 1-WTA inhibition, learning with two-factor STDP.
class CtnnColumn {
 public:
  CtnnColumn(std::size_t inputs, CtnnParams params);

  std::size_t inputs() const { return weights_.rows(); }
  std::size_t neurons() const { return weights_.cols(); }
  const CtnnParams& params() const { return params_; }

  // Rows are input lines, columns are neurons.
  const WeightMatrix& weights() const { return weights_; }
  WeightMatrix& weights() { return weights_; }

  // Winner by earliest spike, then highest potential, then lowest index.
  CtnnInference infer(const SpikeVolley& input) const;

  // Per synapse (x_i input time, z_j output time):
  //   both finite, x <= z  -> +mu_capture
  //   both finite, x >  z  -> -mu_backoff
  //   x finite, z INF      -> +mu_search
  //   x INF, z finite      -> -mu_backoff
  //   both INF             -> no change
  // Throws std::logic_error if `output` has more than one spike.
  void stdp_update(const SpikeVolley& input, const SpikeVolley& output);

  // Infer with the pre-update weights, learn, return the CId.
  SpikeVolley step(const SpikeVolley& input);

 private:
  void check_width(const SpikeVolley& input) const;

  CtnnParams params_;
  WeightMatrix weights_;
};

}  // namespace tlearn
