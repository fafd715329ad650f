#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tlearn/reward.hpp"
#include "tlearn/spike.hpp"
#include "tlearn/weights.hpp"

namespace tlearn {

struct RtnnParams {
  int threshold = 2;
  Fixed rho_plus = Fixed::from_raw(192);  // 3/2
  Fixed rho_minus = Fixed::from_raw(192);
  int omega_rho = 2;
  Fixed pi_plus = Fixed::from_raw(192);
  Fixed pi_minus = Fixed::from_raw(192);
  int omega_pi = 16;
  int w_max = 8;
  Fixed w_init = Fixed::from_int(5);

  // Rejects magnitudes whose linear decay is not exact in 1/128 units.
  void validate() const;
  int counter_limit() const { return omega_rho > omega_pi ? omega_rho : omega_pi; }
};

// Linear decay of a peak update over a window: peak - c * peak / omega,
// zero from c = omega on.
Fixed decayed_update(Fixed peak, int c, int omega);

// Reinforcement column: one-hot CId in, one-hot action out, three-factor
// learning driven by per-synapse recency counters (c) and eligibility
// flags (e).
class RtnnColumn {
 public:
  RtnnColumn(std::size_t inputs, std::size_t actions, RtnnParams params, Rng tie_rng);

  std::size_t inputs() const { return weights_.rows(); }
  std::size_t actions() const { return weights_.cols(); }
  const RtnnParams& params() const { return params_; }

  const WeightMatrix& weights() const { return weights_; }
  WeightMatrix& weights() { return weights_; }
  int counter(std::size_t i, std::size_t j) const { return counters_[i * actions() + j]; }
  bool eligible(std::size_t i, std::size_t j) const { return eligibility_[i * actions() + j] != 0; }

  // Highest ceiling weight at or above threshold in the active row; ties and
  // the no-candidate case go to a consistent pseudo-random choice. A volley
  // with no spike selects among all actions the same way. Throws
  // std::logic_error for more than one spike.
  std::size_t infer(const SpikeVolley& cid);
  std::size_t infer_row(std::optional<std::size_t> row);

  // Active row i: c[i][*] = 0, e[i][*] = one-hot at `action`. Other rows kept.
  void record(const SpikeVolley& cid, std::size_t action);
  void record_row(std::optional<std::size_t> row, std::size_t action);

  // c = min(c + 1, counter_limit) everywhere.
  void tick();

  // Three-factor update of every synapse inside the reward or punishment window.
  void apply_reward(Reward r);

  // Saturates all counters and clears eligibility; no synapse is then
  // inside any window.
  void reset_traces();

  void write_state(std::ostream& out) const;

 private:
  std::optional<std::size_t> active_row(const SpikeVolley& cid) const;

  RtnnParams params_;
  WeightMatrix weights_;
  std::vector<int> counters_;
  std::vector<std::uint8_t> eligibility_;
  TieBreaker ties_;
  std::vector<std::size_t> scratch_;
};

}  // namespace tlearn
