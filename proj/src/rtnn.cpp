#include "tlearn/rtnn.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tlearn {
namespace {

void check_decay_exact(Fixed peak, int omega, const char* name) {
  if (peak.raw() < 0) throw std::invalid_argument(std::string("rtnn ") + name + " must be >= 0");
  if (peak.raw() % omega != 0) {
    throw std::invalid_argument(std::string("rtnn ") + name + " = " + peak.to_string() +
                                " does not decay exactly in 1/128 steps over a window of " +
                                std::to_string(omega));
  }
}

}  // namespace

void RtnnParams::validate() const {
  if (threshold < 1) throw std::invalid_argument("rtnn threshold must be >= 1");
  if (omega_rho < 1 || omega_pi < 1) throw std::invalid_argument("rtnn windows must be >= 1");
  if (w_max < 1) throw std::invalid_argument("rtnn w_max must be >= 1");
  if (w_init.raw() < 0 || w_init > Fixed::from_int(w_max)) {
    throw std::invalid_argument("rtnn w_init must lie in [0, w_max]");
  }
  check_decay_exact(rho_plus, omega_rho, "rho_plus");
  check_decay_exact(rho_minus, omega_rho, "rho_minus");
  check_decay_exact(pi_plus, omega_pi, "pi_plus");
  check_decay_exact(pi_minus, omega_pi, "pi_minus");
}

Fixed decayed_update(Fixed peak, int c, int omega) {
  if (c >= omega) return Fixed{};
  return peak - Fixed::from_raw(peak.raw() * c / omega);
}

RtnnColumn::RtnnColumn(std::size_t inputs, std::size_t actions, RtnnParams params, Rng tie_rng)
    : params_(params),
      weights_(inputs, actions, params.w_max, params.w_init),
      counters_(inputs * actions, params.counter_limit()),
      eligibility_(inputs * actions, 0),
      ties_(tie_rng) {
  params_.validate();
  if (inputs == 0 || actions == 0) throw std::invalid_argument("rtnn needs inputs and actions");
}

std::optional<std::size_t> RtnnColumn::active_row(const SpikeVolley& cid) const {
  if (cid.width() != inputs()) {
    throw std::invalid_argument("rtnn input width " + std::to_string(cid.width()) + ", expected " +
                                std::to_string(inputs()));
  }
  if (cid.spike_count() > 1) throw std::logic_error("rtnn input is not one-hot");
  return cid.first_spike();
}

std::size_t RtnnColumn::infer(const SpikeVolley& cid) { return infer_row(active_row(cid)); }

std::size_t RtnnColumn::infer_row(std::optional<std::size_t> row) {
  scratch_.clear();
  if (!row) {
    for (std::size_t j = 0; j < actions(); ++j) scratch_.push_back(j);
    return ties_.choose(scratch_, -1);
  }
  const std::size_t i = *row;
  if (i >= inputs()) throw std::out_of_range("rtnn row out of range");
  int best = params_.threshold - 1;
  for (std::size_t j = 0; j < actions(); ++j) best = std::max(best, weights_.inference(i, j));
  const long context = static_cast<long>(i) * 2;
  if (best < params_.threshold) {
    for (std::size_t j = 0; j < actions(); ++j) scratch_.push_back(j);
    return ties_.choose(scratch_, context + 1);
  }
  for (std::size_t j = 0; j < actions(); ++j) {
    if (weights_.inference(i, j) == best) scratch_.push_back(j);
  }
  if (scratch_.size() == 1) {
    ties_.no_tie();
    return scratch_.front();
  }
  return ties_.choose(scratch_, context);
}

void RtnnColumn::record(const SpikeVolley& cid, std::size_t action) { record_row(active_row(cid), action); }

void RtnnColumn::record_row(std::optional<std::size_t> row, std::size_t action) {
  if (action >= actions()) throw std::out_of_range("rtnn action out of range");
  if (!row) return;
  const std::size_t base = *row * actions();
  for (std::size_t j = 0; j < actions(); ++j) {
    counters_[base + j] = 0;
    eligibility_[base + j] = j == action ? 1 : 0;
  }
}

void RtnnColumn::tick() {
  const int limit = params_.counter_limit();
  for (int& c : counters_) c = std::min(c + 1, limit);
}

void RtnnColumn::apply_reward(Reward r) {
  if (r == Reward::none) return;
  const bool reward = r == Reward::reward;
  const int omega = reward ? params_.omega_rho : params_.omega_pi;
  for (std::size_t i = 0; i < inputs(); ++i) {
    for (std::size_t j = 0; j < actions(); ++j) {
      const std::size_t k = i * actions() + j;
      const int c = counters_[k];
      if (c >= omega) continue;
      const bool on_path = eligibility_[k] != 0;
      Fixed delta;
      if (reward) {
        delta = on_path ? decayed_update(params_.rho_plus, c, omega)
                        : -decayed_update(params_.rho_minus, c, omega);
      } else {
        delta = on_path ? -decayed_update(params_.pi_minus, c, omega)
                        : decayed_update(params_.pi_plus, c, omega);
      }
      weights_.adjust(i, j, delta);
    }
  }
}

void RtnnColumn::reset_traces() {
  std::fill(counters_.begin(), counters_.end(), params_.counter_limit());
  std::fill(eligibility_.begin(), eligibility_.end(), 0);
}

void RtnnColumn::write_state(std::ostream& out) const {
  write_weights(out, weights_);
  out << "# c\n";
  for (std::size_t i = 0; i < inputs(); ++i) {
    for (std::size_t j = 0; j < actions(); ++j) out << (j ? " " : "") << counter(i, j);
    out << '\n';
  }
  out << "# e\n";
  for (std::size_t i = 0; i < inputs(); ++i) {
    for (std::size_t j = 0; j < actions(); ++j) out << (j ? " " : "") << (eligible(i, j) ? 1 : 0);
    out << '\n';
  }
}

}  // namespace tlearn
