#include "tlearn/qlearn.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tlearn {

void QParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("q alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("q gamma must lie in [0, 1)");
}

std::size_t state_index(std::span<const int> intervals, std::span<const int> counts) {
  if (intervals.size() != counts.size()) throw std::domain_error("state_index: arity mismatch");
  std::size_t row = 0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (counts[k] < 1 || intervals[k] < 1 || intervals[k] > counts[k]) {
      throw std::domain_error("state_index: interval " + std::to_string(intervals[k]) + " outside 1.." +
                              std::to_string(counts[k]));
    }
    row = row * static_cast<std::size_t>(counts[k]) + static_cast<std::size_t>(intervals[k] - 1);
  }
  return row;
}

QTable::QTable(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), values_(states * actions, 0.0) {
  if (states == 0 || actions == 0) throw std::invalid_argument("empty Q-table");
}

double QTable::row_max(std::size_t s) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(s * actions_);
  return *std::max_element(first, first + static_cast<std::ptrdiff_t>(actions_));
}

void QTable::write_csv(std::ostream& out) const {
  out << "state";
  for (std::size_t a = 0; a < actions_; ++a) out << ",q" << a;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t s = 0; s < states_; ++s) {
    out << s;
    for (std::size_t a = 0; a < actions_; ++a) out << ',' << at(s, a);
    out << '\n';
  }
  out.precision(old_precision);
}

void bellman_update(QTable& table, std::size_t s_prev, std::size_t a_prev, std::size_t s_cur, double r,
                    const QParams& params) {
  if (s_prev >= table.states() || s_cur >= table.states() || a_prev >= table.actions()) {
    throw std::out_of_range("bellman_update: index out of range");
  }
  double& q = table.at(s_prev, a_prev);
  q = q * (1.0 - params.alpha) + params.alpha * (r + params.gamma * table.row_max(s_cur));
}

std::size_t q_policy(const QTable& table, std::size_t s) {
  if (s >= table.states()) throw std::out_of_range("q_policy: state out of range");
  std::size_t best = 0;
  for (std::size_t a = 1; a < table.actions(); ++a) {
    if (table.at(s, a) > table.at(s, best)) best = a;
  }
  return best;
}

}  // namespace tlearn
