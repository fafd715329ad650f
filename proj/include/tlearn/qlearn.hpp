#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace tlearn {

struct QParams {
  double alpha = 0.9;   // learning rate
  double gamma = 0.95;  // discount

  void validate() const;
};

// Mixed-radix row index, first state variable most significant. Indices
// are 1-based; throws std::domain_error when out of range.
std::size_t state_index(std::span<const int> intervals, std::span<const int> counts);

class QTable {
 public:
  QTable(std::size_t states, std::size_t actions);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  double at(std::size_t s, std::size_t a) const { return values_[s * actions_ + a]; }
  double& at(std::size_t s, std::size_t a) { return values_[s * actions_ + a]; }
  double row_max(std::size_t s) const;

  void write_csv(std::ostream& out) const;

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<double> values_;
};

// Q(s_prev, a_prev) <- (1 - alpha) Q(s_prev, a_prev) + alpha (r + gamma max_a Q(s_cur, a))
void bellman_update(QTable& table, std::size_t s_prev, std::size_t a_prev, std::size_t s_cur, double r,
                    const QParams& params);

// Greedy action; exact ties go to the lowest index.
std::size_t q_policy(const QTable& table, std::size_t s);

}  // namespace tlearn
