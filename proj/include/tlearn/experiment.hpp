#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tlearn/cartpole.hpp"
#include "tlearn/ctnn.hpp"
#include "tlearn/encoder.hpp"
#include "tlearn/qlearn.hpp"
#include "tlearn/rtnn.hpp"

namespace tlearn {

enum class AgentKind {
  tlearn,           // C-TNN -> R-TNN
  qlearn_baseline,  // explores through a T-learning agent, then exploits the Q-table
  naive,            // push toward the lean
  fixed_optimal_1sv,
  fixed_optimal_2sv,
  fixed_optimal_3sv,
};

std::optional<AgentKind> parse_agent_kind(std::string_view text);
std::string_view to_string(AgentKind kind);

// Encoder units: degrees, degrees/second, meters, meters/second.
enum class StateVariable { angle, angular_velocity, displacement, cart_velocity };
inline constexpr std::size_t kStateVariableCount = 4;

std::optional<StateVariable> parse_state_variable(std::string_view text);
std::string_view to_string(StateVariable sv);
double state_value(const CartPoleState& s, StateVariable sv);

enum class Protocol {
  fixed,        // warmup_episodes then test_episodes
  convergence,  // run until the moving-average criterion holds or the budget runs out
  restart,      // re-randomize weights until the restart target holds
};

std::optional<Protocol> parse_protocol(std::string_view text);
std::string_view to_string(Protocol p);

struct ConvergencePolicy {
  int window = 30;
  double target = 6000.0;
  int budget = 1000;  // episodes, convergence protocol only
};

struct RestartPolicy {
  int max_attempts = 10;
  int episodes = 200;  // per attempt
  int window = 30;
  double target = 9000.0;
};

// Everything needed to replay a trial bit-exactly given a seed.
struct ExperimentConfig {
  AgentKind agent = AgentKind::tlearn;
  std::vector<StateVariable> state_variables{StateVariable::angle};
  // Indexed by StateVariable.
  std::array<IntervalSpec, kStateVariableCount> intervals = default_intervals();
  int hotness = 3;
  EncodingMode encoding = EncodingMode::binarized;

  CtnnParams ctnn;
  bool ctnn_random_weights = false;
  RtnnParams rtnn;
  bool rtnn_random_weights = false;
  QParams q;

  int warmup_episodes = 30;
  int test_episodes = 50;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
  EpisodeLimits limits;
  double init_angle_deg = 2.0;
  CartPoleParams physics;
  bool naive_mirror = false;

  Protocol protocol = Protocol::fixed;
  ConvergencePolicy convergence;
  RestartPolicy restart;

  bool trace = false;
  int trace_episode = 0;  // 0 = last episode of the trial
  bool dump_weights = false;

  // Angle: 16 equal intervals over +/-12 deg. Others: the coarse boxes
  // (angular velocity +/-50 deg/s, displacement +/-0.8 m, cart velocity +/-5 m/s).
  static std::array<IntervalSpec, kStateVariableCount> default_intervals();

  const IntervalSpec& spec(StateVariable sv) const { return intervals[static_cast<std::size_t>(sv)]; }
  EncoderConfig encoder() const;
  std::vector<int> interval_counts() const;
  // Total episodes of a fixed-protocol trial.
  int episodes() const { return warmup_episodes + test_episodes; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace tlearn
