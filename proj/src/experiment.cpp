#include "tlearn/experiment.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace tlearn {

std::optional<AgentKind> parse_agent_kind(std::string_view text) {
  if (text == "tlearn") return AgentKind::tlearn;
  if (text == "qlearn_baseline") return AgentKind::qlearn_baseline;
  if (text == "naive") return AgentKind::naive;
  if (text == "fixed_optimal_1sv") return AgentKind::fixed_optimal_1sv;
  if (text == "fixed_optimal_2sv") return AgentKind::fixed_optimal_2sv;
  if (text == "fixed_optimal_3sv") return AgentKind::fixed_optimal_3sv;
  return std::nullopt;
}

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::tlearn: return "tlearn";
    case AgentKind::qlearn_baseline: return "qlearn_baseline";
    case AgentKind::naive: return "naive";
    case AgentKind::fixed_optimal_1sv: return "fixed_optimal_1sv";
    case AgentKind::fixed_optimal_2sv: return "fixed_optimal_2sv";
    case AgentKind::fixed_optimal_3sv: return "fixed_optimal_3sv";
  }
  return "?";
}

std::optional<StateVariable> parse_state_variable(std::string_view text) {
  if (text == "angle") return StateVariable::angle;
  if (text == "angular_velocity") return StateVariable::angular_velocity;
  if (text == "displacement") return StateVariable::displacement;
  if (text == "cart_velocity") return StateVariable::cart_velocity;
  return std::nullopt;
}

std::string_view to_string(StateVariable sv) {
  switch (sv) {
    case StateVariable::angle: return "angle";
    case StateVariable::angular_velocity: return "angular_velocity";
    case StateVariable::displacement: return "displacement";
    case StateVariable::cart_velocity: return "cart_velocity";
  }
  return "?";
}

double state_value(const CartPoleState& s, StateVariable sv) {
  switch (sv) {
    case StateVariable::angle: return s.angle_deg();
    case StateVariable::angular_velocity: return s.angular_velocity_deg();
    case StateVariable::displacement: return s.displacement;
    case StateVariable::cart_velocity: return s.velocity;
  }
  return 0.0;
}

std::optional<Protocol> parse_protocol(std::string_view text) {
  if (text == "fixed") return Protocol::fixed;
  if (text == "convergence") return Protocol::convergence;
  if (text == "restart") return Protocol::restart;
  return std::nullopt;
}

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::fixed: return "fixed";
    case Protocol::convergence: return "convergence";
    case Protocol::restart: return "restart";
  }
  return "?";
}

std::array<IntervalSpec, kStateVariableCount> ExperimentConfig::default_intervals() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {
      IntervalSpec::uniform(-12.0, 12.0, 16),
      IntervalSpec({-inf, -50.0, 50.0, inf}),
      IntervalSpec({-2.4, -0.8, 0.8, 2.4}),
      IntervalSpec({-inf, -5.0, 5.0, inf}),
  };
}

EncoderConfig ExperimentConfig::encoder() const {
  EncoderConfig e;
  for (StateVariable sv : state_variables) e.fields.push_back(spec(sv));
  e.hotness = hotness;
  e.mode = encoding;
  return e;
}

std::vector<int> ExperimentConfig::interval_counts() const {
  std::vector<int> counts;
  for (StateVariable sv : state_variables) counts.push_back(spec(sv).count());
  return counts;
}

void ExperimentConfig::validate() const {
  if (state_variables.empty()) throw std::invalid_argument("state_variables: at least one is required");
  for (std::size_t a = 0; a < state_variables.size(); ++a) {
    for (std::size_t b = a + 1; b < state_variables.size(); ++b) {
      if (state_variables[a] == state_variables[b]) {
        throw std::invalid_argument("state_variables: '" + std::string(to_string(state_variables[a])) +
                                    "' listed twice");
      }
    }
  }
  if (encoding == EncodingMode::temporized) {
    throw std::invalid_argument("encoder.mode: the cart-pole harness feeds binarized volleys");
  }
  encoder().validate();
  ctnn.validate();
  rtnn.validate();
  q.validate();
  physics.validate();
  if (warmup_episodes < 0) throw std::invalid_argument("warmup_episodes must be >= 0");
  if (test_episodes < 1) throw std::invalid_argument("test_episodes must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("seeds: at least one seed is required");
  if (limits.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (limits.reward_period < 1) throw std::invalid_argument("env.reward_period must be >= 1");
  if (!(init_angle_deg >= 0.0)) throw std::invalid_argument("init_angle_deg must be >= 0");
  if (convergence.window < 1 || convergence.budget < 0) {
    throw std::invalid_argument("convergence: window must be >= 1 and budget >= 0");
  }
  if (restart.max_attempts < 0 || restart.episodes < 1 || restart.window < 1) {
    throw std::invalid_argument("restart: attempts >= 0, episodes >= 1, window >= 1");
  }
  if (trace_episode < 0) throw std::invalid_argument("trace.episode must be >= 0");
}

}  // namespace tlearn
