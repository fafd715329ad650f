// Hand-set R-TNN weight tables for the 1, 2 and 3 state-variable systems.
// Each listed row carries weight 8 on one action and 0 on the other.

#include <algorithm>
#include <array>

#include "tlearn/harness.hpp"

namespace tlearn {
namespace {

constexpr int L = 0;  // -F
constexpr int R = 1;  // +F

struct Row1 { int angle, action; };
struct Row2 { int angle, velocity, action; };
struct Row3 { int angle, displacement, velocity, action; };

constexpr std::array<Row1, 6> kOneVariable{{{1, L}, {2, L}, {3, L}, {4, R}, {5, R}, {6, R}}};

// (angle, cart velocity)
constexpr std::array<Row2, 18> kTwoVariables{{
    {1, 1, R}, {1, 2, L}, {1, 3, L},
    {2, 1, R}, {2, 2, L}, {2, 3, L},
    {3, 1, L}, {3, 2, R}, {3, 3, L},
    {4, 1, R}, {4, 2, L}, {4, 3, R},
    {5, 1, R}, {5, 2, R}, {5, 3, L},
    {6, 1, R}, {6, 2, R}, {6, 3, L},
}};

// (angle, displacement, cart velocity). Angle 1 with displacement 3 and
// angle 6 with displacement 1 are not listed.
constexpr std::array<Row3, 48> kThreeVariables{{
    {1, 1, 1, L}, {1, 1, 2, R}, {1, 1, 3, L}, {1, 2, 1, L}, {1, 2, 2, L}, {1, 2, 3, L},
    {2, 1, 1, L}, {2, 1, 2, R}, {2, 1, 3, L}, {2, 2, 1, L}, {2, 2, 2, L}, {2, 2, 3, L},
    {2, 3, 1, R}, {2, 3, 2, L}, {2, 3, 3, L},
    {3, 1, 1, R}, {3, 1, 2, R}, {3, 1, 3, L}, {3, 2, 1, L}, {3, 2, 2, R}, {3, 2, 3, L},
    {3, 3, 1, L}, {3, 3, 2, R}, {3, 3, 3, L},
    {4, 1, 1, R}, {4, 1, 2, L}, {4, 1, 3, R}, {4, 2, 1, R}, {4, 2, 2, L}, {4, 2, 3, R},
    {4, 3, 1, R}, {4, 3, 2, L}, {4, 3, 3, L},
    {5, 1, 1, R}, {5, 1, 2, R}, {5, 1, 3, L}, {5, 2, 1, R}, {5, 2, 2, R}, {5, 2, 3, R},
    {5, 3, 1, R}, {5, 3, 2, L}, {5, 3, 3, R},
    {6, 2, 1, R}, {6, 2, 2, R}, {6, 2, 3, R}, {6, 3, 1, R}, {6, 3, 2, L}, {6, 3, 3, R},
}};

constexpr std::array<StateVariable, 1> kVars1{StateVariable::angle};
constexpr std::array<StateVariable, 2> kVars2{StateVariable::angle, StateVariable::cart_velocity};
constexpr std::array<StateVariable, 3> kVars3{StateVariable::angle, StateVariable::displacement,
                                              StateVariable::cart_velocity};

}  // namespace

std::span<const StateVariable> fixed_table_variables(AgentKind kind) {
  switch (kind) {
    case AgentKind::fixed_optimal_1sv: return kVars1;
    case AgentKind::fixed_optimal_2sv: return kVars2;
    case AgentKind::fixed_optimal_3sv: return kVars3;
    default: return {};
  }
}

std::optional<Action> fixed_agent_lookup(AgentKind kind, std::span<const int> tuple) {
  if (tuple.size() != fixed_table_variables(kind).size()) return std::nullopt;
  auto as_action = [](int a) { return a == R ? Action::push_right : Action::push_left; };
  switch (kind) {
    case AgentKind::fixed_optimal_1sv:
      for (const auto& r : kOneVariable) {
        if (r.angle == tuple[0]) return as_action(r.action);
      }
      break;
    case AgentKind::fixed_optimal_2sv:
      for (const auto& r : kTwoVariables) {
        if (r.angle == tuple[0] && r.velocity == tuple[1]) return as_action(r.action);
      }
      break;
    case AgentKind::fixed_optimal_3sv:
      for (const auto& r : kThreeVariables) {
        if (r.angle == tuple[0] && r.displacement == tuple[1] && r.velocity == tuple[2]) {
          return as_action(r.action);
        }
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace tlearn
