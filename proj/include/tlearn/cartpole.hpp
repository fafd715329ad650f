#pragma once

#include <concepts>
#include <numbers>
#include <string_view>

#include "tlearn/reward.hpp"

namespace tlearn {

enum class Integrator {
  euler,          // positions advance with the old velocities
  semi_implicit,  // velocities first, positions with the new velocities
};

// How the angular state is carried between steps.
enum class AngleState {
  radians,  // consistent SI units throughout
  degrees,  // angle and angular velocity held in degrees while the
            // acceleration formula yields rad/s^2, which slows the pole by 180/pi
};

struct CartPoleParams {
  double cart_mass = 0.711;  // M, kg
  double pole_mass = 0.209;  // m, kg
  double gravity = 9.8;      // m/s^2
  double force = 10.0;       // N
  double half_length = 0.326;  // l, m
  double tau = 0.02;         // s per step
  Integrator integrator = Integrator::euler;
  AngleState angle_state = AngleState::radians;

  void validate() const;
};

// Angle in radians, positive = leaning right. Positive displacement and
// velocity point right.
struct CartPoleState {
  double angle = 0.0;
  double angular_velocity = 0.0;
  double displacement = 0.0;
  double velocity = 0.0;

  double angle_deg() const { return angle * 180.0 / std::numbers::pi; }
  double angular_velocity_deg() const { return angular_velocity * 180.0 / std::numbers::pi; }

  bool operator==(const CartPoleState&) const = default;
};

// Index 0 pushes left (-F), index 1 pushes right (+F).
enum class Action : int { push_left = 0, push_right = 1 };

inline double applied_force(Action a, const CartPoleParams& p) {
  return a == Action::push_right ? p.force : -p.force;
}

struct Accelerations {
  double angular = 0.0;  // rad/s^2
  double linear = 0.0;   // m/s^2
};

Accelerations dynamics(const CartPoleState& s, double force, const CartPoleParams& p);

CartPoleState step_env(const CartPoleState& s, double force, const CartPoleParams& p);
inline CartPoleState step_env(const CartPoleState& s, Action a, const CartPoleParams& p) {
  return step_env(s, applied_force(a, p), p);
}

enum class Status { ok, pole_failure, track_failure, max_steps };

std::string_view to_string(Status s);

struct EpisodeLimits {
  double angle_limit_deg = 12.0;
  double track_limit = 2.4;
  int max_steps = 10000;
  int reward_period = 500;
  Reward track_failure_reward = Reward::none;
};

struct StepOutcome {
  CartPoleState state;
  Status status = Status::ok;
  Reward reward = Reward::none;
};

// Pole failure (R = -1) takes precedence over track failure (R =
// track_failure_reward, 0 by default). A
// surviving step earns R = +1 on every multiple of reward_period, including
// the final max_steps step.
StepOutcome check_and_reward(const CartPoleState& s, int step_count, const EpisodeLimits& limits = {});

// Source of uniform reals in [lo, hi).
template <class F>
concept UniformSource = requires(F f, double lo, double hi) {
  { f(lo, hi) } -> std::convertible_to<double>;
};

// Upright cart at the origin, at rest, pole angle uniform in +/- range.
template <UniformSource F>
CartPoleState init_episode(F&& uniform, double angle_range_deg) {
  CartPoleState s;
  s.angle = uniform(-angle_range_deg, angle_range_deg) * std::numbers::pi / 180.0;
  return s;
}

}  // namespace tlearn
