#include "tlearn/cartpole.hpp"

#include <cmath>
#include <stdexcept>

namespace tlearn {

void CartPoleParams::validate() const {
  if (!(cart_mass > 0 && pole_mass > 0 && gravity > 0 && force > 0 && half_length > 0 && tau > 0)) {
    throw std::invalid_argument("cart-pole parameters must all be positive");
  }
}

Accelerations dynamics(const CartPoleState& s, double force, const CartPoleParams& p) {
  const double total = p.cart_mass + p.pole_mass;
  const double ml = p.pole_mass * p.half_length;
  const double sin_a = std::sin(s.angle);
  const double cos_a = std::cos(s.angle);
  const double w2 = s.angular_velocity * s.angular_velocity;

  Accelerations acc;
  acc.angular = (total * p.gravity * sin_a - cos_a * (force + ml * w2 * sin_a)) /
                ((4.0 / 3.0) * total * p.half_length - ml * cos_a * cos_a);
  acc.linear = (force + ml * (w2 * sin_a - acc.angular * cos_a)) / total;
  return acc;
}

CartPoleState step_env(const CartPoleState& s, double force, const CartPoleParams& p) {
  const Accelerations acc = dynamics(s, force, p);
  CartPoleState next;
  const double angular = p.angle_state == AngleState::degrees ? acc.angular * std::numbers::pi / 180.0 : acc.angular;
  next.angular_velocity = s.angular_velocity + p.tau * angular;
  next.velocity = s.velocity + p.tau * acc.linear;
  if (p.integrator == Integrator::euler) {
    next.angle = s.angle + p.tau * s.angular_velocity;
    next.displacement = s.displacement + p.tau * s.velocity;
  } else {
    next.angle = s.angle + p.tau * next.angular_velocity;
    next.displacement = s.displacement + p.tau * next.velocity;
  }
  return next;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::pole_failure: return "pole_failure";
    case Status::track_failure: return "track_failure";
    case Status::max_steps: return "max_steps";
  }
  return "?";
}

StepOutcome check_and_reward(const CartPoleState& s, int step_count, const EpisodeLimits& limits) {
  if (step_count < 1) throw std::invalid_argument("step_count starts at 1");
  StepOutcome out{s, Status::ok, Reward::none};
  if (std::abs(s.angle_deg()) > limits.angle_limit_deg) {
    out.status = Status::pole_failure;
    out.reward = Reward::punishment;
    return out;
  }
  if (std::abs(s.displacement) > limits.track_limit) {
    out.status = Status::track_failure;
    out.reward = limits.track_failure_reward;
    return out;
  }
  if (step_count % limits.reward_period == 0) out.reward = Reward::reward;
  if (step_count >= limits.max_steps) out.status = Status::max_steps;
  return out;
}

}  // namespace tlearn
