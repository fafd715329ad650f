#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tlearn/cartpole.hpp"
#include "tlearn/rng.hpp"

using namespace tlearn;

namespace {

// From tests/oracles/cartpole_oracle.py.
constexpr double kRestAngular = -30.142332092139085;
constexpr double kRestLinear = 13.10186701604979;
constexpr double kEulerDivergenceBound = 1.55;  // oracle: 1.5472859909892671

struct Ref {
  double th, thd, x, xd;
};

// Separate transcription of the closed-form accelerations.
std::pair<double, double> ref_accel(double th, double thd, double f) {
  const double M = 0.711, m = 0.209, g = 9.8, l = 0.326;
  const double s = std::sin(th), c = std::cos(th);
  const double th_dd = ((M + m) * g * s - c * (f + m * l * thd * thd * s)) / ((4.0 / 3.0) * (M + m) * l - m * l * c * c);
  const double x_dd = (f + m * l * (thd * thd * s - th_dd * c)) / (M + m);
  return {th_dd, x_dd};
}

Ref ref_euler(Ref s, double f, double dt) {
  const auto [a, b] = ref_accel(s.th, s.thd, f);
  return {s.th + dt * s.thd, s.thd + dt * a, s.x + dt * s.xd, s.xd + dt * b};
}

CartPoleState negate(const CartPoleState& s) { return {-s.angle, -s.angular_velocity, -s.displacement, -s.velocity}; }

}  // namespace

TEST(CartPole, rest_accelerations) {
  const Accelerations a = dynamics({}, 10.0, CartPoleParams{});
  EXPECT_NEAR(a.angular, kRestAngular, 1e-12);
  EXPECT_NEAR(a.linear, kRestLinear, 1e-12);
  const Accelerations zero = dynamics({}, 0.0, CartPoleParams{});
  EXPECT_EQ(zero.angular, 0.0);
  EXPECT_EQ(zero.linear, 0.0);
}

TEST(CartPole, matches_reference_accelerations) {
  Rng rng(77);
  for (int k = 0; k < 1000; ++k) {
    CartPoleState s{rng.uniform(-0.5, 0.5), rng.uniform(-3, 3), rng.uniform(-2.4, 2.4), rng.uniform(-3, 3)};
    const double f = rng.below(2) ? 10.0 : -10.0;
    const Accelerations a = dynamics(s, f, CartPoleParams{});
    const auto [th_dd, x_dd] = ref_accel(s.angle, s.angular_velocity, f);
    ASSERT_NEAR(a.angular, th_dd, 1e-12);
    ASSERT_NEAR(a.linear, x_dd, 1e-12);
  }
}

TEST(CartPole, antisymmetric_in_state_and_force) {
  Rng rng(78);
  for (int k = 0; k < 1000; ++k) {
    CartPoleState s{rng.uniform(-0.5, 0.5), rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-3, 3)};
    const Accelerations a = dynamics(s, 10.0, CartPoleParams{});
    const Accelerations b = dynamics(negate(s), -10.0, CartPoleParams{});
    ASSERT_EQ(a.angular, -b.angular);
    ASSERT_EQ(a.linear, -b.linear);
  }
}

TEST(CartPole, mirror_symmetric_trajectories) {
  for (auto integrator : {Integrator::euler, Integrator::semi_implicit}) {
    CartPoleParams p;
    p.integrator = integrator;
    CartPoleState s{0.03, 0.0, 0.0, 0.0};
    CartPoleState m = negate(s);
    for (int k = 0; k < 200; ++k) {
      const Action a = k % 3 ? Action::push_right : Action::push_left;
      const Action b = a == Action::push_right ? Action::push_left : Action::push_right;
      s = step_env(s, a, p);
      m = step_env(m, b, p);
      ASSERT_EQ(m, negate(s));
    }
  }
}

TEST(CartPole, euler_step_from_rest) {
  const CartPoleParams p;
  const CartPoleState s = step_env(CartPoleState{}, Action::push_right, p);
  EXPECT_EQ(s.displacement, 0.0);
  EXPECT_EQ(s.angle, 0.0);
  EXPECT_NEAR(s.velocity, p.tau * kRestLinear, 1e-15);
  EXPECT_NEAR(s.angular_velocity, p.tau * kRestAngular, 1e-15);
}

TEST(CartPole, semi_implicit_moves_position_in_first_step) {
  CartPoleParams p;
  p.integrator = Integrator::semi_implicit;
  const CartPoleState s = step_env(CartPoleState{}, Action::push_right, p);
  EXPECT_NEAR(s.displacement, p.tau * p.tau * kRestLinear, 1e-15);
}

TEST(CartPole, degree_state_slows_angular_motion) {
  CartPoleParams p;
  p.angle_state = AngleState::degrees;
  const CartPoleState s = step_env(CartPoleState{}, Action::push_right, p);
  EXPECT_NEAR(s.angular_velocity, p.tau * kRestAngular * std::numbers::pi / 180.0, 1e-15);
  EXPECT_NEAR(s.velocity, p.tau * kRestLinear, 1e-15);
}

TEST(CartPole, euler_close_to_fine_reference) {
  const CartPoleParams p;
  CartPoleState coarse{std::numbers::pi / 180.0, 0.0, 0.0, 0.0};
  Ref fine{coarse.angle, 0.0, 0.0, 0.0};
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double f = k % 2 == 0 ? p.force : -p.force;
    coarse = step_env(coarse, f, p);
    for (int j = 0; j < 100; ++j) fine = ref_euler(fine, f, p.tau / 100);
    worst = std::max({worst, std::abs(coarse.angle - fine.th), std::abs(coarse.angular_velocity - fine.thd),
                      std::abs(coarse.displacement - fine.x), std::abs(coarse.velocity - fine.xd)});
  }
  EXPECT_LE(worst, kEulerDivergenceBound);
  EXPECT_GT(worst, 1.5);  // drifts as measured, not silently replaced
}

TEST(CartPole, failure_and_reward_rules) {
  const double deg = std::numbers::pi / 180.0;
  CartPoleState s;
  EXPECT_EQ(check_and_reward(s, 500).reward, Reward::reward);
  EXPECT_EQ(check_and_reward(s, 501).reward, Reward::none);
  EXPECT_THROW(check_and_reward(s, 0), std::invalid_argument);
  EXPECT_EQ(check_and_reward(s, 10000).status, Status::max_steps);
  EXPECT_EQ(check_and_reward(s, 10000).reward, Reward::reward);

  s.angle = 12.3 * deg;
  EXPECT_EQ(check_and_reward(s, 7).status, Status::pole_failure);
  EXPECT_EQ(check_and_reward(s, 7).reward, Reward::punishment);
  s.angle = -12.3 * deg;
  s.displacement = 3.0;
  EXPECT_EQ(check_and_reward(s, 7).status, Status::pole_failure);

  s.angle = 0.0;
  EXPECT_EQ(check_and_reward(s, 7).status, Status::track_failure);
  EXPECT_EQ(check_and_reward(s, 7).reward, Reward::none);
  EpisodeLimits limits;
  limits.track_failure_reward = Reward::punishment;
  EXPECT_EQ(check_and_reward(s, 7, limits).reward, Reward::punishment);
}

TEST(CartPole, init_episode_uses_source) {
  const CartPoleState s = init_episode([](double, double) { return 0.0; }, 2.0);
  EXPECT_EQ(s, CartPoleState{});
  const CartPoleState t = init_episode([](double lo, double) { return lo; }, 2.0);
  EXPECT_NEAR(t.angle_deg(), -2.0, 1e-12);
}
