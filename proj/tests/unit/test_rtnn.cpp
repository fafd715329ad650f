#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "tlearn/rtnn.hpp"
#include "tlearn/weights.hpp"

using namespace tlearn;

namespace {

RtnnParams table3() { return RtnnParams{}; }

RtnnParams table5() {
  RtnnParams p;
  p.rho_plus = p.rho_minus = Fixed::from_int(1);
  p.omega_rho = 1;
  p.pi_plus = p.pi_minus = Fixed::from_int(1);
  p.omega_pi = 32;
  return p;
}

SpikeVolley row(std::size_t width, std::size_t i) { return SpikeVolley::one_hot(width, i); }

// Independent reading of the decay: peak * (omega - c) / omega, zero past the window.
double expected_magnitude(Fixed peak, int c, int omega) {
  if (c >= omega) return 0.0;
  return peak.to_double() * (omega - c) / omega;
}

}  // namespace

TEST(Rtnn, decay_samples) {
  const Fixed p = Fixed::from_raw(192);
  EXPECT_EQ(decayed_update(p, 0, 2), p);
  EXPECT_EQ(decayed_update(p, 1, 2), Fixed::from_raw(96));
  EXPECT_EQ(decayed_update(p, 8, 16), Fixed::from_raw(96));
  EXPECT_EQ(decayed_update(p, 16, 16), Fixed{});
  EXPECT_EQ(decayed_update(p, 40, 16), Fixed{});
}

TEST(Rtnn, validate_rejects_inexact_decay) {
  RtnnParams p;
  p.omega_rho = 5;  // 192 / 5 is not whole
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_NO_THROW(table3().validate());
  EXPECT_NO_THROW(table5().validate());
}

TEST(Rtnn, every_rule_for_every_counter) {
  for (const RtnnParams& params : {table3(), table5()}) {
    for (Reward r : {Reward::reward, Reward::punishment}) {
      const bool reward = r == Reward::reward;
      const int omega = reward ? params.omega_rho : params.omega_pi;
      double previous_on = 1e9, previous_off = 1e9;
      for (int c = 0; c <= omega; ++c) {
        RtnnParams p = params;
        p.w_init = Fixed::from_int(4);
        RtnnColumn col(1, 2, p, Rng(1));
        col.record(row(1, 0), 0);
        for (int k = 0; k < c; ++k) col.tick();
        ASSERT_EQ(col.counter(0, 0), c);
        ASSERT_TRUE(col.eligible(0, 0));
        ASSERT_FALSE(col.eligible(0, 1));
        col.apply_reward(r);

        const double on = col.weights().at(0, 0).to_double() - 4.0;
        const double off = col.weights().at(0, 1).to_double() - 4.0;
        const double on_mag = expected_magnitude(reward ? p.rho_plus : p.pi_minus, c, omega);
        const double off_mag = expected_magnitude(reward ? p.rho_minus : p.pi_plus, c, omega);
        EXPECT_EQ(on, reward ? on_mag : -on_mag) << "c=" << c;
        EXPECT_EQ(off, reward ? -off_mag : off_mag) << "c=" << c;
        if (c == omega) {
          EXPECT_EQ(on, 0.0);
          EXPECT_EQ(off, 0.0);
        }
        // Linear: successive magnitudes drop by exactly peak / omega.
        if (c > 0) {
          EXPECT_DOUBLE_EQ(previous_on - std::abs(on), (reward ? p.rho_plus : p.pi_minus).to_double() / omega);
          EXPECT_DOUBLE_EQ(previous_off - std::abs(off), (reward ? p.rho_minus : p.pi_plus).to_double() / omega);
        }
        previous_on = std::abs(on);
        previous_off = std::abs(off);
      }
    }
  }
}

TEST(Rtnn, no_reward_is_noop) {
  RtnnColumn col(2, 2, table3(), Rng(1));
  col.record(row(2, 0), 1);
  const WeightMatrix before = col.weights();
  col.apply_reward(Reward::none);
  EXPECT_EQ(col.weights(), before);
}

TEST(Rtnn, fresh_column_is_outside_every_window) {
  RtnnColumn col(3, 2, table3(), Rng(1));
  const WeightMatrix before = col.weights();
  col.apply_reward(Reward::reward);
  col.apply_reward(Reward::punishment);
  EXPECT_EQ(col.weights(), before);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(col.counter(i, 0), 16);
}

TEST(Rtnn, infer_picks_strongest_above_threshold) {
  RtnnColumn col(2, 2, table3(), Rng(1));
  col.weights().set(0, 0, Fixed::from_int(3));
  col.weights().set(0, 1, Fixed{});
  EXPECT_EQ(col.infer(row(2, 0)), 0u);
  col.weights().set(0, 1, Fixed::from_raw(3 * 128 + 1));  // ceil 4
  EXPECT_EQ(col.infer(row(2, 0)), 1u);
}

TEST(Rtnn, ties_repeat_consistently) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RtnnColumn col(1, 2, table3(), Rng(seed));
    col.weights().set(0, 0, Fixed::from_int(2));
    col.weights().set(0, 1, Fixed::from_int(2));
    const std::size_t first = col.infer(row(1, 0));
    EXPECT_EQ(col.infer(row(1, 0)), first);
    col.weights().set(0, 0, Fixed::from_int(1));
    col.weights().set(0, 1, Fixed::from_int(1));
    const std::size_t below = col.infer(row(1, 0));
    EXPECT_EQ(col.infer(row(1, 0)), below);
    EXPECT_EQ(col.infer(row(1, 0)), below);
  }
}

TEST(Rtnn, empty_cid_still_chooses) {
  RtnnColumn col(2, 2, table3(), Rng(5));
  const std::size_t a = col.infer(SpikeVolley(2));
  EXPECT_LT(a, 2u);
  EXPECT_EQ(col.infer(SpikeVolley(2)), a);
  col.record(SpikeVolley(2), a);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_FALSE(col.eligible(i, a));
}

TEST(Rtnn, rejects_multi_hot) {
  RtnnColumn col(2, 2, table3(), Rng(5));
  SpikeVolley v(2);
  v[0] = v[1] = SpikeTime(0);
  EXPECT_THROW(col.infer(v), std::logic_error);
  EXPECT_THROW(col.record(row(2, 0), 2), std::out_of_range);
}

TEST(Rtnn, record_keeps_latest_action) {
  RtnnColumn col(2, 2, table3(), Rng(5));
  col.record(row(2, 1), 0);
  col.tick();
  col.record(row(2, 1), 1);
  EXPECT_FALSE(col.eligible(1, 0));
  EXPECT_TRUE(col.eligible(1, 1));
  EXPECT_EQ(col.counter(1, 0), 0);
}

TEST(Rtnn, counter_state_machine_property) {
  Rng rng(31);
  for (const RtnnParams& p : {table3(), table5()}) {
    RtnnColumn col(4, 2, p, Rng(2));
    const int limit = p.counter_limit();
    for (int step = 0; step < 5000; ++step) {
      const std::size_t i = rng.below(4), a = rng.below(2);
      col.record(row(4, i), a);
      ASSERT_EQ(col.counter(i, 0), 0);
      ASSERT_EQ(col.counter(i, 1), 0);
      ASSERT_NE(col.eligible(i, 0), col.eligible(i, 1));
      col.apply_reward(static_cast<Reward>(static_cast<int>(rng.below(3)) - 1));
      col.tick();
      for (std::size_t r = 0; r < 4; ++r) {
        int ones = 0;
        for (std::size_t j = 0; j < 2; ++j) {
          ASSERT_GE(col.counter(r, j), 0);
          ASSERT_LE(col.counter(r, j), limit);
          ASSERT_GE(col.weights().at(r, j).raw(), 0);
          ASSERT_LE(col.weights().at(r, j).raw(), p.w_max * 128);
          ones += col.eligible(r, j);
        }
        ASSERT_LE(ones, 1);
        // Same row, same counter: record resets the pair together.
        ASSERT_EQ(col.counter(r, 0), col.counter(r, 1));
      }
    }
    col.reset_traces();
    for (std::size_t r = 0; r < 4; ++r) {
      EXPECT_EQ(col.counter(r, 0), limit);
      EXPECT_FALSE(col.eligible(r, 0) || col.eligible(r, 1));
    }
  }
}

TEST(Weights, text_round_trip) {
  WeightMatrix w(3, 4, 8, Fixed::from_int(5));
  Rng rng(9);
  w.randomize(rng);
  std::stringstream ss;
  write_weights(ss, w);
  EXPECT_EQ(read_weights(ss), w);
}

TEST(Weights, randomize_stays_in_range) {
  WeightMatrix w(16, 16, 8, Fixed{});
  Rng rng(1);
  w.randomize(rng);
  bool varied = false;
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      EXPECT_GE(w.at(r, c).raw(), 0);
      EXPECT_LE(w.at(r, c).raw(), 8 * 128);
      varied |= w.at(r, c) != w.at(0, 0);
    }
  }
  EXPECT_TRUE(varied);
}

TEST(Weights, adjust_saturates) {
  WeightMatrix w(1, 1, 8, Fixed::from_int(7));
  w.adjust(0, 0, Fixed::from_int(5));
  EXPECT_EQ(w.at(0, 0), Fixed::from_int(8));
  w.adjust(0, 0, Fixed::from_int(-20));
  EXPECT_EQ(w.at(0, 0), Fixed{});
}
