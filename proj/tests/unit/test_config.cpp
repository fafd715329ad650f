#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "tlearn/config.hpp"

using namespace tlearn;

namespace {

std::vector<ExperimentConfig> build(const std::string& text) {
  return build_experiments(split_config(parse_config_text(text, "t.cfg")));
}

std::string error_of(const std::string& text) {
  try {
    build(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, defaults_when_empty) {
  const auto cs = build("# nothing\n\n");
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].agent, AgentKind::tlearn);
  EXPECT_EQ(cs[0].warmup_episodes, 30);
}

TEST(Config, parses_values) {
  const auto cs = build(
      "agents = naive, tlearn\n"
      "state_variables = angle, cart_velocity\n"
      "ctnn.mu_search = 1/128\n"
      "ctnn.w_init = random\n"
      "seeds = 1-3, 7\n"
      "encoder.cart_velocity.breakpoints = -inf, -0.5, 0.5, inf\n"
      "physics.integrator = semi_implicit\n"
      "env.track_failure_reward = -1\n");
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].agent, AgentKind::naive);
  EXPECT_EQ(cs[1].agent, AgentKind::tlearn);
  const ExperimentConfig& c = cs[1];
  EXPECT_EQ(c.state_variables.size(), 2u);
  EXPECT_EQ(c.ctnn.mu_search.raw(), 1);
  EXPECT_TRUE(c.ctnn_random_weights);
  EXPECT_FALSE(c.rtnn_random_weights);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2, 3, 7}));
  EXPECT_EQ(c.spec(StateVariable::cart_velocity).count(), 3);
  EXPECT_EQ(c.physics.integrator, Integrator::semi_implicit);
  EXPECT_EQ(c.limits.track_failure_reward, Reward::punishment);
}

TEST(Config, later_entries_win) {
  const auto cs = build("max_steps = 10\nmax_steps = 20\n");
  EXPECT_EQ(cs[0].limits.max_steps, 20);
}

TEST(Config, errors_name_key_and_line) {
  const std::string e = error_of("warmup_episodes = 3\nbogus.key = 1\n");
  EXPECT_NE(e.find("t.cfg:2"), std::string::npos) << e;
  EXPECT_NE(e.find("bogus.key"), std::string::npos) << e;

  const std::string bad = error_of("ctnn.mu_capture = 1/3\n");
  EXPECT_NE(bad.find("ctnn.mu_capture"), std::string::npos) << bad;
  EXPECT_NE(bad.find("1/3"), std::string::npos) << bad;

  EXPECT_NE(error_of("agents = robot\n").find("robot"), std::string::npos);
  EXPECT_NE(error_of("max_steps = many\n").find("max_steps"), std::string::npos);
  EXPECT_NE(error_of("just words\n").find("t.cfg:1"), std::string::npos);
  EXPECT_NE(error_of("encoder.hotness = 2\n"), "");
  EXPECT_NE(error_of("rtnn.omega_rho = 5\n"), "");
}

TEST(Config, override_syntax) {
  const ConfigEntry e = parse_override(" seeds = 4 ");
  EXPECT_EQ(e.key, "seeds");
  EXPECT_EQ(e.value, "4");
  EXPECT_EQ(e.source, "--set");
  EXPECT_THROW(parse_override("seeds"), ConfigError);
  EXPECT_THROW(parse_override("=4"), ConfigError);
}

TEST(Config, sweep_keys) {
  const ConfigFile f = split_config(parse_config_text("sweep.key = ctnn.zcnt\nsweep.values = 16, 8, 6\n", "t"));
  EXPECT_EQ(f.sweep_key, "ctnn.zcnt");
  EXPECT_EQ(f.sweep_values, (std::vector<std::string>{"16", "8", "6"}));
  EXPECT_THROW(split_config(parse_config_text("sweep.key = nope\n", "t")), ConfigError);
}

TEST(Config, dump_round_trips) {
  const auto cs = build(
      "agents = qlearn_baseline\nstate_variables = angle, displacement, cart_velocity\n"
      "encoder.hotness = 1\nctnn.mu_search = 1/128\nrtnn.w_init = random\nq.alpha = 0.3\n"
      "seeds = 1-8, 10, 12-13\ninit_angle_deg = 1.5\nphysics.angle_state = degrees\n"
      "protocol = convergence\nconvergence.target = 5500.25\n");
  const std::string text = to_config_text(cs[0]);
  const auto again = build(text);
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(to_config_text(again[0]), text);
  EXPECT_EQ(again[0].agent, AgentKind::qlearn_baseline);
  EXPECT_NE(text.find("seeds = 1-8, 10, 12-13"), std::string::npos) << text;
  for (const std::string& key : config_keys()) EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
}

TEST(Config, seed_formatting) {
  EXPECT_EQ(format_seeds({1, 2, 3, 4}), "1-4");
  EXPECT_EQ(format_seeds({5}), "5");
  EXPECT_EQ(format_seeds({1, 3, 4}), "1, 3-4");
}

TEST(Config, presets_load) {
  for (const char* name : {"fig17", "fig18", "fig19", "fig21", "fig22", "fig23"}) {
    const std::string path = std::string(TLEARN_CONFIG_DIR) + "/" + name + ".cfg";
    const ConfigFile f = split_config(read_config_file(path));
    EXPECT_FALSE(build_experiments(f).empty()) << name;
  }
}
