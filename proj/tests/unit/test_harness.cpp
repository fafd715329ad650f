#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "tlearn/config.hpp"
#include "tlearn/harness.hpp"

using namespace tlearn;

namespace {

// Single-variable setup with the calibrated environment profile.
constexpr const char* kBase = R"(
state_variables = angle
encoder.angle.breakpoints = -12, -10.5, -9, -7.5, -6, -4.5, -3, -1.5, 0, 1.5, 3, 4.5, 6, 7.5, 9, 10.5, 12
encoder.hotness = 3
warmup_episodes = 5
test_episodes = 5
seeds = 1-3
physics.integrator = semi_implicit
physics.angle_state = degrees
env.track_failure_reward = -1
)";

ExperimentConfig make(const std::string& agent, const std::string& extra = "") {
  ConfigFile f = split_config(parse_config_text(std::string(kBase) + "agents = " + agent + "\n" + extra, "test"));
  return build_experiments(f).front();
}

std::string results_text(const std::vector<TrialSummary>& trials) {
  std::ostringstream out;
  write_results_csv(out, trials);
  return out.str();
}

}  // namespace

TEST(Convergence, constant_series) {
  const std::vector<int> top(40, 10000), mid(40, 5000);
  EXPECT_EQ(detect_convergence(top, 30, 6000), 30);
  EXPECT_FALSE(detect_convergence(mid, 30, 6000).has_value());
}

// 18 good episodes lift the 30-episode mean to 6034.
TEST(Convergence, late_jump) {
  std::vector<int> s(20, 100);
  s.resize(80, 10000);
  EXPECT_EQ(detect_convergence(s, 30, 6000), 38);
  EXPECT_EQ(detect_convergence(s, 30, 10000), 50);
}

TEST(Convergence, short_series) {
  const std::vector<int> s(29, 10000);
  EXPECT_FALSE(detect_convergence(s, 30, 6000).has_value());
}

TEST(FixedTables, documented_entries) {
  EXPECT_EQ(fixed_agent_lookup(AgentKind::fixed_optimal_1sv, std::vector<int>{2}), Action::push_left);
  EXPECT_EQ(fixed_agent_lookup(AgentKind::fixed_optimal_2sv, std::vector<int>{1, 1}), Action::push_right);
  EXPECT_EQ(fixed_agent_lookup(AgentKind::fixed_optimal_3sv, std::vector<int>{3, 1, 2}), Action::push_right);
  EXPECT_FALSE(fixed_agent_lookup(AgentKind::fixed_optimal_3sv, std::vector<int>{1, 3, 1}).has_value());
  EXPECT_FALSE(fixed_agent_lookup(AgentKind::fixed_optimal_3sv, std::vector<int>{6, 1, 2}).has_value());
  EXPECT_FALSE(fixed_agent_lookup(AgentKind::fixed_optimal_1sv, std::vector<int>{1, 1}).has_value());
}

// Reflecting every variable flips the pushed direction.
TEST(FixedTables, mirror_symmetric) {
  for (AgentKind kind : {AgentKind::fixed_optimal_1sv, AgentKind::fixed_optimal_2sv, AgentKind::fixed_optimal_3sv}) {
    const std::size_t n = fixed_table_variables(kind).size();
    const std::vector<int> counts = n == 1 ? std::vector<int>{6} : n == 2 ? std::vector<int>{6, 3} : std::vector<int>{6, 3, 3};
    std::vector<int> t(n, 1);
    int listed = 0;
    while (true) {
      std::vector<int> m(n);
      for (std::size_t k = 0; k < n; ++k) m[k] = counts[k] + 1 - t[k];
      const auto a = fixed_agent_lookup(kind, t), b = fixed_agent_lookup(kind, m);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) {
        ++listed;
        EXPECT_NE(*a, *b);
      }
      std::size_t k = n;
      while (k > 0 && t[k - 1] == counts[k - 1]) t[--k] = 1;
      if (k == 0) break;
      ++t[k - 1];
    }
    EXPECT_EQ(listed, n == 1 ? 6 : n == 2 ? 18 : 48);
  }
}

TEST(Harness, one_step_cutoff) {
  for (const char* agent : {"naive", "tlearn", "qlearn_baseline"}) {
    const ExperimentConfig c = make(agent, "max_steps = 1\n");
    const TrialSummary t = run_trial(c, 1);
    ASSERT_EQ(t.episodes.size(), 10u);
    for (const auto& e : t.episodes) {
      EXPECT_EQ(e.steps, 1) << agent;
      EXPECT_EQ(e.cause, Status::max_steps);
    }
  }
}

TEST(Harness, naive_agent_keeps_pole_up) {
  const ExperimentConfig c = make("naive");
  const TrialSummary t = run_trial(c, 1);
  for (const auto& e : t.episodes) EXPECT_NE(e.cause, Status::pole_failure);
}

TEST(Harness, naive_agent_loses_pole_with_default_physics) {
  ExperimentConfig c = make("naive");
  c.physics = CartPoleParams{};
  const TrialSummary t = run_trial(c, 1);
  for (const auto& e : t.episodes) {
    EXPECT_EQ(e.cause, Status::pole_failure);
    EXPECT_LT(e.steps, 100);
  }
}

TEST(Harness, restart_without_attempts_runs_nothing) {
  const ExperimentConfig c = make("tlearn", "protocol = restart\nrestart.max_attempts = 0\n");
  const TrialSummary t = run_trial(c, 4);
  EXPECT_EQ(t.attempts, 0);
  EXPECT_TRUE(t.episodes.empty());
  EXPECT_FALSE(t.target_met);
}

TEST(Harness, restart_stops_when_target_met) {
  const ExperimentConfig c = make("tlearn", "protocol = restart\nrestart.max_attempts = 3\nrestart.episodes = 4\n"
                                            "restart.window = 2\nrestart.target = 1\n");
  const TrialSummary t = run_trial(c, 4);
  EXPECT_EQ(t.attempts, 1);
  EXPECT_TRUE(t.target_met);
  EXPECT_EQ(t.convergence_episode, 2);
}

TEST(Harness, qlearn_explores_like_tlearn) {
  const ExperimentConfig t = make("tlearn");
  const ExperimentConfig q = make("qlearn_baseline");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const TrialSummary a = run_trial(t, seed), b = run_trial(q, seed);
    for (int e = 0; e < t.warmup_episodes; ++e) {
      EXPECT_EQ(a.episodes[e], b.episodes[e]) << "seed " << seed << " episode " << e + 1;
    }
  }
}

TEST(Harness, fixed_agent_without_warmup_averages_episodes) {
  const ExperimentConfig c = make("naive", "warmup_episodes = 0\n");
  const TrialSummary t = run_trial(c, 2);
  double sum = 0;
  for (const auto& e : t.episodes) {
    EXPECT_EQ(e.phase, Phase::test);
    sum += e.steps;
  }
  EXPECT_DOUBLE_EQ(t.mean_test_steps, sum / t.episodes.size());
}

TEST(Harness, deterministic_and_thread_independent) {
  const ExperimentConfig c = make("tlearn");
  const auto a = run_experiment(c, 1);
  const auto b = run_experiment(c, 1);
  const auto d = run_experiment(c, 3);
  EXPECT_EQ(results_text(a), results_text(b));
  EXPECT_EQ(results_text(a), results_text(d));
}

TEST(Harness, seeds_change_outcomes) {
  const ExperimentConfig c = make("tlearn");
  EXPECT_NE(run_trial(c, 1).episodes, run_trial(c, 2).episodes);
}

TEST(Harness, trace_covers_selected_episode) {
  const ExperimentConfig c = make("tlearn", "trace = true\ntrace.episode = 3\n");
  const TrialSummary t = run_trial(c, 1);
  ASSERT_EQ(static_cast<int>(t.trace.size()), t.episodes[2].steps);
  for (std::size_t i = 0; i < t.trace.size(); ++i) {
    EXPECT_EQ(t.trace[i].step, static_cast<int>(i) + 1);
    EXPECT_TRUE(t.trace[i].action == 0 || t.trace[i].action == 1);
  }
  std::ostringstream out;
  write_trace_csv(out, t.trace);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "step,angle_deg,ang_vel,displacement_m,cart_vel,cid_index,action,reward");
}

TEST(Harness, csv_headers_and_single_seed_ranking) {
  const ExperimentConfig c = make("naive", "seeds = 5\n");
  const auto trials = run_experiment(c);
  std::ostringstream results, sorted;
  write_results_csv(results, trials);
  write_sorted_csv(sorted, trials);
  EXPECT_EQ(results.str().substr(0, results.str().find('\n')), "seed,episode,phase,steps,cause");
  std::istringstream in(sorted.str());
  std::string header, row, rest;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "rank,mean_test_steps,seed");
  EXPECT_EQ(row.substr(0, 2), "1,");
  EXPECT_EQ(row.substr(row.rfind(',') + 1), "5");
  EXPECT_FALSE(std::getline(in, rest));
}

TEST(Harness, sorted_ranks_worst_first) {
  std::vector<TrialSummary> trials(3);
  trials[0].seed = 1;
  trials[0].mean_test_steps = 50;
  trials[1].seed = 2;
  trials[1].mean_test_steps = 10;
  trials[2].seed = 3;
  trials[2].mean_test_steps = 30;
  std::ostringstream out;
  write_sorted_csv(out, trials);
  EXPECT_EQ(out.str(), "rank,mean_test_steps,seed\n1,10.000000,2\n2,30.000000,3\n3,50.000000,1\n");
  EXPECT_DOUBLE_EQ(mean_of_means(trials), 30.0);
}

TEST(Harness, observation_matches_encoder) {
  const ExperimentConfig c = make("tlearn");
  CartPoleState s;
  s.angle = 3.2 * std::numbers::pi / 180.0;
  const Observation o = observe(s, c);
  ASSERT_EQ(o.intervals, std::vector<int>{11});
  EXPECT_EQ(o.volley.width(), 18u);
  EXPECT_EQ(o.volley.first_spike(), 10u);
  EXPECT_EQ(o.volley.spike_count(), 3u);
}
