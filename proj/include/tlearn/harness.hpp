#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlearn/experiment.hpp"

namespace tlearn {

enum class Phase { warmup, test };
std::string_view to_string(Phase p);

// What an agent sees each step.
struct Observation {
  CartPoleState state;
  std::vector<int> intervals;  // per configured state variable, 1-based
  SpikeVolley volley;          // concatenated m-hot encoding
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual Action act(const Observation& obs) = 0;
  // Called after the environment advanced, with the new observation and the step's reward.
  virtual void learn(const Observation& next, Reward r) = 0;
  virtual void begin_episode() {}
  virtual void set_phase(Phase) {}
  // Winning C-TNN neuron of the last act(), -1 if none.
  virtual int last_cid() const { return -1; }
  virtual void write_weights(std::ostream&) const {}
};

// C-TNN clusters the encoded state, R-TNN maps the CId to an action.
class TLearnAgent final : public Agent {
 public:
  TLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt = 0);

  Action act(const Observation& obs) override;
  void learn(const Observation& next, Reward r) override;
  void begin_episode() override;
  int last_cid() const override { return last_cid_; }
  void write_weights(std::ostream& out) const override;

  const CtnnColumn& ctnn() const { return ctnn_; }
  const RtnnColumn& rtnn() const { return rtnn_; }

 private:
  TLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt, Rng weights);

  CtnnColumn ctnn_;
  RtnnColumn rtnn_;
  int last_cid_ = -1;
};

// Shadow-learns a Q-table while a T-learning agent explores (warm-up), then
// acts greedily on the table (test). The table keeps learning throughout.
class QLearnAgent final : public Agent {
 public:
  QLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt = 0);

  Action act(const Observation& obs) override;
  void learn(const Observation& next, Reward r) override;
  void begin_episode() override;
  void set_phase(Phase p) override { phase_ = p; }
  int last_cid() const override;
  void write_weights(std::ostream& out) const override;

  const QTable& table() const { return table_; }

 private:
  TLearnAgent explorer_;
  QTable table_;
  QParams params_;
  std::vector<int> counts_;
  Phase phase_ = Phase::warmup;
  std::size_t last_state_ = 0;
  std::size_t last_action_ = 0;
};

// Pushes toward the side the pole leans (or away, when mirrored).
class NaiveAgent final : public Agent {
 public:
  explicit NaiveAgent(bool mirror = false) : mirror_(mirror) {}
  Action act(const Observation& obs) override;
  void learn(const Observation&, Reward) override {}

 private:
  bool mirror_;
};

// R-TNN with hand-set, frozen weights indexed by interval tuple.
class FixedTableAgent final : public Agent {
 public:
  FixedTableAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt = 0);
  Action act(const Observation& obs) override;
  void learn(const Observation&, Reward) override {}
  void write_weights(std::ostream& out) const override;

 private:
  std::vector<std::size_t> positions_;  // where each table variable sits in Observation::intervals
  std::vector<int> counts_;
  RtnnColumn column_;
};

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt = 0);

// State variables, in table order, that a fixed-optimal table is indexed by.
std::span<const StateVariable> fixed_table_variables(AgentKind kind);

// Action of a fixed-optimal table for an interval tuple in table order.
// Empty for tuples the table does not list.
std::optional<Action> fixed_agent_lookup(AgentKind kind, std::span<const int> tuple);

struct EpisodeResult {
  std::uint64_t seed = 0;
  int episode = 0;  // 1-based within the trial
  Phase phase = Phase::warmup;
  int steps = 0;
  Status cause = Status::ok;

  bool operator==(const EpisodeResult&) const = default;
};

struct TraceRow {
  int step = 0;
  double angle_deg = 0.0;
  double angular_velocity_deg = 0.0;
  double displacement = 0.0;
  double velocity = 0.0;
  int cid = -1;
  int action = 0;
  int reward = 0;
};

Observation observe(const CartPoleState& state, const ExperimentConfig& config);

// One episode from a fresh initial angle drawn from `angles`. Weights live in
// the agent and persist across calls.
EpisodeResult run_episode(Agent& agent, const ExperimentConfig& config, Rng& angles,
                          std::vector<TraceRow>* trace = nullptr);

struct TrialSummary {
  std::uint64_t seed = 0;
  double mean_test_steps = 0.0;
  std::optional<int> convergence_episode;
  int attempts = 1;
  bool target_met = false;  // restart protocol
  std::vector<EpisodeResult> episodes;
  std::vector<TraceRow> trace;  // when config.trace
  std::string weights;          // when config.dump_weights
};

// Smallest e (1-based, counting the window itself) such that the mean of
// steps[e - window .. e - 1] reaches target.
std::optional<int> detect_convergence(std::span<const int> steps, int window, double target);

TrialSummary run_trial(const ExperimentConfig& config, std::uint64_t seed);

// Fresh pseudo-random weights per attempt (whatever w_init says) until restart.window consecutive
// episodes average restart.target, or attempts run out.
TrialSummary restart_strategy(const ExperimentConfig& config, std::uint64_t seed);

// One trial per seed, results in seed order. `jobs` > 1 runs trials on worker threads.
std::vector<TrialSummary> run_experiment(const ExperimentConfig& config, int jobs = 1);

double mean_of_means(std::span<const TrialSummary> trials);

void write_results_csv(std::ostream& out, std::span<const TrialSummary> trials);
// Trials ranked worst to best by mean test steps.
void write_sorted_csv(std::ostream& out, std::span<const TrialSummary> trials);
void write_summary_csv(std::ostream& out, std::span<const TrialSummary> trials);
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

}  // namespace tlearn
