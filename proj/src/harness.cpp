#include "tlearn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tlearn {
namespace {

constexpr std::size_t kActions = 2;

CtnnColumn make_ctnn(const ExperimentConfig& config, Rng& weights) {
  CtnnColumn column(static_cast<std::size_t>(config.encoder().width()), config.ctnn);
  if (config.ctnn_random_weights) column.weights().randomize(weights);
  return column;
}

RtnnColumn make_rtnn(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt, Rng& weights) {
  RtnnColumn column(static_cast<std::size_t>(config.ctnn.neurons), kActions, config.rtnn,
                    make_stream(seed, Stream::tie_breaks, attempt));
  if (config.rtnn_random_weights) column.weights().randomize(weights);
  return column;
}

std::string format_mean(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Phase p) { return p == Phase::warmup ? "warmup" : "test"; }

// ---------------------------------------------------------------------------
// Agents

TLearnAgent::TLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt)
    : TLearnAgent(config, seed, attempt, make_stream(seed, Stream::weights, attempt)) {}

TLearnAgent::TLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt, Rng weights)
    : ctnn_(make_ctnn(config, weights)), rtnn_(make_rtnn(config, seed, attempt, weights)) {}

Action TLearnAgent::act(const Observation& obs) {
  const SpikeVolley cid = ctnn_.step(obs.volley);
  const std::optional<std::size_t> row = cid.first_spike();
  const std::size_t action = rtnn_.infer_row(row);
  rtnn_.record_row(row, action);
  last_cid_ = row ? static_cast<int>(*row) : -1;
  return static_cast<Action>(action);
}

void TLearnAgent::learn(const Observation&, Reward r) {
  rtnn_.apply_reward(r);
  rtnn_.tick();
}

void TLearnAgent::begin_episode() { rtnn_.reset_traces(); }

void TLearnAgent::write_weights(std::ostream& out) const {
  out << "# ctnn\n";
  tlearn::write_weights(out, ctnn_.weights());
  out << "# rtnn\n";
  rtnn_.write_state(out);
}

QLearnAgent::QLearnAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt)
    : explorer_(config, seed, attempt),
      table_([&] {
        std::size_t states = 1;
        for (int c : config.interval_counts()) states *= static_cast<std::size_t>(c);
        return states;
      }(), kActions),
      params_(config.q),
      counts_(config.interval_counts()) {}

Action QLearnAgent::act(const Observation& obs) {
  last_state_ = state_index(obs.intervals, counts_);
  Action a = phase_ == Phase::warmup ? explorer_.act(obs)
                                     : static_cast<Action>(q_policy(table_, last_state_));
  last_action_ = static_cast<std::size_t>(a);
  return a;
}

void QLearnAgent::learn(const Observation& next, Reward r) {
  bellman_update(table_, last_state_, last_action_, state_index(next.intervals, counts_),
                 static_cast<double>(static_cast<int>(r)), params_);
  if (phase_ == Phase::warmup) explorer_.learn(next, r);
}

void QLearnAgent::begin_episode() { explorer_.begin_episode(); }

int QLearnAgent::last_cid() const { return phase_ == Phase::warmup ? explorer_.last_cid() : -1; }

void QLearnAgent::write_weights(std::ostream& out) const {
  explorer_.write_weights(out);
  out << "# qtable\n";
  table_.write_csv(out);
}

Action NaiveAgent::act(const Observation& obs) {
  const bool right = obs.state.angle >= 0.0;
  return (right != mirror_) ? Action::push_right : Action::push_left;
}

FixedTableAgent::FixedTableAgent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt)
    : column_(1, kActions, RtnnParams{}, Rng{}) {
  const auto vars = fixed_table_variables(config.agent);
  if (vars.empty()) throw std::invalid_argument("not a fixed-table agent");
  std::size_t rows = 1;
  for (StateVariable sv : vars) {
    auto it = std::find(config.state_variables.begin(), config.state_variables.end(), sv);
    if (it == config.state_variables.end()) {
      throw std::invalid_argument(std::string(to_string(config.agent)) + " needs state variable '" +
                                  std::string(to_string(sv)) + "'");
    }
    const int expected = sv == StateVariable::angle ? 6 : 3;
    if (config.spec(sv).count() != expected) {
      throw std::invalid_argument(std::string(to_string(config.agent)) + " expects " + std::to_string(expected) +
                                  " intervals for '" + std::string(to_string(sv)) + "'");
    }
    positions_.push_back(static_cast<std::size_t>(it - config.state_variables.begin()));
    counts_.push_back(expected);
    rows *= static_cast<std::size_t>(expected);
  }

  RtnnParams frozen = config.rtnn;
  frozen.w_init = Fixed{};
  column_ = RtnnColumn(rows, kActions, frozen, make_stream(seed, Stream::tie_breaks, attempt));
  std::vector<int> tuple(vars.size(), 1);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    for (std::size_t k = vars.size(); k-- > 0;) {
      tuple[k] = static_cast<int>(rest % static_cast<std::size_t>(counts_[k])) + 1;
      rest /= static_cast<std::size_t>(counts_[k]);
    }
    if (auto a = fixed_agent_lookup(config.agent, tuple)) {
      column_.weights().set(row, static_cast<std::size_t>(*a), Fixed::from_int(frozen.w_max));
    }
  }
}

Action FixedTableAgent::act(const Observation& obs) {
  std::vector<int> tuple;
  tuple.reserve(positions_.size());
  for (std::size_t p : positions_) tuple.push_back(obs.intervals[p]);
  return static_cast<Action>(column_.infer_row(state_index(tuple, counts_)));
}

void FixedTableAgent::write_weights(std::ostream& out) const { tlearn::write_weights(out, column_.weights()); }

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config, std::uint64_t seed, std::uint64_t attempt) {
  switch (config.agent) {
    case AgentKind::tlearn: return std::make_unique<TLearnAgent>(config, seed, attempt);
    case AgentKind::qlearn_baseline: return std::make_unique<QLearnAgent>(config, seed, attempt);
    case AgentKind::naive: return std::make_unique<NaiveAgent>(config.naive_mirror);
    case AgentKind::fixed_optimal_1sv:
    case AgentKind::fixed_optimal_2sv:
    case AgentKind::fixed_optimal_3sv: return std::make_unique<FixedTableAgent>(config, seed, attempt);
  }
  throw std::invalid_argument("unknown agent kind");
}

// ---------------------------------------------------------------------------
// Episodes and trials

Observation observe(const CartPoleState& state, const ExperimentConfig& config) {
  Observation obs;
  obs.state = state;
  obs.intervals.reserve(config.state_variables.size());
  for (StateVariable sv : config.state_variables) {
    const IntervalSpec& spec = config.spec(sv);
    const int index = spec.discretize(state_value(state, sv));
    obs.intervals.push_back(index);
    obs.volley.append(encode_mhot(index, spec.count(), config.hotness));
  }
  return obs;
}

EpisodeResult run_episode(Agent& agent, const ExperimentConfig& config, Rng& angles, std::vector<TraceRow>* trace) {
  CartPoleState state = init_episode([&](double lo, double hi) { return angles.uniform(lo, hi); },
                                     config.init_angle_deg);
  agent.begin_episode();
  Observation obs = observe(state, config);
  for (int step = 1;; ++step) {
    const Action action = agent.act(obs);
    state = step_env(state, action, config.physics);
    const StepOutcome outcome = check_and_reward(state, step, config.limits);
    Observation next = observe(state, config);
    agent.learn(next, outcome.reward);
    if (trace) {
      trace->push_back({step, state.angle_deg(), state.angular_velocity_deg(), state.displacement, state.velocity,
                        agent.last_cid(), static_cast<int>(action), static_cast<int>(outcome.reward)});
    }
    if (outcome.status != Status::ok) {
      EpisodeResult result;
      result.steps = step;
      result.cause = outcome.status;
      return result;
    }
    obs = std::move(next);
  }
}

std::optional<int> detect_convergence(std::span<const int> steps, int window, double target) {
  if (window < 1 || steps.size() < static_cast<std::size_t>(window)) return std::nullopt;
  long long sum = 0;
  for (std::size_t e = 0; e < steps.size(); ++e) {
    sum += steps[e];
    if (e >= static_cast<std::size_t>(window)) sum -= steps[e - static_cast<std::size_t>(window)];
    if (e + 1 >= static_cast<std::size_t>(window) && static_cast<double>(sum) >= target * window) {
      return static_cast<int>(e + 1);
    }
  }
  return std::nullopt;
}

namespace {

// Runs episodes on one agent until `stop` says so or `limit` is reached.
template <class Stop>
void run_episodes(Agent& agent, const ExperimentConfig& config, std::uint64_t seed, Rng& angles, int limit,
                  TrialSummary& summary, Stop stop) {
  const int trace_target = config.trace_episode;
  for (int e = 0; e < limit; ++e) {
    const int index = static_cast<int>(summary.episodes.size()) + 1;
    const Phase phase = config.protocol == Protocol::fixed && e >= config.warmup_episodes ? Phase::test
                                                                                           : Phase::warmup;
    agent.set_phase(phase);
    std::vector<TraceRow> rows;
    const bool tracing = config.trace && (trace_target == 0 || trace_target == index);
    EpisodeResult r = run_episode(agent, config, angles, tracing ? &rows : nullptr);
    r.seed = seed;
    r.episode = index;
    r.phase = phase;
    summary.episodes.push_back(r);
    if (tracing) summary.trace = std::move(rows);
    if (stop(summary)) break;
  }
}

std::vector<int> step_series(const TrialSummary& s) {
  std::vector<int> steps;
  steps.reserve(s.episodes.size());
  for (const auto& e : s.episodes) steps.push_back(e.steps);
  return steps;
}

// Marks the trailing window as the measured phase and averages it.
void finish_windowed(TrialSummary& s, int window) {
  const std::size_t n = s.episodes.size();
  const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t i = n - w; i < n; ++i) {
    s.episodes[i].phase = Phase::test;
    sum += s.episodes[i].steps;
  }
  s.mean_test_steps = w ? sum / static_cast<double>(w) : 0.0;
}

}  // namespace

TrialSummary run_trial(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.protocol == Protocol::restart) return restart_strategy(config, seed);

  TrialSummary summary;
  summary.seed = seed;
  Rng angles = make_stream(seed, Stream::initial_angles);
  auto agent = make_agent(config, seed);

  if (config.protocol == Protocol::fixed) {
    run_episodes(*agent, config, seed, angles, config.episodes(), summary, [](const TrialSummary&) { return false; });
    double sum = 0.0;
    for (const auto& e : summary.episodes) {
      if (e.phase == Phase::test) sum += e.steps;
    }
    summary.mean_test_steps = sum / config.test_episodes;
    summary.convergence_episode =
        detect_convergence(step_series(summary), config.convergence.window, config.convergence.target);
  } else {
    const auto& policy = config.convergence;
    run_episodes(*agent, config, seed, angles, policy.budget, summary, [&](const TrialSummary& s) {
      if (s.episodes.size() < static_cast<std::size_t>(policy.window)) return false;
      double sum = 0.0;
      for (std::size_t i = s.episodes.size() - static_cast<std::size_t>(policy.window); i < s.episodes.size(); ++i) {
        sum += s.episodes[i].steps;
      }
      return sum >= policy.target * policy.window;
    });
    summary.convergence_episode = detect_convergence(step_series(summary), policy.window, policy.target);
    finish_windowed(summary, policy.window);
  }
  if (config.dump_weights) {
    std::ostringstream out;
    agent->write_weights(out);
    summary.weights = out.str();
  }
  return summary;
}

TrialSummary restart_strategy(const ExperimentConfig& base, std::uint64_t seed) {
  base.validate();
  // Every attempt draws a fresh set of weights.
  ExperimentConfig config = base;
  config.ctnn_random_weights = true;
  config.rtnn_random_weights = true;
  const auto& policy = config.restart;
  TrialSummary summary;
  summary.seed = seed;
  summary.attempts = 0;
  Rng angles = make_stream(seed, Stream::initial_angles);
  std::unique_ptr<Agent> agent;
  for (int attempt = 0; attempt < policy.max_attempts; ++attempt) {
    summary.attempts = attempt + 1;
    summary.episodes.clear();
    agent = make_agent(config, seed, static_cast<std::uint64_t>(attempt));
    run_episodes(*agent, config, seed, angles, policy.episodes, summary, [&](const TrialSummary& s) {
      return detect_convergence(step_series(s), policy.window, policy.target).has_value();
    });
    summary.convergence_episode = detect_convergence(step_series(summary), policy.window, policy.target);
    if (summary.convergence_episode) {
      summary.target_met = true;
      break;
    }
  }
  if (!summary.episodes.empty()) finish_windowed(summary, policy.window);
  if (config.dump_weights && agent) {
    std::ostringstream out;
    agent->write_weights(out);
    summary.weights = out.str();
  }
  return summary;
}

std::vector<TrialSummary> run_experiment(const ExperimentConfig& config, int jobs) {
  config.validate();
  std::vector<TrialSummary> results(config.seeds.size());
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, results.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < results.size(); ++i) results[i] = run_trial(config, config.seeds[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < results.size(); i = next++) results[i] = run_trial(config, config.seeds[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double mean_of_means(std::span<const TrialSummary> trials) {
  if (trials.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : trials) sum += t.mean_test_steps;
  return sum / static_cast<double>(trials.size());
}

void write_results_csv(std::ostream& out, std::span<const TrialSummary> trials) {
  out << "seed,episode,phase,steps,cause\n";
  for (const auto& t : trials) {
    for (const auto& e : t.episodes) {
      out << e.seed << ',' << e.episode << ',' << to_string(e.phase) << ',' << e.steps << ',' << to_string(e.cause)
          << '\n';
    }
  }
}

void write_sorted_csv(std::ostream& out, std::span<const TrialSummary> trials) {
  std::vector<const TrialSummary*> order;
  for (const auto& t : trials) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const TrialSummary* a, const TrialSummary* b) {
    return a->mean_test_steps < b->mean_test_steps;
  });
  out << "rank,mean_test_steps,seed\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    out << i + 1 << ',' << format_mean(order[i]->mean_test_steps) << ',' << order[i]->seed << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const TrialSummary> trials) {
  out << "seed,mean_test_steps,episodes,convergence_episode,attempts,target_met\n";
  for (const auto& t : trials) {
    out << t.seed << ',' << format_mean(t.mean_test_steps) << ',' << t.episodes.size() << ','
        << (t.convergence_episode ? std::to_string(*t.convergence_episode) : std::string()) << ',' << t.attempts
        << ',' << (t.target_met ? 1 : 0) << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "step,angle_deg,ang_vel,displacement_m,cart_vel,cid_index,action,reward\n";
  for (const auto& r : rows) {
    out << r.step << ',' << format_value(r.angle_deg) << ',' << format_value(r.angular_velocity_deg) << ','
        << format_value(r.displacement) << ',' << format_value(r.velocity) << ',' << r.cid << ',' << r.action << ','
        << r.reward << '\n';
  }
}

}  // namespace tlearn
