// tlearn: run cart-pole experiments described by flat config files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tlearn/config.hpp"
#include "tlearn/harness.hpp"

#ifndef TLEARN_VERSION
#define TLEARN_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace tlearn;

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 1;

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string out = "out";
  int jobs = 1;
  bool trace = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--set", opts.overrides, "Override a config key (key=value), repeatable");
  cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
  cmd->add_option("--jobs", opts.jobs, "Parallel trials")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_flag("--trace", opts.trace, "Write per-step traces");
}

ConfigFile load(const CommonOptions& opts, const std::vector<ConfigEntry>& extra = {}) {
  std::vector<ConfigEntry> entries = read_config_file(opts.config);
  for (const std::string& o : opts.overrides) entries.push_back(parse_override(o));
  if (opts.trace) entries.push_back({"trace", "true", "--trace", 0});
  entries.insert(entries.end(), extra.begin(), extra.end());
  return split_config(entries);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  return out;
}

void write_metadata(const fs::path& dir, const ExperimentConfig& config, const std::string& command) {
  auto out = open_out(dir / "metadata.txt");
  out << "# tlearn " << TLEARN_VERSION << "\n";
  out << "# command: " << command << "\n";
  out << "# replay: tlearn run --config metadata.txt\n";
  out << to_config_text(config);
}

void write_outputs(const fs::path& dir, const ExperimentConfig& config, const std::vector<TrialSummary>& trials,
                   const std::string& command) {
  fs::create_directories(dir);
  write_metadata(dir, config, command);
  {
    auto out = open_out(dir / "results.csv");
    write_results_csv(out, trials);
  }
  {
    auto out = open_out(dir / "sorted.csv");
    write_sorted_csv(out, trials);
  }
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(out, trials);
  }
  for (const auto& t : trials) {
    if (config.trace) {
      auto out = open_out(dir / ("trace_seed" + std::to_string(t.seed) + ".csv"));
      write_trace_csv(out, t.trace);
    }
    if (config.dump_weights) {
      auto out = open_out(dir / ("weights_seed" + std::to_string(t.seed) + ".txt"));
      out << t.weights;
    }
  }
}

void run_configs(const std::vector<ExperimentConfig>& configs, const fs::path& out, int jobs,
                 const std::string& command) {
  for (const auto& config : configs) {
    const auto trials = run_experiment(config, jobs);
    const fs::path dir = out / std::string(to_string(config.agent));
    write_outputs(dir, config, trials, command);
    std::printf("%-18s seeds=%zu mean_of_means=%.3f -> %s\n", std::string(to_string(config.agent)).c_str(),
                trials.size(), mean_of_means(trials), dir.string().c_str());
  }
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal-neural-network reinforcement learning on the cart-pole"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TLEARN_VERSION);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Run every agent in the config over its seeds");
  add_common(run, run_opts);

  CommonOptions sweep_opts;
  std::string sweep_key;
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Repeat the run for each value of one key");
  add_common(sweep, sweep_opts);
  sweep->add_option("--key", sweep_key, "Key to vary (defaults to sweep.key in the config)");
  sweep->add_option("--values", sweep_values, "Values to try (defaults to sweep.values)")->delimiter(',');

  CommonOptions trace_opts;
  std::uint64_t trace_seed = 1;
  int trace_episode = 0;
  std::string trace_agent;
  auto* trace = app.add_subcommand("trace", "Write the per-step trace of one episode");
  add_common(trace, trace_opts);
  trace->add_option("--seed", trace_seed, "Trial seed")->capture_default_str();
  trace->add_option("--episode", trace_episode, "1-based episode (0 = last)")->capture_default_str();
  trace->add_option("--agent", trace_agent, "Agent to trace (defaults to the first listed)");

  CLI11_PARSE(app, argc, argv);
  const std::string command = join_args(argc, argv);

  try {
    if (*run) {
      const auto configs = build_experiments(load(run_opts));
      run_configs(configs, run_opts.out, run_opts.jobs, command);
      return 0;
    }

    if (*sweep) {
      const bool values_given = sweep->count("--values") > 0;
      ConfigFile file = load(sweep_opts);
      const std::string key = sweep_key.empty() ? file.sweep_key : sweep_key;
      std::vector<std::string> values = values_given ? sweep_values : file.sweep_values;
      std::erase_if(values, [](const std::string& v) { return v.empty(); });
      if (values.empty()) {
        std::printf("sweep: no values, nothing to do\n");
        return 0;
      }
      if (key.empty()) throw ConfigError("sweep: no key given (--key or sweep.key)");
      for (const std::string& value : values) {
        ConfigFile variant = file;
        variant.entries.push_back({key, value, "sweep", 0});
        const auto configs = build_experiments(variant);
        run_configs(configs, fs::path(sweep_opts.out) / (key + "=" + value), sweep_opts.jobs, command);
      }
      return 0;
    }

    if (*trace) {
      ConfigFile file = load(trace_opts, {{"seeds", std::to_string(trace_seed), "--seed", 0},
                                          {"trace", "true", "trace", 0},
                                          {"trace.episode", std::to_string(trace_episode), "--episode", 0}});
      if (!trace_agent.empty()) {
        auto kind = parse_agent_kind(trace_agent);
        if (!kind) throw ConfigError("--agent: unknown agent '" + trace_agent + "'");
        file.agents = {*kind};
      }
      file.agents.resize(1);
      const ExperimentConfig config = build_experiments(file).front();
      if (config.protocol == Protocol::fixed && trace_episode > config.episodes()) {
        throw ConfigError("--episode " + std::to_string(trace_episode) + " is beyond the trial length of " +
                          std::to_string(config.episodes()) + " episodes");
      }
      const TrialSummary trial = run_trial(config, trace_seed);
      if (trace_episode > static_cast<int>(trial.episodes.size())) {
        throw ConfigError("--episode " + std::to_string(trace_episode) + " was not reached; the trial ran " +
                          std::to_string(trial.episodes.size()) + " episodes");
      }
      const fs::path dir = trace_opts.out;
      fs::create_directories(dir);
      write_metadata(dir, config, command);
      auto out = open_out(dir / "trace.csv");
      write_trace_csv(out, trial.trace);
      std::printf("trace: seed=%llu episode=%d steps=%zu -> %s\n", static_cast<unsigned long long>(trace_seed),
                  trace_episode == 0 ? static_cast<int>(trial.episodes.size()) : trace_episode, trial.trace.size(),
                  (dir / "trace.csv").string().c_str());
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
  return 0;
}
