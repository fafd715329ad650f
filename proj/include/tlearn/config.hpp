#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlearn/experiment.hpp"

namespace tlearn {

// Parse or validation failure, already formatted as "source:line: key 'k': why".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  std::string source;  // file name, or "--set"
  int line = 0;
};

// Flat "key = value" lines. '#' starts a comment; blank lines are skipped.
// Duplicate keys: the later one wins.
std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source);
std::vector<ConfigEntry> read_config_file(const std::string& path);

// "key=value" as given on the command line.
ConfigEntry parse_override(std::string_view text);

// Every key understood by apply_setting, in metadata order.
std::vector<std::string> config_keys();

// Throws ConfigError naming the entry's key and line.
void apply_setting(ExperimentConfig& config, const ConfigEntry& entry);

// File-level keys that are not part of an ExperimentConfig.
struct ConfigFile {
  std::vector<AgentKind> agents{AgentKind::tlearn};
  std::string sweep_key;
  std::vector<std::string> sweep_values;
  std::vector<ConfigEntry> entries;  // everything else, in order
};

ConfigFile split_config(const std::vector<ConfigEntry>& entries);

// One validated config per listed agent.
std::vector<ExperimentConfig> build_experiments(const ConfigFile& file);

// Complete "key = value" dump of `config`. Reading it back yields an equal
// configuration.
std::string to_config_text(const ExperimentConfig& config);

std::string format_seeds(const std::vector<std::uint64_t>& seeds);

}  // namespace tlearn
