#include "tlearn/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace tlearn {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.emplace_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Thrown by value parsers; wrapped with key and line by apply_setting.
struct BadValue {
  std::string why;
};

long long parse_int(std::string_view s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw BadValue{"expected an integer"};
  return v;
}

int parse_int32(std::string_view s) {
  const long long v = parse_int(s);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw BadValue{"integer out of range"};
  }
  return static_cast<int>(v);
}

double parse_double(std::string_view s) {
  const std::string text(s);
  if (text.empty()) throw BadValue{"expected a number"};
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || std::isnan(v)) throw BadValue{"expected a number"};
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw BadValue{"expected true or false"};
}

Fixed parse_fixed(std::string_view s) {
  try {
    return Fixed::parse(s);
  } catch (const std::invalid_argument& e) {
    throw BadValue{e.what()};
  }
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest text that reads back to the same value.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::vector<std::uint64_t> parse_seeds(std::string_view s) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& item : split_list(s)) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      const long long v = parse_int(item);
      if (v < 0) throw BadValue{"seeds must be non-negative"};
      seeds.push_back(static_cast<std::uint64_t>(v));
      continue;
    }
    const long long lo = parse_int(trim(std::string_view(item).substr(0, dash)));
    const long long hi = parse_int(trim(std::string_view(item).substr(dash + 1)));
    if (lo < 0 || hi < lo) throw BadValue{"bad seed range '" + item + "'"};
    for (long long v = lo; v <= hi; ++v) seeds.push_back(static_cast<std::uint64_t>(v));
  }
  return seeds;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Key {
  std::string name;
  Setter set;
  Getter get;
};

template <class Getter_, class Setter_>
Key key(std::string name, Setter_ set, Getter_ get) {
  return {std::move(name), Setter(std::move(set)), Getter(std::move(get))};
}

// Fixed-point weight initializer: a value, or "random" for uniform draws.
template <class Params>
Key w_init_key(std::string name, Params ExperimentConfig::*params, bool ExperimentConfig::*random) {
  return key(
      std::move(name),
      [params, random](ExperimentConfig& c, std::string_view v) {
        c.*random = v == "random";
        if (!(c.*random)) (c.*params).w_init = parse_fixed(v);
      },
      [params, random](const ExperimentConfig& c) {
        return c.*random ? std::string("random") : (c.*params).w_init.to_string();
      });
}

Key breakpoints_key(StateVariable sv) {
  return key(
      "encoder." + std::string(to_string(sv)) + ".breakpoints",
      [sv](ExperimentConfig& c, std::string_view v) {
        std::vector<double> points;
        for (const std::string& item : split_list(v)) points.push_back(parse_double(item));
        try {
          c.intervals[static_cast<std::size_t>(sv)] = IntervalSpec(std::move(points));
        } catch (const std::invalid_argument& e) {
          throw BadValue{e.what()};
        }
      },
      [sv](const ExperimentConfig& c) {
        std::string out;
        for (double p : c.spec(sv).breakpoints()) {
          if (!out.empty()) out += ", ";
          out += fmt_double(p);
        }
        return out;
      });
}

#define TLEARN_FIXED_KEY(NAME, EXPR)                                                               \
  key(                                                                                             \
      NAME, [](ExperimentConfig& c, std::string_view v) { c.EXPR = parse_fixed(v); },              \
      [](const ExperimentConfig& c) { return c.EXPR.to_string(); })
#define TLEARN_INT_KEY(NAME, EXPR)                                                                 \
  key(                                                                                             \
      NAME, [](ExperimentConfig& c, std::string_view v) { c.EXPR = parse_int32(v); },              \
      [](const ExperimentConfig& c) { return std::to_string(c.EXPR); })
#define TLEARN_DOUBLE_KEY(NAME, EXPR)                                                              \
  key(                                                                                             \
      NAME, [](ExperimentConfig& c, std::string_view v) { c.EXPR = parse_double(v); },             \
      [](const ExperimentConfig& c) { return fmt_double(c.EXPR); })
#define TLEARN_BOOL_KEY(NAME, EXPR)                                                                \
  key(                                                                                             \
      NAME, [](ExperimentConfig& c, std::string_view v) { c.EXPR = parse_bool(v); },               \
      [](const ExperimentConfig& c) { return fmt_bool(c.EXPR); })

const std::vector<Key>& key_table() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(key(
        "state_variables",
        [](ExperimentConfig& c, std::string_view v) {
          c.state_variables.clear();
          for (const std::string& item : split_list(v)) {
            auto sv = parse_state_variable(item);
            if (!sv) throw BadValue{"unknown state variable '" + item + "'"};
            c.state_variables.push_back(*sv);
          }
        },
        [](const ExperimentConfig& c) {
          std::string out;
          for (StateVariable sv : c.state_variables) {
            if (!out.empty()) out += ", ";
            out += to_string(sv);
          }
          return out;
        }));
    k.push_back(TLEARN_INT_KEY("encoder.hotness", hotness));
    k.push_back(key(
        "encoder.mode",
        [](ExperimentConfig& c, std::string_view v) {
          if (v == "binarized") c.encoding = EncodingMode::binarized;
          else if (v == "temporized") c.encoding = EncodingMode::temporized;
          else throw BadValue{"expected binarized or temporized"};
        },
        [](const ExperimentConfig& c) {
          return std::string(c.encoding == EncodingMode::binarized ? "binarized" : "temporized");
        }));
    for (StateVariable sv : {StateVariable::angle, StateVariable::angular_velocity, StateVariable::displacement,
                             StateVariable::cart_velocity}) {
      k.push_back(breakpoints_key(sv));
    }

    k.push_back(TLEARN_INT_KEY("ctnn.zcnt", ctnn.neurons));
    k.push_back(TLEARN_INT_KEY("ctnn.theta", ctnn.threshold));
    k.push_back(TLEARN_FIXED_KEY("ctnn.mu_capture", ctnn.mu_capture));
    k.push_back(TLEARN_FIXED_KEY("ctnn.mu_backoff", ctnn.mu_backoff));
    k.push_back(TLEARN_FIXED_KEY("ctnn.mu_search", ctnn.mu_search));
    k.push_back(TLEARN_INT_KEY("ctnn.w_max", ctnn.w_max));
    k.push_back(w_init_key("ctnn.w_init", &ExperimentConfig::ctnn, &ExperimentConfig::ctnn_random_weights));
    k.push_back(TLEARN_INT_KEY("ctnn.time_units", ctnn.time_units));
    k.push_back(key(
        "ctnn.response",
        [](ExperimentConfig& c, std::string_view v) {
          auto shape = parse_response_shape(v);
          if (!shape) throw BadValue{"expected ramp or ramp_offset"};
          c.ctnn.response = *shape;
        },
        [](const ExperimentConfig& c) { return std::string(to_string(c.ctnn.response)); }));

    k.push_back(TLEARN_INT_KEY("rtnn.theta", rtnn.threshold));
    k.push_back(TLEARN_FIXED_KEY("rtnn.rho_plus", rtnn.rho_plus));
    k.push_back(TLEARN_FIXED_KEY("rtnn.rho_minus", rtnn.rho_minus));
    k.push_back(TLEARN_INT_KEY("rtnn.omega_rho", rtnn.omega_rho));
    k.push_back(TLEARN_FIXED_KEY("rtnn.pi_plus", rtnn.pi_plus));
    k.push_back(TLEARN_FIXED_KEY("rtnn.pi_minus", rtnn.pi_minus));
    k.push_back(TLEARN_INT_KEY("rtnn.omega_pi", rtnn.omega_pi));
    k.push_back(TLEARN_INT_KEY("rtnn.w_max", rtnn.w_max));
    k.push_back(w_init_key("rtnn.w_init", &ExperimentConfig::rtnn, &ExperimentConfig::rtnn_random_weights));

    k.push_back(TLEARN_DOUBLE_KEY("q.alpha", q.alpha));
    k.push_back(TLEARN_DOUBLE_KEY("q.gamma", q.gamma));

    k.push_back(TLEARN_INT_KEY("warmup_episodes", warmup_episodes));
    k.push_back(TLEARN_INT_KEY("test_episodes", test_episodes));
    k.push_back(key(
        "seeds", [](ExperimentConfig& c, std::string_view v) { c.seeds = parse_seeds(v); },
        [](const ExperimentConfig& c) { return format_seeds(c.seeds); }));
    k.push_back(TLEARN_INT_KEY("max_steps", limits.max_steps));
    k.push_back(TLEARN_DOUBLE_KEY("init_angle_deg", init_angle_deg));
    k.push_back(TLEARN_DOUBLE_KEY("env.angle_limit_deg", limits.angle_limit_deg));
    k.push_back(TLEARN_DOUBLE_KEY("env.track_limit", limits.track_limit));
    k.push_back(TLEARN_INT_KEY("env.reward_period", limits.reward_period));
    k.push_back(key(
        "env.track_failure_reward",
        [](ExperimentConfig& c, std::string_view v) {
          const int r = parse_int32(v);
          if (r < -1 || r > 1) throw BadValue{"expected -1, 0 or 1"};
          c.limits.track_failure_reward = static_cast<Reward>(r);
        },
        [](const ExperimentConfig& c) { return std::to_string(static_cast<int>(c.limits.track_failure_reward)); }));

    k.push_back(TLEARN_DOUBLE_KEY("physics.cart_mass", physics.cart_mass));
    k.push_back(TLEARN_DOUBLE_KEY("physics.pole_mass", physics.pole_mass));
    k.push_back(TLEARN_DOUBLE_KEY("physics.gravity", physics.gravity));
    k.push_back(TLEARN_DOUBLE_KEY("physics.force", physics.force));
    k.push_back(TLEARN_DOUBLE_KEY("physics.half_length", physics.half_length));
    k.push_back(TLEARN_DOUBLE_KEY("physics.tau", physics.tau));
    k.push_back(key(
        "physics.integrator",
        [](ExperimentConfig& c, std::string_view v) {
          if (v == "euler") c.physics.integrator = Integrator::euler;
          else if (v == "semi_implicit") c.physics.integrator = Integrator::semi_implicit;
          else throw BadValue{"expected euler or semi_implicit"};
        },
        [](const ExperimentConfig& c) {
          return std::string(c.physics.integrator == Integrator::euler ? "euler" : "semi_implicit");
        }));

    k.push_back(key(
        "physics.angle_state",
        [](ExperimentConfig& c, std::string_view v) {
          if (v == "radians") c.physics.angle_state = AngleState::radians;
          else if (v == "degrees") c.physics.angle_state = AngleState::degrees;
          else throw BadValue{"expected radians or degrees"};
        },
        [](const ExperimentConfig& c) {
          return std::string(c.physics.angle_state == AngleState::radians ? "radians" : "degrees");
        }));

    k.push_back(TLEARN_BOOL_KEY("naive.mirror", naive_mirror));
    k.push_back(key(
        "protocol",
        [](ExperimentConfig& c, std::string_view v) {
          auto p = parse_protocol(v);
          if (!p) throw BadValue{"expected fixed, convergence or restart"};
          c.protocol = *p;
        },
        [](const ExperimentConfig& c) { return std::string(to_string(c.protocol)); }));
    k.push_back(TLEARN_INT_KEY("convergence.window", convergence.window));
    k.push_back(TLEARN_DOUBLE_KEY("convergence.target", convergence.target));
    k.push_back(TLEARN_INT_KEY("convergence.budget", convergence.budget));
    k.push_back(TLEARN_INT_KEY("restart.max_attempts", restart.max_attempts));
    k.push_back(TLEARN_INT_KEY("restart.episodes", restart.episodes));
    k.push_back(TLEARN_INT_KEY("restart.window", restart.window));
    k.push_back(TLEARN_DOUBLE_KEY("restart.target", restart.target));

    k.push_back(TLEARN_BOOL_KEY("trace", trace));
    k.push_back(TLEARN_INT_KEY("trace.episode", trace_episode));
    k.push_back(TLEARN_BOOL_KEY("dump_weights", dump_weights));
    return k;
  }();
  return table;
}

#undef TLEARN_FIXED_KEY
#undef TLEARN_INT_KEY
#undef TLEARN_DOUBLE_KEY
#undef TLEARN_BOOL_KEY

const Key* find_key(std::string_view name) {
  for (const Key& k : key_table()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string where(const ConfigEntry& e) {
  return e.line > 0 ? e.source + ":" + std::to_string(e.line) : e.source;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& why) {
  throw ConfigError(where(e) + ": key '" + e.key + "': " + why);
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(std::string_view text, std::string_view source) {
  std::vector<ConfigEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    ConfigEntry e;
    e.source = std::string(source);
    e.line = line_no;
    if (eq == std::string_view::npos) {
      e.key = std::string(line);
      fail(e, "expected 'key = value'");
    }
    e.key = std::string(trim(line.substr(0, eq)));
    e.value = std::string(trim(line.substr(eq + 1)));
    if (e.key.empty()) fail(e, "missing key before '='");
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

ConfigEntry parse_override(std::string_view text) {
  ConfigEntry e;
  e.source = "--set";
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    e.key = std::string(trim(text));
    fail(e, "expected key=value");
  }
  e.key = std::string(trim(text.substr(0, eq)));
  e.value = std::string(trim(text.substr(eq + 1)));
  if (e.key.empty()) fail(e, "missing key before '='");
  return e;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> names{"agents"};
  for (const Key& k : key_table()) names.push_back(k.name);
  return names;
}

void apply_setting(ExperimentConfig& config, const ConfigEntry& entry) {
  const Key* k = find_key(entry.key);
  if (!k) fail(entry, "unknown key");
  try {
    k->set(config, entry.value);
  } catch (const BadValue& bad) {
    fail(entry, bad.why + " (got '" + entry.value + "')");
  }
}

ConfigFile split_config(const std::vector<ConfigEntry>& entries) {
  ConfigFile file;
  for (const ConfigEntry& e : entries) {
    if (e.key == "agents") {
      file.agents.clear();
      for (const std::string& item : split_list(e.value)) {
        auto kind = parse_agent_kind(item);
        if (!kind) fail(e, "unknown agent '" + item + "'");
        file.agents.push_back(*kind);
      }
      if (file.agents.empty()) fail(e, "at least one agent is required");
    } else if (e.key == "sweep.key") {
      if (e.value == "agents" || !find_key(e.value)) fail(e, "cannot sweep '" + e.value + "'");
      file.sweep_key = e.value;
    } else if (e.key == "sweep.values") {
      file.sweep_values = split_list(e.value);
    } else {
      if (!find_key(e.key)) fail(e, "unknown key");
      file.entries.push_back(e);
    }
  }
  return file;
}

std::vector<ExperimentConfig> build_experiments(const ConfigFile& file) {
  ExperimentConfig base;
  for (const ConfigEntry& e : file.entries) apply_setting(base, e);

  std::vector<ExperimentConfig> out;
  for (AgentKind agent : file.agents) {
    ExperimentConfig c = base;
    c.agent = agent;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid configuration for agent '") + std::string(to_string(agent)) +
                        "': " + e.what());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_config_text(const ExperimentConfig& config) {
  std::string out = "agents = " + std::string(to_string(config.agent)) + "\n";
  for (const Key& k : key_table()) out += k.name + " = " + k.get(config) + "\n";
  return out;
}

std::string format_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size();) {
    std::size_t j = i;
    while (j + 1 < seeds.size() && seeds[j + 1] == seeds[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(seeds[i]);
    if (j > i) out += "-" + std::to_string(seeds[j]);
    i = j + 1;
  }
  return out;
}

}  // namespace tlearn
