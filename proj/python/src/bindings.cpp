#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tlearn/config.hpp"
#include "tlearn/harness.hpp"

namespace py = pybind11;
using namespace tlearn;

namespace {

// Spike times cross the boundary as int, or None for no spike.
using PyTimes = std::vector<std::optional<int>>;

SpikeVolley to_volley(const PyTimes& times) {
  SpikeVolley v(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i]) {
      if (*times[i] < 0) throw py::value_error("spike times must be >= 0");
      v[i] = SpikeTime(*times[i]);
    }
  }
  return v;
}

PyTimes from_volley(const SpikeVolley& v) {
  PyTimes out;
  for (const SpikeTime& t : v.times()) out.push_back(t.finite() ? std::optional<int>(t.value()) : std::nullopt);
  return out;
}

ExperimentConfig single_config(const std::string& text) {
  auto configs = build_experiments(split_config(parse_config_text(text, "<string>")));
  return configs.front();
}

std::vector<ExperimentConfig> load_config(const std::string& path, const std::vector<std::string>& overrides) {
  auto entries = read_config_file(path);
  for (const auto& o : overrides) entries.push_back(parse_override(o));
  return build_experiments(split_config(entries));
}

py::dict summary_dict(const TrialSummary& t) {
  py::list episodes;
  for (const auto& e : t.episodes) {
    episodes.append(py::dict(py::arg("episode") = e.episode, py::arg("phase") = std::string(to_string(e.phase)),
                             py::arg("steps") = e.steps, py::arg("cause") = std::string(to_string(e.cause))));
  }
  py::dict d;
  d["seed"] = t.seed;
  d["mean_test_steps"] = t.mean_test_steps;
  d["convergence_episode"] = t.convergence_episode;
  d["attempts"] = t.attempts;
  d["target_met"] = t.target_met;
  d["episodes"] = episodes;
  return d;
}

std::string csv_of(void (*writer)(std::ostream&, std::span<const TrialSummary>), const std::vector<TrialSummary>& t) {
  std::ostringstream out;
  writer(out, t);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Temporal-neural-network reinforcement learning on the cart-pole";
  m.attr("__version__") = TLEARN_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("rif_response", [](int w, int t, const std::string& shape, int w_max) {
    auto s = parse_response_shape(shape);
    if (!s) throw py::value_error("unknown response shape '" + shape + "'");
    return rif_response(w, t, *s, w_max);
  }, py::arg("w"), py::arg("t"), py::arg("shape") = "ramp_offset", py::arg("w_max") = 8);

  m.def("encode_mhot", [](int index, int count, int hotness) { return from_volley(encode_mhot(index, count, hotness)); },
        py::arg("index"), py::arg("count"), py::arg("hotness") = 1);

  m.def("discretize", [](const std::vector<double>& breakpoints, double value) {
    return IntervalSpec(breakpoints).discretize(value);
  }, py::arg("breakpoints"), py::arg("value"));

  m.def("dynamics", [](double angle, double angular_velocity, double force) {
    const Accelerations a = dynamics({angle, angular_velocity, 0.0, 0.0}, force, CartPoleParams{});
    return py::make_tuple(a.angular, a.linear);
  }, py::arg("angle"), py::arg("angular_velocity"), py::arg("force"), "Angular and linear accelerations, SI units.");

  m.def("step_env", [](std::vector<double> s, int action) {
    if (s.size() != 4) throw py::value_error("state is (angle, angular_velocity, displacement, velocity)");
    if (action != 0 && action != 1) throw py::value_error("action is 0 (left) or 1 (right)");
    const CartPoleState n = step_env({s[0], s[1], s[2], s[3]}, static_cast<Action>(action), CartPoleParams{});
    return py::make_tuple(n.angle, n.angular_velocity, n.displacement, n.velocity);
  }, py::arg("state"), py::arg("action"));

  m.def("bellman_update", [](double q, double r, double next_max, double alpha, double gamma) {
    QTable t(2, 1);
    t.at(0, 0) = q;
    t.at(1, 0) = next_max;
    bellman_update(t, 0, 0, 1, r, {alpha, gamma});
    return t.at(0, 0);
  }, py::arg("q"), py::arg("reward"), py::arg("next_max"), py::arg("alpha") = 0.9, py::arg("gamma") = 0.95);

  py::class_<CtnnColumn>(m, "CtnnColumn")
      .def(py::init([](std::size_t inputs, int neurons, int threshold, const std::string& mu_capture,
                       const std::string& mu_backoff, const std::string& mu_search, int w_max, const std::string& w_init) {
             CtnnParams p;
             p.neurons = neurons;
             p.threshold = threshold;
             p.mu_capture = Fixed::parse(mu_capture);
             p.mu_backoff = Fixed::parse(mu_backoff);
             p.mu_search = Fixed::parse(mu_search);
             p.w_max = w_max;
             p.w_init = Fixed::parse(w_init);
             return CtnnColumn(inputs, p);
           }),
           py::arg("inputs"), py::arg("neurons") = 16, py::arg("threshold") = 6, py::arg("mu_capture") = "1/16",
           py::arg("mu_backoff") = "1/16", py::arg("mu_search") = "0", py::arg("w_max") = 8, py::arg("w_init") = "5")
      .def("infer", [](const CtnnColumn& c, const PyTimes& x) { return from_volley(c.infer(to_volley(x)).cid); })
      .def("step", [](CtnnColumn& c, const PyTimes& x) { return from_volley(c.step(to_volley(x))); })
      .def("weight", [](const CtnnColumn& c, std::size_t i, std::size_t j) { return c.weights().at(i, j).to_double(); })
      .def_property_readonly("inputs", &CtnnColumn::inputs)
      .def_property_readonly("neurons", &CtnnColumn::neurons);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("from_text", &single_config, py::arg("text"))
      .def_property_readonly("agent", [](const ExperimentConfig& c) { return std::string(to_string(c.agent)); })
      .def_property_readonly("seeds", [](const ExperimentConfig& c) { return c.seeds; })
      .def("to_text", &to_config_text)
      .def("__repr__", [](const ExperimentConfig& c) {
        return "<ExperimentConfig agent=" + std::string(to_string(c.agent)) + " seeds=" + format_seeds(c.seeds) + ">";
      });

  m.def("load_config", &load_config, py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
        "One config per agent listed in the file.");

  m.def("run_experiment", [](const ExperimentConfig& c, int jobs) {
    std::vector<TrialSummary> trials;
    {
      py::gil_scoped_release release;
      trials = run_experiment(c, jobs);
    }
    py::list out;
    for (const auto& t : trials) out.append(summary_dict(t));
    return py::make_tuple(out, csv_of(&write_results_csv, trials), csv_of(&write_sorted_csv, trials));
  }, py::arg("config"), py::arg("jobs") = 1, "Returns (summaries, results.csv text, sorted.csv text).");

  m.def("detect_convergence", [](const std::vector<int>& steps, int window, double target) {
    return detect_convergence(steps, window, target);
  }, py::arg("steps"), py::arg("window") = 30, py::arg("target") = 6000.0);
}
