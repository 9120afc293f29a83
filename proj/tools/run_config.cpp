#include "run_config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace qpencil::cli {

namespace {

using nlohmann::json;

PauliSum load_pauli_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open Pauli-sum file '" + path.string() + "'");
  }
  try {
    return pauli_sum_from_text(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

LevelSchedule parse_schedule(const json& j, const LevelSchedule& base) {
  LevelSchedule s = base;
  if (j.contains("d_tau")) s.d_tau = j.at("d_tau").get<double>();
  if (j.contains("tau_max")) s.tau_max = j.at("tau_max").get<double>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("initial_theta")) {
    s.initial_theta = j.at("initial_theta").get<std::vector<double>>();
  }
  if (s.d_tau <= 0 || s.tau_max < s.d_tau) {
    throw ConfigError("schedule needs d_tau > 0 and tau_max >= d_tau");
  }
  return s;
}

STOConfig parse_hydrogen(const json& j) {
  STOConfig cfg;
  if (j.contains("x")) cfg.x = j.at("x").get<double>();
  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("z")) cfg.z = j.at("z").get<double>();
  if (j.contains("field")) cfg.field = j.at("field").get<double>();
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  return cfg;
}

RunConfig from_json(const json& root,
                    const std::filesystem::path& config_dir) {
  RunConfig config;
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  if (!root.contains("problem")) {
    throw ConfigError("config is missing the 'problem' field");
  }

  const json& problem = root.at("problem");
  if (problem.is_string()) {
    const std::string name = problem.get<std::string>();
    if (name == "hydrogen") {
      STOConfig cfg = root.contains("hydrogen")
                          ? parse_hydrogen(root.at("hydrogen"))
                          : STOConfig{};
      const STOPencil pencil = build_pencil(cfg);
      config.hydrogen = cfg;
      config.problem = ExampleProblem{
          .name = "hydrogen",
          .a = decompose(pencil.padded_a),
          .b = decompose(pencil.padded_b),
          .ansatz_layers = 1,
          .levels = {LevelSchedule{0.05, 100.0, std::nullopt, 1}},
          .mu_list = {},
      };
    } else {
      config.problem = example_problem(name);
    }
  } else if (problem.is_object() && problem.contains("custom")) {
    const json& custom = problem.at("custom");
    // Relative operator paths resolve against the config file's directory.
    const auto resolve = [&config_dir](const std::string& file) {
      std::filesystem::path p(file);
      return p.is_absolute() || std::filesystem::exists(p) ? p
                                                           : config_dir / p;
    };
    PauliSum a = load_pauli_file(resolve(custom.at("a_file").get<std::string>()));
    PauliSum b = load_pauli_file(resolve(custom.at("b_file").get<std::string>()));
    if (a.num_qubits() != b.num_qubits()) {
      throw ConfigError("custom A and B files have different qubit counts");
    }
    config.problem = ExampleProblem{
        .name = "custom",
        .a = std::move(a),
        .b = std::move(b),
        .ansatz_layers = 1,
        .levels = {LevelSchedule{}},
        .mu_list = {},
    };
  } else {
    throw ConfigError(
        "'problem' must be a name or {\"custom\": {\"a_file\", \"b_file\"}}");
  }

  if (root.contains("ansatz")) {
    const json& ansatz = root.at("ansatz");
    if (ansatz.contains("layers")) {
      config.problem.ansatz_layers = ansatz.at("layers").get<int>();
    }
  }
  if (root.contains("mu_list")) {
    config.problem.mu_list = root.at("mu_list").get<std::vector<double>>();
  }
  if (root.contains("schedules")) {
    const json& schedules = root.at("schedules");
    if (!schedules.is_array() || schedules.empty()) {
      throw ConfigError("'schedules' must be a nonempty array");
    }
    std::vector<LevelSchedule> parsed;
    for (const auto& j : schedules) {
      // Defaults come from the problem's own schedule at this position,
      // falling back to the previous parsed entry.
      LevelSchedule base;
      if (parsed.size() < config.problem.levels.size()) {
        base = config.problem.levels[parsed.size()];
      } else if (!parsed.empty()) {
        base = parsed.back();
        base.initial_theta.reset();
      }
      parsed.push_back(parse_schedule(j, base));
    }
    config.problem.levels = std::move(parsed);
  }
  if (root.contains("levels")) {
    const int levels = root.at("levels").get<int>();
    if (levels < 1) throw ConfigError("'levels' must be >= 1");
    // Extend by repeating the last schedule when the user asks for more
    // levels than the problem describes.
    while (static_cast<int>(config.problem.levels.size()) < levels) {
      LevelSchedule s = config.problem.levels.back();
      s.initial_theta.reset();
      s.seed += 1;
      config.problem.levels.push_back(s);
    }
    config.spectrum.levels = levels;
  }
  if (root.contains("evolution")) {
    const json& evo = root.at("evolution");
    if (evo.contains("shots")) {
      config.spectrum.shots = evo.at("shots").get<std::uint64_t>();
    }
    if (evo.contains("convergence_tol")) {
      config.spectrum.convergence_tol =
          evo.at("convergence_tol").get<double>();
    }
    if (evo.contains("b_norm_floor")) {
      config.spectrum.b_norm_floor = evo.at("b_norm_floor").get<double>();
    }
  }
  if (root.contains("out_dir")) {
    config.out_dir = root.at("out_dir").get<std::string>();
  }
  return config;
}

}  // namespace

std::filesystem::path preset_directory() {
  if (const char* env = std::getenv("QPENCIL_PRESET_DIR")) {
    return env;
  }
#ifdef QPENCIL_PRESET_DIR
  return QPENCIL_PRESET_DIR;
#else
  return "presets";
#endif
}

RunConfig load_run_config(const std::string& source) {
  namespace fs = std::filesystem;
  fs::path path;
  if (fs::exists(source)) {
    path = source;
  } else {
    const fs::path preset = preset_directory() / (source + ".json");
    if (fs::exists(preset)) {
      path = preset;
    } else {
      // Bare built-in name without a preset file.
      for (const auto& name : example_problem_names()) {
        if (source == name) {
          RunConfig config;
          config.problem = example_problem(name);
          return config;
        }
      }
      throw ConfigError("no config file, preset, or built-in problem named '" +
                        source + "'");
    }
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  try {
    return from_json(json::parse(in), path.parent_path());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace qpencil::cli
