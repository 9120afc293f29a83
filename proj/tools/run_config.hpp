#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qpencil/hydrogen.hpp"
#include "qpencil/problems.hpp"

namespace qpencil::cli {

/// A fully resolved solve request: the operator pair with its level
/// schedules (built-in, hydrogen, or custom Pauli-sum files) plus output
/// settings.
struct RunConfig {
  ExampleProblem problem;
  SpectrumOptions spectrum;
  std::filesystem::path out_dir = "qpencil_out";
  std::optional<STOConfig> hydrogen;  // set when problem came from the STO
                                      // pencil
};

/// `source` is either a built-in problem name (example1|example2|example3),
/// the name of a JSON preset in the preset directory, or a path to a JSON
/// config file. Throws ConfigError with line/field diagnostics.
RunConfig load_run_config(const std::string& source);

/// Directory searched for `<name>.json` presets; compiled-in default,
/// overridable with the QPENCIL_PRESET_DIR environment variable.
std::filesystem::path preset_directory();

}  // namespace qpencil::cli
