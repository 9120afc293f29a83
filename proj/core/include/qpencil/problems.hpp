#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpencil/evolver.hpp"
#include "qpencil/oracle.hpp"
#include "qpencil/pauli.hpp"

namespace qpencil {

/// Per-spectral-level evolution schedule of a built-in problem.
struct LevelSchedule {
  double d_tau = 0.05;
  double tau_max = 50.0;
  std::optional<std::vector<double>> initial_theta;  // explicit start point
  std::uint64_t seed = 1;  // used when initial_theta is absent
};

/// A ready-to-run generalized eigenvalue problem: operator pair, ansatz
/// size, and the evolution schedule for each spectral level.
struct ExampleProblem {
  std::string name;
  PauliSum a;
  PauliSum b;
  int ansatz_layers = 1;
  std::vector<LevelSchedule> levels;
  std::vector<double> mu_list;  // deflation strength per converged level
};

/// Built-in problems: "example1" (2-qubit, regular B), "example2"
/// (2-qubit, singular rank-one B), "example3" (3-qubit). Throws
/// ConfigError for unknown names.
ExampleProblem example_problem(std::string_view name);
std::vector<std::string> example_problem_names();

struct SpectrumOptions {
  int levels = -1;  // -1 = every level the problem defines
  std::uint64_t shots = 0;
  std::optional<std::uint64_t> seed_override;
  double b_norm_floor = 1e-8;
  double convergence_tol = 1e-7;
};

/// Runs the spectral levels in order, deflating each converged state into
/// the next run with the problem's mu values.
std::vector<EvolutionTrace> run_spectrum(const ExampleProblem& problem,
                                         const SpectrumOptions& opts = {});

/// Dense pencil of the problem's operators, for the classical oracle.
Pencil dense_pencil(const ExampleProblem& problem);

}  // namespace qpencil
