// qpencil: solves A|phi> = lambda B|phi> for Hermitian pencils by
// variational imaginary-time evolution of a simulated circuit, with a
// classical dense oracle for cross-checks and an STO hydrogen
// polarizability pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpencil/hydrogen.hpp"
#include "qpencil/oracle.hpp"
#include "qpencil/problems.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qpencil;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitConvergence = 4;

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::config:
      return kExitConfig;
    case ErrorCategory::numerical:
      return kExitNumerical;
    case ErrorCategory::convergence:
      return kExitConvergence;
  }
  return kExitNumerical;
}

json eigenpairs_to_json(const EigenpairSet& eig) {
  json out;
  out["b_rank"] = eig.b_rank;
  out["pairs"] = json::array();
  for (const auto& p : eig.pairs) {
    json pair;
    pair["lambda"] = p.lambda;
    pair["b_norm"] = p.b_norm;
    pair["multiplicity"] = p.multiplicity;
    json vec = json::array();
    for (Eigen::Index i = 0; i < p.vector.size(); ++i) {
      vec.push_back({p.vector(i).real(), p.vector(i).imag()});
    }
    pair["vector"] = std::move(vec);
    out["pairs"].push_back(std::move(pair));
  }
  return out;
}

json config_echo(const cli::RunConfig& config) {
  json echo;
  echo["problem"] = config.problem.name;
  echo["ansatz_layers"] = config.problem.ansatz_layers;
  echo["mu_list"] = config.problem.mu_list;
  echo["schedules"] = json::array();
  for (const auto& s : config.problem.levels) {
    json js;
    js["d_tau"] = s.d_tau;
    js["tau_max"] = s.tau_max;
    js["seed"] = s.seed;
    if (s.initial_theta) js["initial_theta"] = *s.initial_theta;
    echo["schedules"].push_back(std::move(js));
  }
  echo["shots"] = config.spectrum.shots;
  return echo;
}

int cmd_solve(const std::string& source, int levels_flag,
              std::optional<std::uint64_t> seed, std::uint64_t shots,
              const std::string& out_dir_flag) {
  cli::RunConfig config = cli::load_run_config(source);
  if (levels_flag > 0) {
    while (static_cast<int>(config.problem.levels.size()) < levels_flag) {
      LevelSchedule s = config.problem.levels.back();
      s.initial_theta.reset();
      s.seed += 1;
      config.problem.levels.push_back(s);
    }
    config.spectrum.levels = levels_flag;
  }
  if (seed) config.spectrum.seed_override = *seed;
  if (shots > 0) config.spectrum.shots = shots;
  if (!out_dir_flag.empty()) config.out_dir = out_dir_flag;

  const std::vector<EvolutionTrace> traces =
      run_spectrum(config.problem, config.spectrum);
  const EigenpairSet eig = solve_pencil(dense_pencil(config.problem));

  fs::create_directories(config.out_dir);
  for (std::size_t k = 0; k < traces.size(); ++k) {
    std::ofstream csv(config.out_dir /
                      ("level" + std::to_string(k) + "_trace.csv"));
    write_trace_csv(csv, traces[k]);
  }
  {
    std::ofstream oracle_file(config.out_dir / "oracle.json");
    oracle_file << eigenpairs_to_json(eig).dump(2) << '\n';
  }

  json summary;
  summary["problem"] = config.problem.name;
  summary["levels"] = json::array();
  std::cout << "level   method        exact         converged  steps\n";
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& t = traces[k];
    json level;
    level["final_lambda"] = t.final_f;
    level["converged"] = t.converged;
    level["steps"] = t.steps;
    level["seed"] = t.seed;
    level["residual"] = t.rows.back().residual;
    summary["levels"].push_back(std::move(level));
    const bool have_exact = k < eig.pairs.size();
    std::cout << "  " << k << "     ";
    std::cout.precision(6);
    std::cout << std::fixed << t.final_f << "      ";
    if (have_exact) {
      std::cout << std::fixed << eig.pairs[k].lambda;
    } else {
      std::cout << "   --   ";
    }
    std::cout << "      " << (t.converged ? "yes" : "no ") << "      "
              << t.steps << "\n";
    std::cout.unsetf(std::ios_base::floatfield);
  }
  summary["config"] = config_echo(config);
  summary["oracle_lambdas"] = json::array();
  for (const auto& p : eig.pairs) summary["oracle_lambdas"].push_back(p.lambda);
  {
    std::ofstream summary_file(config.out_dir / "summary.json");
    summary_file << summary.dump(2) << '\n';
  }
  std::cout << "artifacts written to " << config.out_dir.string() << "\n";
  return 0;
}

int cmd_oracle(const std::string& source) {
  const cli::RunConfig config = cli::load_run_config(source);
  const EigenpairSet eig = solve_pencil(dense_pencil(config.problem));
  std::cout << eigenpairs_to_json(eig).dump(2) << '\n';
  return 0;
}

int cmd_decompose(const std::string& matrix_file, double drop_tol) {
  std::ifstream in(matrix_file);
  if (!in) {
    throw ConfigError("cannot open matrix file '" + matrix_file + "'");
  }
  Eigen::Index n = 0;
  if (!(in >> n) || n <= 0) {
    throw ConfigError("matrix file must start with the dimension");
  }
  DenseMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex value;
      if (in >> value) {  // accepts both `1.5` and `(re,im)`
        h(i, j) = value;
      } else {
        throw ConfigError("matrix file ended before " + std::to_string(n * n) +
                          " entries were read");
      }
    }
  }
  std::cout << to_text(decompose(h, drop_tol));
  return 0;
}

int cmd_hydrogen(double x_min, double x_max, double x_step,
                 std::vector<double> alphas, double field, double z, int n_max,
                 const std::string& solver, double probe_field,
                 std::optional<std::uint64_t> seed,
                 const std::string& out_dir_flag) {
  if (alphas.size() != 2) {
    throw ConfigError("--alphas needs exactly two values");
  }
  STOConfig cfg;
  cfg.field = field;
  cfg.z = z;
  cfg.n_max = n_max;
  SweepOptions opts;
  opts.alphas = {alphas[0], alphas[1]};
  opts.oracle_probe_field = probe_field;
  if (solver == "oracle") {
    opts.solver = HydrogenSolver::oracle;
  } else if (solver == "evolver") {
    opts.solver = HydrogenSolver::evolver;
  } else {
    throw ConfigError("--solver must be 'oracle' or 'evolver'");
  }
  if (seed) opts.seed = *seed;

  std::vector<double> grid;
  for (double x = x_min; x <= x_max + 1e-12; x += x_step) grid.push_back(x);
  const SweepResult sweep = sweep_x(grid, cfg, opts);

  const fs::path out_dir = out_dir_flag.empty() ? "qpencil_out" : out_dir_flag;
  fs::create_directories(out_dir);
  {
    std::ofstream csv(out_dir / "hydrogen_sweep.csv");
    csv << "x,g1,g2,P\n";
    csv.precision(12);
    for (const auto& p : sweep.points) {
      if (!p.ok) continue;
      csv << p.x << ',' << p.fit.g1 << ',' << p.fit.g2 << ','
          << p.fit.polarizability << '\n';
    }
  }
  json summary;
  summary["argmax_x"] = sweep.argmax_x;
  summary["max_polarizability"] = sweep.max_polarizability;
  summary["solver"] = solver;
  summary["field"] = field;
  summary["points"] = json::array();
  for (const auto& p : sweep.points) {
    json pt;
    pt["x"] = p.x;
    pt["ok"] = p.ok;
    if (p.ok) {
      pt["g1"] = p.fit.g1;
      pt["g2"] = p.fit.g2;
      pt["P"] = p.fit.polarizability;
      for (const auto& [alpha, lambda] : p.lambda1) {
        pt["lambda1"].push_back({{"alpha", alpha}, {"lambda", lambda}});
      }
    } else {
      pt["error"] = p.error;
    }
    summary["points"].push_back(std::move(pt));
  }
  {
    std::ofstream f(out_dir / "hydrogen_summary.json");
    f << summary.dump(2) << '\n';
  }

  std::cout << "  x        g1          g2          P\n";
  for (const auto& p : sweep.points) {
    if (!p.ok) {
      std::printf("%5.2f   failed: %s\n", p.x, p.error.c_str());
      continue;
    }
    std::printf("%5.2f   %9.6f   %9.6f   %9.6f\n", p.x, p.fit.g1, p.fit.g2,
                p.fit.polarizability);
  }
  std::printf("argmax x = %.2f with P = %.4f (perturbative reference %.1f)\n",
              sweep.argmax_x, sweep.max_polarizability, 4.5);
  std::cout << "artifacts written to " << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Generalized eigenvalue pencils via variational imaginary-time "
      "evolution"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::optional<std::uint64_t> seed;
  std::uint64_t shots = 0;
  std::string out_dir;
  app.add_option("--seed", seed, "override run seeds");
  app.add_option("--shots", shots,
                 "sample expectation circuits with this many shots");
  app.add_option("--out-dir", out_dir, "artifact output directory");

  auto* solve = app.add_subcommand(
      "solve", "run imaginary-time evolution for a problem or config file");
  std::string solve_source;
  int levels = -1;
  solve->add_option("problem", solve_source,
                    "built-in name, preset name, or config JSON path")
      ->required();
  solve->add_option("--levels", levels, "number of spectral levels to run");

  auto* oracle = app.add_subcommand(
      "oracle", "print the classical dense solution of a problem as JSON");
  std::string oracle_source;
  oracle->add_option("problem", oracle_source, "problem name or config path")
      ->required();

  auto* decompose_cmd = app.add_subcommand(
      "decompose", "print the Pauli decomposition of a dense matrix file");
  std::string matrix_file;
  double drop_tol = 1e-12;
  decompose_cmd->add_option("matrix", matrix_file, "text matrix file")
      ->required();
  decompose_cmd->add_option("--drop-tol", drop_tol,
                            "coefficient pruning threshold");

  auto* hydrogen = app.add_subcommand(
      "hydrogen", "polarizability sweep over the STO scale parameter x");
  double x_min = 0.5, x_max = 1.2, x_step = 0.1;
  std::vector<double> alphas = {-1.0, -2.0};
  double field = 0.01, z = 1.0, probe_field = 1e-3;
  int n_max = 2;
  std::string solver = "oracle";
  hydrogen->add_option("--x-min", x_min, "grid start");
  hydrogen->add_option("--x-max", x_max, "grid end (inclusive)");
  hydrogen->add_option("--x-step", x_step, "grid spacing");
  hydrogen->add_option("--alphas", alphas, "two energy parameters")
      ->expected(2);
  hydrogen->add_option("--field", field, "electric field strength");
  hydrogen->add_option("--Z", z, "atomic number");
  hydrogen->add_option("--n-max", n_max, "principal quantum number cutoff");
  hydrogen->add_option("--solver", solver, "oracle | evolver");
  hydrogen->add_option("--probe-field", probe_field,
                       "field used by the oracle when fitting g1, g2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;  // --help exits cleanly
  }

  try {
    if (*solve) {
      return cmd_solve(solve_source, levels, seed, shots, out_dir);
    }
    if (*oracle) {
      return cmd_oracle(oracle_source);
    }
    if (*decompose_cmd) {
      return cmd_decompose(matrix_file, drop_tol);
    }
    if (*hydrogen) {
      return cmd_hydrogen(x_min, x_max, x_step, alphas, field, z, n_max,
                          solver, probe_field, seed, out_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
