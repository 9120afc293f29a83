#include "qpencil/hydrogen.hpp"

#include <cmath>

#include "qpencil/ansatz.hpp"
#include "qpencil/evolver.hpp"

namespace qpencil {

namespace {

void check_quantum_numbers(const QuantumNumbers& q) {
  if (q.n < 1 || q.l < 0 || q.l >= q.n || std::abs(q.m) > q.l) {
    throw ConfigError("invalid quantum numbers (n=" + std::to_string(q.n) +
                      ", l=" + std::to_string(q.l) +
                      ", m=" + std::to_string(q.m) + ")");
  }
}

void check_config(const STOConfig& cfg) {
  if (cfg.x <= 0 || cfg.alpha == 0 || cfg.n_max < 1) {
    throw ConfigError("STO config needs x > 0, alpha != 0, n_max >= 1");
  }
}

// Gamma(n + n' + shift) / sqrt(Gamma(2n'+1) Gamma(2n+1)) via log-gamma, so
// larger n_max cannot overflow.
double gamma_ratio(int n, int np, int shift) {
  return std::exp(std::lgamma(n + np + shift) -
                  0.5 * (std::lgamma(2.0 * np + 1.0) +
                         std::lgamma(2.0 * n + 1.0)));
}

}  // namespace

double sto_element_A(const STOConfig& cfg, const QuantumNumbers& bra,
                     const QuantumNumbers& ket) {
  check_config(cfg);
  check_quantum_numbers(bra);
  check_quantum_numbers(ket);
  const double xi = cfg.x * cfg.alpha;
  const int n = ket.n, l = ket.l, m = ket.m;
  const int np = bra.n, lp = bra.l, mp = bra.m;

  double value = 0.0;
  if (lp == l && mp == m) {
    value += 2.0 * xi;
  }
  if (mp == m) {
    double angular = 0.0;
    if (lp == l + 1) {
      angular = std::sqrt(static_cast<double>((l - m + 1) * (l + m + 1)) /
                          ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
    } else if (lp == l - 1) {
      angular = std::sqrt(static_cast<double>((l - m) * (l + m)) /
                          ((2.0 * l - 1.0) * (2.0 * l + 1.0)));
    }
    if (angular != 0.0) {
      value += (cfg.field / cfg.z) *
               ((n + np + 1.0) * (n + np) / (2.0 * xi)) * angular;
    }
  }
  if (value == 0.0) return 0.0;
  return gamma_ratio(n, np, 0) * value;
}

double sto_element_B(const STOConfig& cfg, const QuantumNumbers& bra,
                     const QuantumNumbers& ket) {
  check_config(cfg);
  check_quantum_numbers(bra);
  check_quantum_numbers(ket);
  if (bra.l != ket.l || bra.m != ket.m) return 0.0;
  const double xi = cfg.x * cfg.alpha;
  const int n = ket.n, l = ket.l;
  const int np = bra.n;
  const double bracket =
      xi * xi * (4.0 * l * (l + 1.0) + (n + np) - (n - np) * (n - np)) +
      cfg.alpha * cfg.alpha * (n + np) * (n + np - 1.0);
  return 0.5 * gamma_ratio(n, np, -1) * bracket;
}

STOPencil build_pencil(const STOConfig& cfg) {
  check_config(cfg);
  STOPencil pencil;
  for (int n = 1; n <= cfg.n_max; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int m = -l; m <= l; ++m) {
        pencil.basis.push_back(QuantumNumbers{n, l, m});
      }
    }
  }
  const Eigen::Index size = static_cast<Eigen::Index>(pencil.basis.size());
  Eigen::Index dim = 1;
  int qubits = 0;
  while (dim < size) {
    dim <<= 1;
    ++qubits;
  }
  if (dim > 1024) {
    throw InvalidDimensionError("padded STO pencil would exceed dimension "
                                "1024; lower n_max");
  }
  pencil.a_mat = DenseMatrix::Zero(size, size);
  pencil.b_mat = DenseMatrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      pencil.a_mat(i, j) = sto_element_A(cfg, pencil.basis[i], pencil.basis[j]);
      pencil.b_mat(i, j) = sto_element_B(cfg, pencil.basis[i], pencil.basis[j]);
    }
  }
  pencil.padded_a = DenseMatrix::Identity(dim, dim);
  pencil.padded_b = DenseMatrix::Identity(dim, dim);
  pencil.padded_a.topLeftCorner(size, size) = pencil.a_mat;
  pencil.padded_b.topLeftCorner(size, size) = pencil.b_mat;
  return pencil;
}

PolarizabilityFit fit_g(const std::pair<double, double>& pair1,
                        const std::pair<double, double>& pair2,
                        const STOConfig& cfg) {
  const auto row = [&cfg](double alpha) {
    return Eigen::RowVector2d(1.0 / alpha,
                              cfg.field * cfg.field /
                                  (cfg.z * cfg.z * std::pow(alpha, 5)));
  };
  Eigen::Matrix2d system;
  system.row(0) = row(pair1.first);
  system.row(1) = row(pair2.first);
  const double det = system.determinant();
  const double scale = system.cwiseAbs().maxCoeff();
  if (std::abs(det) < 1e-14 * scale * scale) {
    throw SingularFitError(
        "the two (alpha, lambda) equations are proportional; cannot "
        "separate g1 and g2");
  }
  const Eigen::Vector2d rhs(pair1.second, pair2.second);
  const Eigen::Vector2d g = system.partialPivLu().solve(rhs);
  PolarizabilityFit fit;
  fit.x = cfg.x;
  fit.g1 = g(0);
  fit.g2 = g(1);
  fit.polarizability = 2.0 * fit.g2 / (fit.g1 * fit.g1 * fit.g1);
  return fit;
}

double hydrogen_lambda1_oracle(const STOConfig& cfg) {
  const STOPencil pencil = build_pencil(cfg);
  const EigenpairSet eig =
      solve_pencil(Pencil{pencil.padded_a, pencil.padded_b});
  if (eig.pairs.empty()) {
    throw DegeneratePencilError("hydrogen pencil produced no eigenvalues");
  }
  return eig.pairs.front().lambda;
}

double hydrogen_lambda1_evolver(const STOConfig& cfg,
                                const SweepOptions& opts) {
  const STOPencil pencil = build_pencil(cfg);
  const PauliSum a = decompose(pencil.padded_a);
  const PauliSum b = decompose(pencil.padded_b);
  const Ansatz ansatz =
      Ansatz::hardware_efficient(a.num_qubits(), opts.ansatz_layers);
  EvolutionConfig ecfg;
  ecfg.d_tau = opts.d_tau;
  ecfg.tau_max = opts.tau_max;
  ecfg.convergence_tol = opts.convergence_tol;
  ecfg.seed = opts.seed;
  const auto theta0 = random_initial_theta(ansatz.num_params(), opts.seed);
  const EvolutionTrace trace =
      run_evolution(ansatz, a, b, {}, ecfg, theta0);
  return trace.final_f;
}

SweepResult sweep_x(const std::vector<double>& x_grid,
                    const STOConfig& cfg_template, const SweepOptions& opts) {
  if (x_grid.empty()) {
    throw ConfigError("sweep_x needs a nonempty grid");
  }
  SweepResult result;
  bool have_best = false;
  for (double x : x_grid) {
    SweepPoint point;
    point.x = x;
    try {
      STOConfig cfg = cfg_template;
      cfg.x = x;
      if (opts.solver == HydrogenSolver::oracle) {
        cfg.field = opts.oracle_probe_field;
      }
      const auto solve = [&](double alpha) {
        STOConfig at = cfg;
        at.alpha = alpha;
        return opts.solver == HydrogenSolver::oracle
                   ? hydrogen_lambda1_oracle(at)
                   : hydrogen_lambda1_evolver(at, opts);
      };
      const std::pair<double, double> p1{opts.alphas.first,
                                         solve(opts.alphas.first)};
      const std::pair<double, double> p2{opts.alphas.second,
                                         solve(opts.alphas.second)};
      point.lambda1 = {p1, p2};
      point.fit = fit_g(p1, p2, cfg);
      point.ok = true;
    } catch (const Error& e) {
      point.ok = false;
      point.error = e.what();
    }
    if (point.ok &&
        (!have_best || point.fit.polarizability > result.max_polarizability)) {
      result.argmax_x = point.x;
      result.max_polarizability = point.fit.polarizability;
      have_best = true;
    }
    result.points.push_back(std::move(point));
  }
  if (!have_best) {
    throw DegeneratePencilError("every sweep point failed");
  }
  return result;
}

std::pair<double, double> perturbative_reference(double alpha, double z,
                                                 double field) {
  const double lambda1 = 1.0 / alpha + 9.0 * field * field /
                                           (4.0 * z * z * std::pow(alpha, 5));
  return {lambda1, 4.5};
}

}  // namespace qpencil
