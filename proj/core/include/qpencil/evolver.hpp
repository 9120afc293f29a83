#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "qpencil/ansatz.hpp"
#include "qpencil/circuit.hpp"
#include "qpencil/pauli.hpp"
#include "qpencil/statevector.hpp"

namespace qpencil {

struct EvolutionConfig {
  double d_tau = 0.01;
  double tau_max = 10.0;
  double gamma_regularization = 1e-6;  // Tikhonov shift on Gamma
  std::uint64_t shots = 0;             // 0 = exact mode
  double convergence_tol = 1e-7;       // on |F(tau) - F(tau - d_tau)|
  int convergence_window = 10;         // consecutive steps below tol
  double b_norm_floor = 1e-8;
  std::uint64_t seed = 0;              // shot sampling and random theta0
};

/// One converged state folded into A as mu * B|g><g|B. `g` is stored
/// B-normalized; `bg` caches B|g>.
struct DeflationTerm {
  double mu = 0.0;
  StateVector g;
  StateVector bg;
};

/// Effective operator A' = A + sum_j mu_j B|g_j><g_j|B. The rank-one
/// shifts stay in dense rank-one form for expectation values; their Pauli
/// expansion is available for reporting and for the shot-mode circuits.
class DeflatedOperator {
 public:
  explicit DeflatedOperator(PauliSum base_a);

  const PauliSum& base() const { return base_a_; }
  const std::vector<DeflationTerm>& terms() const { return terms_; }
  int num_qubits() const { return base_a_.num_qubits(); }

  void add_term(DeflationTerm term);

  /// A'|psi>
  StateVector apply(const StateVector& psi) const;
  /// <psi|A'|psi>
  double expectation(const StateVector& psi) const;

  DenseMatrix dense() const;

  /// Pauli form of the full effective operator (base terms plus the
  /// decomposition of every rank-one shift).
  PauliSum pauli_expansion(double drop_tol = kDefaultDropTol) const;

 private:
  PauliSum base_a_;
  std::vector<DeflationTerm> terms_;
};

/// B-normalizes `g` and appends mu * B|g><g|B to the effective operator.
/// Throws CannotBNormalizeError when <g|B|g> is at or below the floor.
DeflatedOperator deflate(const DeflatedOperator& a_eff, const PauliSum& b,
                         const StateVector& g, double mu,
                         double b_norm_floor = 1e-8);

/// Pauli decomposition of B|g><g|B alone (g need not be normalized yet).
PauliSum deflation_pauli_terms(const PauliSum& b, const StateVector& g,
                               double b_norm_floor = 1e-8,
                               double drop_tol = kDefaultDropTol);

/// Generalized Rayleigh quotient F = <psi|A'|psi> / <psi|B|psi>. Throws
/// SingularBCollapseError when |<psi|B|psi>| falls below the floor.
double compute_F(const StateVector& psi, const DeflatedOperator& a_eff,
                 const PauliSum& b, double b_norm_floor = 1e-8);

/// Gamma_ij = Re[<d_i psi | d_j psi>] from direct derivative statevectors.
Eigen::MatrixXd compute_gamma(const Ansatz& ansatz,
                              std::span<const double> theta);

/// Same matrix assembled entry by entry from the ancilla overlap circuits,
/// optionally with shot noise. Exact mode agrees with compute_gamma to
/// 1e-10.
Eigen::MatrixXd compute_gamma_circuits(const Ansatz& ansatz,
                                       std::span<const double> theta,
                                       std::uint64_t shots = 0,
                                       ShotSampler* sampler = nullptr);

/// C_i = -Re[<d_i psi|(A' - F B)|psi>] from derivative statevectors.
Eigen::VectorXd compute_C(const Ansatz& ansatz, std::span<const double> theta,
                          const DeflatedOperator& a_eff, const PauliSum& b,
                          double f);

/// Circuit-assembled C using the Lambda/h decomposition of A' - F B (the
/// deflation shifts enter through their Pauli expansion).
Eigen::VectorXd compute_C_circuits(const Ansatz& ansatz,
                                   std::span<const double> theta,
                                   const DeflatedOperator& a_eff,
                                   const PauliSum& b, double f,
                                   std::uint64_t shots = 0,
                                   ShotSampler* sampler = nullptr);

/// theta' = theta + solve(Gamma + eps I, C) * d_tau. Throws
/// IllConditionedGammaError when the regularized solve still fails.
std::vector<double> euler_step(std::span<const double> theta,
                               const Eigen::MatrixXd& gamma,
                               const Eigen::VectorXd& c, double d_tau,
                               double epsilon);

/// ||(A' - F B)|psi>||_2 for a unit-normalized state.
double residual(const StateVector& psi, const DeflatedOperator& a_eff,
                const PauliSum& b, double f);

struct TraceRow {
  double tau = 0.0;
  std::vector<double> theta;
  double f = 0.0;
  double residual = 0.0;
};

struct EvolutionTrace {
  std::vector<TraceRow> rows;
  bool converged = false;
  int steps = 0;
  double final_f = 0.0;
  double final_b_norm = 0.0;
  StateVector final_state;                  // unit 2-norm
  std::optional<StateVector> final_state_b; // scaled so <psi|B|psi> = 1
  std::uint64_t seed = 0;
};

/// Runs the full imaginary-time loop: F, Gamma, C, Euler update, repeated
/// until tau_max or until |dF| stays below convergence_tol for
/// convergence_window consecutive steps. Exact mode evaluates everything
/// from statevectors; shot mode routes F, Gamma, and C through the sampled
/// test circuits.
EvolutionTrace run_evolution(const Ansatz& ansatz, const PauliSum& a,
                             const PauliSum& b,
                             const std::vector<DeflationTerm>& deflations,
                             const EvolutionConfig& cfg,
                             std::span<const double> theta0);

/// Uniform draws from [0, pi), the default when a run has no explicit
/// initial point.
std::vector<double> random_initial_theta(int num_params, std::uint64_t seed);

/// CSV with header tau,F,residual,theta_0..theta_{N-1}.
void write_trace_csv(std::ostream& os, const EvolutionTrace& trace);

}  // namespace qpencil
