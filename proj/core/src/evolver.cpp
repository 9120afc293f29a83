#include "qpencil/evolver.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qpencil {

DeflatedOperator::DeflatedOperator(PauliSum base_a)
    : base_a_(std::move(base_a)) {}

void DeflatedOperator::add_term(DeflationTerm term) {
  if (term.g.num_qubits() != base_a_.num_qubits()) {
    throw InvalidDimensionError("deflation state register size mismatch");
  }
  terms_.push_back(std::move(term));
}

StateVector DeflatedOperator::apply(const StateVector& psi) const {
  StateVector out = apply_operator(psi, base_a_);
  for (const auto& t : terms_) {
    const Complex w = t.bg.inner(psi);  // <g|B|psi>
    out.amps() += t.mu * w * t.bg.amps();
  }
  return out;
}

double DeflatedOperator::expectation(const StateVector& psi) const {
  double value = qpencil::expectation(psi, base_a_);
  for (const auto& t : terms_) {
    value += t.mu * std::norm(t.bg.inner(psi));
  }
  return value;
}

DenseMatrix DeflatedOperator::dense() const {
  DenseMatrix out = reconstruct(base_a_);
  for (const auto& t : terms_) {
    out += t.mu * (t.bg.amps() * t.bg.amps().adjoint());
  }
  return out;
}

PauliSum DeflatedOperator::pauli_expansion(double drop_tol) const {
  if (terms_.empty()) return base_a_;
  return decompose(dense(), drop_tol);
}

DeflatedOperator deflate(const DeflatedOperator& a_eff, const PauliSum& b,
                         const StateVector& g, double mu,
                         double b_norm_floor) {
  if (b.num_qubits() != g.num_qubits()) {
    throw InvalidDimensionError("deflate: B and g register sizes differ");
  }
  const double gb = expectation(g, b);
  if (gb <= b_norm_floor) {
    throw CannotBNormalizeError("deflate: <g|B|g> = " + std::to_string(gb) +
                                " is not positive; state cannot be "
                                "B-normalized");
  }
  DeflationTerm term;
  term.mu = mu;
  term.g = g;
  term.g.amps() /= std::sqrt(gb);
  term.bg = apply_operator(term.g, b);
  DeflatedOperator out = a_eff;
  out.add_term(std::move(term));
  return out;
}

PauliSum deflation_pauli_terms(const PauliSum& b, const StateVector& g,
                               double b_norm_floor, double drop_tol) {
  const double gb = expectation(g, b);
  if (gb <= b_norm_floor) {
    throw CannotBNormalizeError("deflation state cannot be B-normalized");
  }
  StateVector gn = g;
  gn.amps() /= std::sqrt(gb);
  const StateVector bg = apply_operator(gn, b);
  const DenseMatrix rank_one = bg.amps() * bg.amps().adjoint();
  return decompose(rank_one, drop_tol);
}

double compute_F(const StateVector& psi, const DeflatedOperator& a_eff,
                 const PauliSum& b, double b_norm_floor) {
  const double nb = expectation(psi, b);
  if (std::abs(nb) < b_norm_floor) {
    throw SingularBCollapseError(
        "<psi|B|psi> = " + std::to_string(nb) +
        " fell below the floor; the state collapsed into B's null space");
  }
  return a_eff.expectation(psi) / nb;
}

Eigen::MatrixXd compute_gamma(const Ansatz& ansatz,
                              std::span<const double> theta) {
  const auto derivs = ansatz.parameter_derivatives(theta);
  const int n = ansatz.num_params();
  Eigen::MatrixXd gamma(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = derivs[i].inner(derivs[j]).real();
      gamma(i, j) = v;
      gamma(j, i) = v;
    }
  }
  return gamma;
}

Eigen::MatrixXd compute_gamma_circuits(const Ansatz& ansatz,
                                       std::span<const double> theta,
                                       std::uint64_t shots,
                                       ShotSampler* sampler) {
  const int n = ansatz.num_params();
  const int m = ansatz.num_qubits();
  std::vector<std::vector<DerivativeCircuit>> tilde;
  tilde.reserve(n);
  for (int i = 0; i < n; ++i) tilde.push_back(ansatz.derivative_circuits(i));

  Eigen::MatrixXd gamma(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double value = 0.0;
      for (const auto& dk : tilde[i]) {
        for (const auto& dl : tilde[j]) {
          const Complex w = std::conj(dk.factor) * dl.factor;
          if (std::abs(w) == 0.0) continue;
          const auto rec = overlap_test(dk.gates, dl.gates, theta, m,
                                        std::arg(w), {}, shots, sampler);
          value += std::abs(w) * rec.estimate;
        }
      }
      gamma(i, j) = value;
      gamma(j, i) = value;
    }
  }
  return gamma;
}

Eigen::VectorXd compute_C(const Ansatz& ansatz, std::span<const double> theta,
                          const DeflatedOperator& a_eff, const PauliSum& b,
                          double f) {
  const StateVector psi = ansatz.prepare(theta);
  StateVector w = a_eff.apply(psi);
  const StateVector bpsi = apply_operator(psi, b);
  w.amps() -= f * bpsi.amps();
  const auto derivs = ansatz.parameter_derivatives(theta);
  Eigen::VectorXd c(ansatz.num_params());
  for (int i = 0; i < ansatz.num_params(); ++i) {
    c(i) = -derivs[i].inner(w).real();
  }
  return c;
}

Eigen::VectorXd compute_C_circuits(const Ansatz& ansatz,
                                   std::span<const double> theta,
                                   const DeflatedOperator& a_eff,
                                   const PauliSum& b, double f,
                                   std::uint64_t shots,
                                   ShotSampler* sampler) {
  const int n = ansatz.num_params();
  const int m = ansatz.num_qubits();
  // Lambda_alpha h_alpha for A' - F B, deflation shifts expanded.
  const PauliSum lambda_h = combine(a_eff.pauli_expansion(), b, f);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& dk : ansatz.derivative_circuits(i)) {
      for (const auto& term : lambda_h.terms()) {
        const Complex w = std::conj(dk.factor) * term.coeff;
        if (std::abs(w) == 0.0) continue;
        const auto rec =
            overlap_test(dk.gates, ansatz.gates(), theta, m, std::arg(w),
                         PauliTerm{1.0, term.word}, shots, sampler);
        c(i) -= std::abs(w) * rec.estimate;
      }
    }
  }
  return c;
}

std::vector<double> euler_step(std::span<const double> theta,
                               const Eigen::MatrixXd& gamma,
                               const Eigen::VectorXd& c, double d_tau,
                               double epsilon) {
  const int n = static_cast<int>(theta.size());
  if (gamma.rows() != n || gamma.cols() != n || c.size() != n) {
    throw InvalidDimensionError("euler_step: shape mismatch");
  }
  Eigen::MatrixXd reg = gamma + epsilon * Eigen::MatrixXd::Identity(n, n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
  Eigen::VectorXd dot = ldlt.solve(c);
  // LDLT quietly zeroes components on tiny pivots, so confirm the solve
  // actually reproduces C.
  const double solve_residual = (reg * dot - c).norm();
  if (ldlt.info() != Eigen::Success || !dot.allFinite() ||
      solve_residual > 1e-8 * (c.norm() + reg.norm() * dot.norm())) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(reg);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(n - 1);
    throw IllConditionedGammaError(
        "regularized Gamma solve failed; condition estimate " +
        std::to_string(smin > 0 ? smax / smin : INFINITY));
  }
  std::vector<double> out(theta.begin(), theta.end());
  for (int i = 0; i < n; ++i) out[i] += dot(i) * d_tau;
  return out;
}

double residual(const StateVector& psi, const DeflatedOperator& a_eff,
                const PauliSum& b, double f) {
  StateVector w = a_eff.apply(psi);
  const StateVector bpsi = apply_operator(psi, b);
  w.amps() -= f * bpsi.amps();
  return w.norm();
}

namespace {

double shot_mode_F(const Ansatz& ansatz, std::span<const double> theta,
                   const PauliSum& a_expanded, const PauliSum& b,
                   double b_norm_floor, std::uint64_t shots,
                   ShotSampler* sampler) {
  const int m = ansatz.num_qubits();
  double num = 0.0;
  for (const auto& t : a_expanded.terms()) {
    const auto rec = hadamard_test_expectation(
        ansatz.gates(), theta, m, PauliTerm{1.0, t.word}, shots, sampler);
    num += t.coeff * rec.estimate;
  }
  double den = 0.0;
  for (const auto& t : b.terms()) {
    const auto rec = hadamard_test_expectation(
        ansatz.gates(), theta, m, PauliTerm{1.0, t.word}, shots, sampler);
    den += t.coeff * rec.estimate;
  }
  if (std::abs(den) < b_norm_floor) {
    throw SingularBCollapseError("sampled <psi|B|psi> fell below the floor");
  }
  return num / den;
}

}  // namespace

EvolutionTrace run_evolution(const Ansatz& ansatz, const PauliSum& a,
                             const PauliSum& b,
                             const std::vector<DeflationTerm>& deflations,
                             const EvolutionConfig& cfg,
                             std::span<const double> theta0) {
  if (a.num_qubits() != ansatz.num_qubits() ||
      b.num_qubits() != ansatz.num_qubits()) {
    throw InvalidDimensionError(
        "operators and ansatz act on different register sizes");
  }
  if (cfg.d_tau <= 0 || cfg.tau_max < cfg.d_tau) {
    throw ConfigError("need d_tau > 0 and tau_max >= d_tau");
  }
  DeflatedOperator a_eff(a);
  for (const auto& t : deflations) a_eff.add_term(t);

  const bool shot_mode = cfg.shots > 0;
  ShotSampler sampler(cfg.seed);
  // The Lambda/h expansion of the deflated operator is fixed along a run;
  // build it once for the shot-mode circuits.
  PauliSum a_expanded = shot_mode ? a_eff.pauli_expansion() : a;

  std::vector<double> theta(theta0.begin(), theta0.end());
  const int steps = static_cast<int>(std::llround(cfg.tau_max / cfg.d_tau));

  EvolutionTrace trace;
  trace.seed = cfg.seed;
  trace.final_state = StateVector::zero_state(ansatz.num_qubits());
  trace.rows.reserve(steps);

  double f_prev = 0.0;
  bool have_prev = false;
  int hold = 0;

  for (int step = 0; step < steps; ++step) {
    const double tau = step * cfg.d_tau;
    const StateVector psi = ansatz.prepare(theta);
    const double f =
        shot_mode ? shot_mode_F(ansatz, theta, a_expanded, b,
                                cfg.b_norm_floor, cfg.shots, &sampler)
                  : compute_F(psi, a_eff, b, cfg.b_norm_floor);
    if (!std::isfinite(f)) {
      throw DivergenceError("F became non-finite at tau = " +
                            std::to_string(tau));
    }
    const double res = residual(psi, a_eff, b, f);
    trace.rows.push_back(TraceRow{tau, theta, f, res});
    trace.steps = step + 1;

    if (have_prev && std::abs(f - f_prev) < cfg.convergence_tol) {
      if (++hold >= cfg.convergence_window) {
        trace.converged = true;
        break;
      }
    } else {
      hold = 0;
    }
    f_prev = f;
    have_prev = true;

    const Eigen::MatrixXd gamma =
        shot_mode ? compute_gamma_circuits(ansatz, theta, cfg.shots, &sampler)
                  : compute_gamma(ansatz, theta);
    const Eigen::VectorXd c =
        shot_mode ? compute_C_circuits(ansatz, theta, a_eff, b, f, cfg.shots,
                                       &sampler)
                  : compute_C(ansatz, theta, a_eff, b, f);
    theta = euler_step(theta, gamma, c, cfg.d_tau, cfg.gamma_regularization);
  }

  const auto& last = trace.rows.back();
  trace.final_state = ansatz.prepare(last.theta);
  trace.final_f = last.f;
  trace.final_b_norm = expectation(trace.final_state, b);
  if (trace.final_b_norm > cfg.b_norm_floor) {
    StateVector bnorm = trace.final_state;
    bnorm.amps() /= std::sqrt(trace.final_b_norm);
    trace.final_state_b = std::move(bnorm);
  }
  return trace;
}

std::vector<double> random_initial_theta(int num_params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, std::numbers::pi);
  std::vector<double> theta(num_params);
  for (auto& t : theta) t = dist(rng);
  return theta;
}

void write_trace_csv(std::ostream& os, const EvolutionTrace& trace) {
  const std::size_t n = trace.rows.empty() ? 0 : trace.rows[0].theta.size();
  os << "tau,F,residual";
  for (std::size_t i = 0; i < n; ++i) os << ",theta_" << i;
  os << '\n';
  os.precision(12);
  for (const auto& row : trace.rows) {
    os << row.tau << ',' << row.f << ',' << row.residual;
    for (double t : row.theta) os << ',' << t;
    os << '\n';
  }
}

}  // namespace qpencil
