#include "qpencil/circuit.hpp"

#include <cmath>

namespace qpencil {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::Matrix2cd rotation_matrix(char axis, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Eigen::Matrix2cd u;
  switch (axis) {
    case 'X':
      u << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
      break;
    case 'Y':
      u << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
      break;
    case 'Z':
      u << Complex(c, -s), 0, 0, Complex(c, s);
      break;
    default:
      throw ConfigError("invalid rotation axis '" + std::string(1, axis) +
                        "'");
  }
  return u;
}

// Applies a 2x2 unitary to `target`, restricted to the control subspace
// when control_qubit >= 0.
void apply_1q(StateVector& state, const Eigen::Matrix2cd& u, int target,
              int control_qubit, bool control_value) {
  const int m = state.num_qubits();
  if (target < 0 || target >= m) {
    throw GateIndexError("gate target " + std::to_string(target) +
                         " out of range for " + std::to_string(m) + " qubits");
  }
  auto& a = state.amps();
  const Eigen::Index mask = Eigen::Index{1} << (m - 1 - target);
  Eigen::Index cmask = 0;
  if (control_qubit >= 0) {
    if (control_qubit >= m || control_qubit == target) {
      throw GateIndexError("invalid control qubit " +
                           std::to_string(control_qubit));
    }
    cmask = Eigen::Index{1} << (m - 1 - control_qubit);
  }
  const Eigen::Index dim = a.size();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & mask) continue;
    if (cmask && ((i & cmask) != 0) != control_value) continue;
    const Complex lo = a(i);
    const Complex hi = a(i | mask);
    a(i) = u(0, 0) * lo + u(0, 1) * hi;
    a(i | mask) = u(1, 0) * lo + u(1, 1) * hi;
  }
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate,
                std::span<const double> params, int control_qubit,
                bool control_value) {
  switch (gate.kind) {
    case Gate::Kind::rotation: {
      if (gate.param_index < 0 ||
          gate.param_index >= static_cast<int>(params.size())) {
        throw GateIndexError("rotation parameter index " +
                             std::to_string(gate.param_index) +
                             " out of range for " +
                             std::to_string(params.size()) + " parameters");
      }
      apply_1q(state, rotation_matrix(gate.label, params[gate.param_index]),
               gate.target, control_qubit, control_value);
      return;
    }
    case Gate::Kind::cnot: {
      const int m = state.num_qubits();
      if (gate.control < 0 || gate.control >= m || gate.target < 0 ||
          gate.target >= m || gate.control == gate.target) {
        throw GateIndexError("invalid cnot wires (" +
                             std::to_string(gate.control) + ", " +
                             std::to_string(gate.target) + ")");
      }
      auto& a = state.amps();
      const Eigen::Index cmask = Eigen::Index{1} << (m - 1 - gate.control);
      const Eigen::Index tmask = Eigen::Index{1} << (m - 1 - gate.target);
      Eigen::Index extra = 0;
      if (control_qubit >= 0) {
        extra = Eigen::Index{1} << (m - 1 - control_qubit);
      }
      const Eigen::Index dim = a.size();
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & cmask) || (i & tmask)) continue;
        if (extra && ((i & extra) != 0) != control_value) continue;
        std::swap(a(i), a(i | tmask));
      }
      return;
    }
    case Gate::Kind::hadamard: {
      Eigen::Matrix2cd h;
      h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
      apply_1q(state, h, gate.target, control_qubit, control_value);
      return;
    }
    case Gate::Kind::pauli:
      apply_1q(state, pauli_matrix(gate.label), gate.target, control_qubit,
               control_value);
      return;
    case Gate::Kind::sdg: {
      Eigen::Matrix2cd s;
      s << 1, 0, 0, Complex(0, -1);
      apply_1q(state, s, gate.target, control_qubit, control_value);
      return;
    }
  }
  throw ConfigError("unknown gate kind");
}

StateVector apply_circuit(const StateVector& state,
                          std::span<const Gate> gates,
                          std::span<const double> params) {
  StateVector out = state;
  for (const auto& g : gates) {
    apply_gate(out, g, params);
  }
  return out;
}

StateVector run_circuit(int num_qubits, std::span<const Gate> gates,
                        std::span<const double> params) {
  return apply_circuit(StateVector::zero_state(num_qubits), gates, params);
}

double ShotSampler::sample_p0(double p0, std::uint64_t shots) {
  std::bernoulli_distribution draw(std::clamp(p0, 0.0, 1.0));
  std::uint64_t zeros = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    if (draw(rng_)) ++zeros;
  }
  return static_cast<double>(zeros) / static_cast<double>(shots);
}

MeasurementRecord make_record(double exact_p0, std::uint64_t shots,
                              ShotSampler* sampler) {
  MeasurementRecord rec;
  rec.shots = shots;
  if (shots == 0) {
    rec.p0 = exact_p0;
  } else {
    if (sampler == nullptr) {
      throw ConfigError("shot mode requires a sampler");
    }
    rec.p0 = sampler->sample_p0(exact_p0, shots);
  }
  rec.p1 = 1.0 - rec.p0;
  rec.estimate = rec.p0 - rec.p1;
  return rec;
}

namespace {

// Probability that the appended ancilla (qubit index m, least significant
// bit) reads 0.
double ancilla_p0(const StateVector& state) {
  const auto& a = state.amps();
  double p0 = 0.0;
  for (Eigen::Index i = 0; i < a.size(); i += 2) {
    p0 += std::norm(a(i));
  }
  return p0;
}

void apply_controlled_word(StateVector& state, std::string_view word,
                           int ancilla, bool value) {
  for (int q = 0; q < static_cast<int>(word.size()); ++q) {
    if (word[q] == 'I') continue;
    apply_gate(state, Gate::pauli(word[q], q), {}, ancilla, value);
  }
}

}  // namespace

MeasurementRecord hadamard_test_expectation(std::span<const Gate> psi_circuit,
                                            std::span<const double> params,
                                            int num_qubits, const PauliTerm& u,
                                            std::uint64_t shots,
                                            ShotSampler* sampler) {
  if (u.num_qubits() != num_qubits) {
    throw InvalidDimensionError("observable word length != register size");
  }
  const int anc = num_qubits;
  StateVector state = StateVector::zero_state(num_qubits + 1);
  // Prepare |psi> on the working register (gates never touch the ancilla).
  for (const auto& g : psi_circuit) {
    apply_gate(state, g, params);
  }
  apply_gate(state, Gate::hadamard(anc), {});
  apply_controlled_word(state, u.word, anc, true);
  apply_gate(state, Gate::hadamard(anc), {});
  return make_record(ancilla_p0(state), shots, sampler);
}

MeasurementRecord overlap_test(std::span<const Gate> left_circuit,
                               std::span<const Gate> right_circuit,
                               std::span<const double> params, int num_qubits,
                               double phase,
                               const std::optional<PauliTerm>& observable,
                               std::uint64_t shots, ShotSampler* sampler) {
  if (observable && observable->num_qubits() != num_qubits) {
    throw InvalidDimensionError("observable word length != register size");
  }
  const int anc = num_qubits;
  StateVector state = StateVector::zero_state(num_qubits + 1);
  apply_gate(state, Gate::hadamard(anc), {});
  // Phase kickback e^{i phase} on the |1> ancilla branch.
  if (phase != 0.0) {
    auto& a = state.amps();
    const Complex ph = std::polar(1.0, phase);
    for (Eigen::Index i = 1; i < a.size(); i += 2) {
      a(i) *= ph;
    }
  }
  for (const auto& g : right_circuit) {
    apply_gate(state, g, params, anc, true);
  }
  if (observable) {
    apply_controlled_word(state, observable->word, anc, true);
  }
  for (const auto& g : left_circuit) {
    apply_gate(state, g, params, anc, false);
  }
  apply_gate(state, Gate::hadamard(anc), {});
  return make_record(ancilla_p0(state), shots, sampler);
}

}  // namespace qpencil
