#include "qpencil/statevector.hpp"

namespace qpencil {

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits),
      amps_(Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits)) {
  if (num_qubits < 1 || num_qubits > 24) {
    throw InvalidDimensionError("unsupported qubit count " +
                                std::to_string(num_qubits));
  }
}

StateVector::StateVector(int num_qubits, Eigen::VectorXcd amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  if (amps_.size() != (Eigen::Index{1} << num_qubits)) {
    throw InvalidDimensionError("amplitude vector length " +
                                std::to_string(amps_.size()) +
                                " does not match qubit count " +
                                std::to_string(num_qubits));
  }
}

StateVector StateVector::zero_state(int num_qubits) {
  StateVector s(num_qubits);
  s.amps_(0) = 1.0;
  return s;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_) {
    throw InvalidDimensionError("inner product between different registers");
  }
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left side
}

void apply_pauli(StateVector& state, char label, int target) {
  const int m = state.num_qubits();
  if (target < 0 || target >= m) {
    throw GateIndexError("pauli target " + std::to_string(target) +
                         " out of range for " + std::to_string(m) + " qubits");
  }
  if (label == 'I') return;
  auto& a = state.amps();
  const Eigen::Index mask = Eigen::Index{1} << (m - 1 - target);
  const Eigen::Index dim = a.size();
  switch (label) {
    case 'X':
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & mask)) std::swap(a(i), a(i | mask));
      }
      break;
    case 'Y':
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (!(i & mask)) {
          const Complex lo = a(i);
          const Complex hi = a(i | mask);
          a(i) = Complex(0, -1) * hi;
          a(i | mask) = Complex(0, 1) * lo;
        }
      }
      break;
    case 'Z':
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & mask) a(i) = -a(i);
      }
      break;
    default:
      throw ConfigError("invalid Pauli label '" + std::string(1, label) + "'");
  }
}

void apply_pauli_word(StateVector& state, std::string_view word) {
  if (static_cast<int>(word.size()) != state.num_qubits()) {
    throw InvalidDimensionError("word length does not match register size");
  }
  for (int q = 0; q < state.num_qubits(); ++q) {
    apply_pauli(state, word[q], q);
  }
}

StateVector apply_operator(const StateVector& state, const PauliSum& op) {
  if (op.num_qubits() != state.num_qubits()) {
    throw InvalidDimensionError("operator and state qubit counts differ");
  }
  StateVector out(state.num_qubits());
  for (const auto& t : op.terms()) {
    StateVector scratch = state;
    apply_pauli_word(scratch, t.word);
    out.amps() += t.coeff * scratch.amps();
  }
  return out;
}

double expectation(const StateVector& state, const PauliSum& op) {
  double value = 0.0;
  for (const auto& t : op.terms()) {
    value += t.coeff * expectation(state, t.word);
  }
  return value;
}

double expectation(const StateVector& state, std::string_view word) {
  StateVector scratch = state;
  apply_pauli_word(scratch, word);
  return state.inner(scratch).real();
}

}  // namespace qpencil
