#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "qpencil/errors.hpp"
#include "qpencil/pauli.hpp"

namespace qpencil {

/// Dense complex amplitude vector over m qubits. Basis index convention
/// matches PauliTerm: qubit 0 is the most significant bit, so |10> on two
/// qubits is index 2.
class StateVector {
 public:
  /// Zero-qubit placeholder (a bare scalar amplitude); real registers come
  /// from the sized constructors.
  StateVector() : num_qubits_(0), amps_(Eigen::VectorXcd::Ones(1)) {}

  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, Eigen::VectorXcd amps);

  /// |0...0>
  static StateVector zero_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }

  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }
  Complex amp(Eigen::Index i) const { return amps_(i); }

  double norm() const { return amps_.norm(); }
  void normalize() { amps_.normalize(); }

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  int num_qubits_;
  Eigen::VectorXcd amps_;
};

/// In-place application of a single Pauli label to one qubit.
void apply_pauli(StateVector& state, char label, int target);

/// In-place application of a whole Pauli word (qubit 0 leftmost).
void apply_pauli_word(StateVector& state, std::string_view word);

/// Returns op|state> for a Pauli-sum operator.
StateVector apply_operator(const StateVector& state, const PauliSum& op);

/// <state|op|state>, guaranteed real for Hermitian op.
double expectation(const StateVector& state, const PauliSum& op);

/// <state|P|state> for a single Pauli word.
double expectation(const StateVector& state, std::string_view word);

}  // namespace qpencil
