#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qpencil/circuit.hpp"

namespace qpencil {

/// One term of the generator rule dU/dtheta = sum_k f_k U sigma_k for a
/// parameterized gate. For a plain rotation exp(-i theta sigma/2) there is
/// a single term with f = -i/2 and sigma the rotation axis, inserted right
/// after the gate (sigma commutes with its own exponential).
struct GeneratorTerm {
  Complex factor;        // f_{k,i}
  char pauli_label;      // sigma_{k,i} acting on `target`
  int target;
  int insert_after;      // gate index the insertion follows
};

/// Circuit realization of one tilde-V_{k,i}: the base gate list with the
/// generator Pauli spliced in.
struct DerivativeCircuit {
  int param_index;
  int gen_index;
  Complex factor;
  std::vector<Gate> gates;
};

/// Parameterized trial circuit V(theta) with per-parameter generator
/// metadata.
class Ansatz {
 public:
  Ansatz(int num_qubits, std::vector<Gate> gates, int num_params,
         std::vector<std::vector<GeneratorTerm>> generators);

  /// Alternating layers of Ry rotations on every qubit and a CNOT ladder
  /// q0->q1->...->q_{m-1}; `layers` ladders separate layers+1 rotation
  /// rows, so num_params = m * (layers + 1).
  static Ansatz hardware_efficient(int num_qubits, int layers);

  int num_qubits() const { return num_qubits_; }
  int num_params() const { return num_params_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::vector<GeneratorTerm>>& generators() const {
    return generators_;
  }

  /// V(theta)|0...0>
  StateVector prepare(std::span<const double> theta) const;

  /// Gate lists for tilde-V_{k,i}, one per generator term of parameter i.
  std::vector<DerivativeCircuit> derivative_circuits(int param_index) const;

  /// d|psi>/dtheta_i = sum_k f_{k,i} tilde-V_{k,i}|0> for every i, via
  /// direct statevector evaluation.
  std::vector<StateVector> parameter_derivatives(
      std::span<const double> theta) const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
  int num_params_;
  std::vector<std::vector<GeneratorTerm>> generators_;
};

}  // namespace qpencil
