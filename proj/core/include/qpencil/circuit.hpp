#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qpencil/pauli.hpp"
#include "qpencil/statevector.hpp"

namespace qpencil {

/// One circuit element. Rotations are R_a(theta) = exp(-i theta sigma_a / 2)
/// and read their angle from a parameter vector.
struct Gate {
  enum class Kind : std::uint8_t {
    rotation,  ///< axis in {X,Y,Z}, target, param_index
    cnot,      ///< control, target
    hadamard,  ///< target
    pauli,     ///< fixed X/Y/Z on target (no parameter)
    sdg,       ///< S^dagger = diag(1, -i) on target
  };

  Kind kind;
  char label = 'I';  // rotation axis or Pauli label
  int target = 0;
  int control = -1;
  int param_index = -1;

  static Gate rotation(char axis, int target, int param_index) {
    return Gate{Kind::rotation, axis, target, -1, param_index};
  }
  static Gate cnot(int control, int target) {
    return Gate{Kind::cnot, 'I', target, control, -1};
  }
  static Gate hadamard(int target) {
    return Gate{Kind::hadamard, 'I', target, -1, -1};
  }
  static Gate pauli(char label, int target) {
    return Gate{Kind::pauli, label, target, -1, -1};
  }
  static Gate sdg(int target) { return Gate{Kind::sdg, 'I', target, -1, -1}; }
};

/// Applies one gate in place. When `control_qubit` >= 0 the gate acts only
/// on the subspace where that qubit equals `control_value` (used by the
/// ancilla test circuits; a controlled CNOT becomes a Toffoli).
void apply_gate(StateVector& state, const Gate& gate,
                std::span<const double> params, int control_qubit = -1,
                bool control_value = true);

/// Applies a gate sequence left to right (first element acts first).
StateVector apply_circuit(const StateVector& state,
                          std::span<const Gate> gates,
                          std::span<const double> params);

/// Convenience: circuit applied to |0...0> on `num_qubits` qubits.
StateVector run_circuit(int num_qubits, std::span<const Gate> gates,
                        std::span<const double> params);

/// Outcome of an ancilla measurement. shots == 0 means exact mode, where
/// p0/p1 are the true probabilities; otherwise they are empirical
/// frequencies over that many Bernoulli draws.
struct MeasurementRecord {
  double p0 = 0.0;
  double p1 = 0.0;
  std::uint64_t shots = 0;
  double estimate = 0.0;  // p0 - p1
};

/// Seedable source for shot sampling; one per run for reproducibility.
class ShotSampler {
 public:
  explicit ShotSampler(std::uint64_t seed) : rng_(seed) {}

  /// Empirical frequency of outcome 0 over `shots` draws at probability p0.
  double sample_p0(double p0, std::uint64_t shots);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::mt19937_64 rng_;
};

/// Turns an exact ancilla probability into a MeasurementRecord, sampling
/// when shots > 0.
MeasurementRecord make_record(double exact_p0, std::uint64_t shots,
                              ShotSampler* sampler);

/// Ancilla interference estimate of <psi|u|psi> for a Pauli word u, where
/// |psi> is prepared by `psi_circuit` on the working register. The ancilla
/// is one extra qubit appended at index m. Exact mode returns
/// p0 - p1 = <psi|u|psi> from amplitudes.
MeasurementRecord hadamard_test_expectation(std::span<const Gate> psi_circuit,
                                            std::span<const double> params,
                                            int num_qubits,
                                            const PauliTerm& u,
                                            std::uint64_t shots = 0,
                                            ShotSampler* sampler = nullptr);

/// Ancilla interference estimate of Re[e^{i phase} <0|L^dag (h) R|0>]:
/// the |1> branch of the ancilla carries e^{i phase} (h) R|0>, the |0>
/// branch carries L|0>, and a final Hadamard interferes them. `observable`,
/// when present, is a Pauli word applied after the right circuit.
MeasurementRecord overlap_test(std::span<const Gate> left_circuit,
                               std::span<const Gate> right_circuit,
                               std::span<const double> params, int num_qubits,
                               double phase,
                               const std::optional<PauliTerm>& observable = {},
                               std::uint64_t shots = 0,
                               ShotSampler* sampler = nullptr);

}  // namespace qpencil
