#include "qpencil/ansatz.hpp"

#include <string>

namespace qpencil {

Ansatz::Ansatz(int num_qubits, std::vector<Gate> gates, int num_params,
               std::vector<std::vector<GeneratorTerm>> generators)
    : num_qubits_(num_qubits),
      gates_(std::move(gates)),
      num_params_(num_params),
      generators_(std::move(generators)) {
  if (static_cast<int>(generators_.size()) != num_params_) {
    throw ConfigError("generator table size != parameter count");
  }
  for (int i = 0; i < num_params_; ++i) {
    if (generators_[i].empty()) {
      throw ConfigError("parameter " + std::to_string(i) +
                        " is not referenced by any gate");
    }
  }
}

Ansatz Ansatz::hardware_efficient(int num_qubits, int layers) {
  if (num_qubits < 1 || layers < 1) {
    throw ConfigError("hardware_efficient needs num_qubits >= 1, layers >= 1");
  }
  std::vector<Gate> gates;
  std::vector<std::vector<GeneratorTerm>> generators;
  int param = 0;
  for (int layer = 0; layer <= layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q) {
      gates.push_back(Gate::rotation('Y', q, param));
      generators.push_back({GeneratorTerm{
          Complex(0.0, -0.5), 'Y', q, static_cast<int>(gates.size()) - 1}});
      ++param;
    }
    if (layer < layers) {
      for (int q = 0; q + 1 < num_qubits; ++q) {
        gates.push_back(Gate::cnot(q, q + 1));
      }
    }
  }
  return Ansatz(num_qubits, std::move(gates), param, std::move(generators));
}

StateVector Ansatz::prepare(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != num_params_) {
    throw ConfigError("theta length " + std::to_string(theta.size()) +
                      " != parameter count " + std::to_string(num_params_));
  }
  return run_circuit(num_qubits_, gates_, theta);
}

std::vector<DerivativeCircuit> Ansatz::derivative_circuits(
    int param_index) const {
  if (param_index < 0 || param_index >= num_params_) {
    throw GateIndexError("parameter index " + std::to_string(param_index) +
                         " out of range");
  }
  std::vector<DerivativeCircuit> out;
  int gen_index = 0;
  for (const auto& gen : generators_[param_index]) {
    DerivativeCircuit dc;
    dc.param_index = param_index;
    dc.gen_index = gen_index++;
    dc.factor = gen.factor;
    dc.gates.reserve(gates_.size() + 1);
    for (int g = 0; g < static_cast<int>(gates_.size()); ++g) {
      dc.gates.push_back(gates_[g]);
      if (g == gen.insert_after) {
        dc.gates.push_back(Gate::pauli(gen.pauli_label, gen.target));
      }
    }
    out.push_back(std::move(dc));
  }
  return out;
}

std::vector<StateVector> Ansatz::parameter_derivatives(
    std::span<const double> theta) const {
  std::vector<StateVector> out;
  out.reserve(num_params_);
  for (int i = 0; i < num_params_; ++i) {
    StateVector d(num_qubits_);
    for (const auto& dc : derivative_circuits(i)) {
      StateVector s = run_circuit(num_qubits_, dc.gates, theta);
      d.amps() += dc.factor * s.amps();
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace qpencil
