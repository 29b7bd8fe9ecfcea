#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quclassi/dataprep.hpp"
#include "quclassi/statevec.hpp"

namespace quclassi {

enum class LayerKind { SingleQubitUnitary, DualQubitUnitary, Entanglement };

enum class Pairing { Chain, All };

const char* pairing_name(Pairing p);
Pairing pairing_from_name(const std::string& name);

struct LayerStack {
    std::vector<LayerKind> layers;
    int n_state_qubits = 0;
    Pairing pairing = Pairing::Chain;
};

/// Accepts the named stacks QC-S, QC-D, QC-E, QC-SD, QC-SDE, or a comma
/// list of layer letters such as `S,D,E,S`. Throws ConfigError otherwise.
LayerStack parse_stack(const std::string& name, int n_state_qubits,
                       Pairing pairing = Pairing::Chain);
std::string stack_to_string(const LayerStack& stack);

/// Qubit pairs a Dual or Entanglement layer acts on.
std::vector<std::pair<int, int>> layer_pairs(int n_qubits, Pairing pairing);

/// S layer: 2n; D and E layers: 2 per pair (shared RY+RZ, resp. CRY+CRZ).
int param_count(const LayerStack& stack);

struct ClassModel {
    LayerStack stack;
    std::vector<double> theta; // radians, length = param_count(stack)
    int class_id = 0;
};

/// Each parameter drawn uniformly from [0, pi); deterministic per seed.
ClassModel init_params(const LayerStack& stack, std::uint64_t seed, int class_id = 0);

/// Layers in stack order; parameter consumption is layer-major,
/// pair/qubit-minor, RY before RZ. D layers share one angle across the
/// pair; E layers emit CRY then CRZ with the lower index as control.
CircuitSpec build_model_circuit(const ClassModel& model, int qubit_offset);

/// 1 ancilla + data qubits + state qubits for an encoded dimension d.
int total_qubits(int dim, EncodeMode mode = EncodeMode::TwoPerQubit);

} // namespace quclassi
