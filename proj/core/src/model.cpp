#include "quclassi/model.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace quclassi {

const char* pairing_name(Pairing p) { return p == Pairing::Chain ? "chain" : "all"; }

Pairing pairing_from_name(const std::string& name) {
    if (name == "chain") return Pairing::Chain;
    if (name == "all") return Pairing::All;
    throw ConfigError("unknown pairing: " + name);
}

namespace {

LayerKind layer_from_letter(char c) {
    switch (c) {
    case 'S': return LayerKind::SingleQubitUnitary;
    case 'D': return LayerKind::DualQubitUnitary;
    case 'E': return LayerKind::Entanglement;
    default: throw ConfigError(std::string("unknown layer letter: ") + c);
    }
}

char layer_letter(LayerKind k) {
    switch (k) {
    case LayerKind::SingleQubitUnitary: return 'S';
    case LayerKind::DualQubitUnitary: return 'D';
    case LayerKind::Entanglement: return 'E';
    }
    return '?';
}

void validate(const LayerStack& stack) {
    if (stack.n_state_qubits < 1)
        throw ConfigError("stack needs at least one state qubit");
    if (stack.layers.empty()) throw ConfigError("stack has no layers");
    for (LayerKind k : stack.layers)
        if (k != LayerKind::SingleQubitUnitary && stack.n_state_qubits < 2)
            throw ConfigError("dual/entanglement layers need >= 2 state qubits");
}

} // namespace

LayerStack parse_stack(const std::string& name, int n_state_qubits, Pairing pairing) {
    std::string letters = name;
    if (letters.rfind("QC-", 0) == 0) letters = letters.substr(3);
    LayerStack stack;
    stack.n_state_qubits = n_state_qubits;
    stack.pairing = pairing;
    for (char c : letters) {
        if (c == ',') continue;
        stack.layers.push_back(layer_from_letter(c));
    }
    validate(stack);
    return stack;
}

std::string stack_to_string(const LayerStack& stack) {
    std::string out;
    for (LayerKind k : stack.layers) {
        if (!out.empty()) out += ',';
        out += layer_letter(k);
    }
    return out;
}

std::vector<std::pair<int, int>> layer_pairs(int n_qubits, Pairing pairing) {
    std::vector<std::pair<int, int>> pairs;
    if (pairing == Pairing::Chain) {
        for (int j = 0; j + 1 < n_qubits; ++j) pairs.emplace_back(j, j + 1);
    } else {
        for (int i = 0; i < n_qubits; ++i)
            for (int j = i + 1; j < n_qubits; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
}

int param_count(const LayerStack& stack) {
    validate(stack);
    const int n = stack.n_state_qubits;
    const int pairs = static_cast<int>(layer_pairs(n, stack.pairing).size());
    int count = 0;
    for (LayerKind k : stack.layers)
        count += (k == LayerKind::SingleQubitUnitary) ? 2 * n : 2 * pairs;
    return count;
}

ClassModel init_params(const LayerStack& stack, std::uint64_t seed, int class_id) {
    ClassModel model;
    model.stack = stack;
    model.class_id = class_id;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, std::numbers::pi);
    const int count = param_count(stack);
    model.theta.reserve(count);
    for (int i = 0; i < count; ++i) model.theta.push_back(dist(rng));
    return model;
}

CircuitSpec build_model_circuit(const ClassModel& model, int qubit_offset) {
    validate(model.stack);
    if (qubit_offset < 0) throw IndexError("qubit offset must be >= 0");
    if (static_cast<int>(model.theta.size()) != param_count(model.stack))
        throw ShapeError("theta length " + std::to_string(model.theta.size()) +
                         " != param count " + std::to_string(param_count(model.stack)));

    const int n = model.stack.n_state_qubits;
    const auto pairs = layer_pairs(n, model.stack.pairing);
    CircuitSpec circuit;
    circuit.n_qubits = qubit_offset + n;
    std::size_t p = 0;
    auto next = [&] { return model.theta[p++]; };
    for (LayerKind kind : model.stack.layers) {
        switch (kind) {
        case LayerKind::SingleQubitUnitary:
            for (int j = 0; j < n; ++j) {
                const int q = qubit_offset + j;
                circuit.ops.push_back(ry(next(), q));
                circuit.ops.push_back(rz(next(), q));
            }
            break;
        case LayerKind::DualQubitUnitary:
            for (const auto& [a, b] : pairs) {
                const double ty = next(), tz = next();
                circuit.ops.push_back(ry(ty, qubit_offset + a));
                circuit.ops.push_back(ry(ty, qubit_offset + b));
                circuit.ops.push_back(rz(tz, qubit_offset + a));
                circuit.ops.push_back(rz(tz, qubit_offset + b));
            }
            break;
        case LayerKind::Entanglement:
            for (const auto& [a, b] : pairs) {
                circuit.ops.push_back(cry(next(), qubit_offset + a, qubit_offset + b));
                circuit.ops.push_back(crz(next(), qubit_offset + a, qubit_offset + b));
            }
            break;
        }
    }
    return circuit;
}

int total_qubits(int dim, EncodeMode mode) {
    const int width = encoded_qubits(dim, mode);
    return 1 + 2 * width;
}

} // namespace quclassi
