#include "quclassi/fidelity.hpp"

#include <algorithm>
#include <cmath>

namespace quclassi {

namespace {

void check_range(const CircuitSpec& circ, int lo, int hi, const char* what) {
    for (const auto& op : circ.ops)
        for (int q : op.qubits)
            if (q < lo || q > hi)
                throw LayoutError(std::string(what) + " circuit touches qubit " +
                                  std::to_string(q) + " outside [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "]");
}

FidelityEstimate from_p_match(double p_match, const EstimateMode& mode) {
    FidelityEstimate est;
    est.p_match = p_match;
    est.fidelity = std::clamp(2.0 * p_match - 1.0, 0.0, 1.0);
    est.mode = mode;
    return est;
}

} // namespace

CircuitSpec build_swap_test(const CircuitSpec& data_circ, const CircuitSpec& model_circ,
                            int n_pairs) {
    if (n_pairs < 1) throw LayoutError("swap test needs at least one qubit pair");
    const int total = 1 + 2 * n_pairs;
    if (data_circ.n_qubits > total || model_circ.n_qubits > total)
        throw LayoutError("state-prep circuit wider than the swap-test register");
    check_range(data_circ, 1, n_pairs, "data");
    check_range(model_circ, n_pairs + 1, 2 * n_pairs, "model");

    CircuitSpec circuit;
    circuit.n_qubits = total;
    circuit.ops.push_back(h(0));
    circuit.ops.insert(circuit.ops.end(), data_circ.ops.begin(), data_circ.ops.end());
    circuit.ops.insert(circuit.ops.end(), model_circ.ops.begin(), model_circ.ops.end());
    for (int j = 0; j < n_pairs; ++j)
        circuit.ops.push_back(cswap(0, 1 + j, 1 + n_pairs + j));
    circuit.ops.push_back(h(0));
    return circuit;
}

double match_probability(const CircuitSpec& swap_test) {
    // MATCH is the outcome whose probability is 1/2 + F/2; with this
    // circuit ordering that is ancilla outcome 0.
    return prob_of(run(swap_test), 0, 0);
}

FidelityEstimate estimate(const CircuitSpec& swap_test, const EstimateMode& mode) {
    const Statevector state = run(swap_test);
    if (mode.is_exact()) return from_p_match(prob_of(state, 0, 0), mode);
    const std::int64_t mismatches = sample_outcome(state, 0, mode.shots, mode.seed);
    return from_p_match(1.0 - double(mismatches) / double(mode.shots), mode);
}

FidelityEstimate estimate_states(const Statevector& phi, const Statevector& omega,
                                 const EstimateMode& mode) {
    const double f = std::norm(inner_product(phi, omega));
    const double p_match = 0.5 + 0.5 * f;
    if (mode.is_exact()) return from_p_match(p_match, mode);
    // Same binomial the circuit's ancilla produces.
    Statevector coin = zero_state(1);
    coin.amps[0] = std::sqrt(std::clamp(p_match, 0.0, 1.0));
    coin.amps[1] = std::sqrt(std::clamp(1.0 - p_match, 0.0, 1.0));
    const std::int64_t mismatches = sample_outcome(coin, 0, mode.shots, mode.seed);
    return from_p_match(1.0 - double(mismatches) / double(mode.shots), mode);
}

double clamp_fidelity(double f) {
    return std::clamp(f, kFidelityClip, 1.0 - kFidelityClip);
}

} // namespace quclassi
