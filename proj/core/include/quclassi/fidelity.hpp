#pragma once

#include <cstdint>

#include "quclassi/statevec.hpp"

namespace quclassi {

/// Exact (analytic) or shot-sampled probability estimation.
struct EstimateMode {
    std::int64_t shots = 0; // 0 = exact
    std::uint64_t seed = 0;

    bool is_exact() const { return shots == 0; }
    static EstimateMode exact() { return {}; }
    static EstimateMode with_shots(std::int64_t shots, std::uint64_t seed) {
        if (shots < 1) throw ParameterError("shots must be >= 1");
        return {shots, seed};
    }
};

struct FidelityEstimate {
    double p_match = 0.0;  // probability of the MATCH ancilla outcome, 1/2 + F/2
    double fidelity = 0.0; // clamp(2*p_match - 1, 0, 1)
    EstimateMode mode;
};

/// H(q0) . data . model . CSWAP(q0, data_j, state_j) per pair . H(q0).
/// Layout: ancilla qubit 0, data qubits 1..n_pairs, state qubits
/// n_pairs+1..2*n_pairs. Circuits must keep to their ranges.
CircuitSpec build_swap_test(const CircuitSpec& data_circ, const CircuitSpec& model_circ,
                            int n_pairs);

/// Probability of the MATCH outcome on the ancilla (outcome 0 internally);
/// equals 1/2 + |<phi|omega>|^2 / 2, so always in [0.5, 1] in exact mode.
double match_probability(const CircuitSpec& swap_test);

/// Runs the SWAP-test circuit; exact mode evaluates the ancilla
/// distribution analytically, shots mode samples it.
FidelityEstimate estimate(const CircuitSpec& swap_test, const EstimateMode& mode);

/// Same estimate computed from the two prepared states directly via
/// p = 1/2 + |<phi|omega>|^2 / 2; identical statistics without simulating
/// the combined register.
FidelityEstimate estimate_states(const Statevector& phi, const Statevector& omega,
                                 const EstimateMode& mode);

/// Clamps into [eps, 1-eps] before a downstream logarithm.
double clamp_fidelity(double f);

inline constexpr double kFidelityClip = 1e-9;

} // namespace quclassi
