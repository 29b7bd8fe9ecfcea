#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quclassi/errors.hpp"

namespace quclassi {

using cnum = std::complex<double>;

// Qubit 0 is the least-significant bit of the basis index throughout.

enum class GateKind { H, RX, RY, RZ, R, RXX, RYY, RZZ, CRY, CRZ, CSWAP };

/// A named unitary with its angle parameters and target qubits.
/// For controlled gates the control is listed first; CSWAP order is
/// (control, swap-a, swap-b).
struct GateOp {
    GateKind kind;
    std::vector<double> params; // 0-2 angles, radians
    std::vector<int> qubits;    // 1-3 indices
};

/// Number of qubits a gate kind acts on (1, 2, or 3).
int gate_arity(GateKind kind);
/// Number of angle parameters the gate kind takes (0, 1, or 2).
int param_arity(GateKind kind);
const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// Convenience constructors.
GateOp h(int q);
GateOp rx(double theta, int q);
GateOp ry(double theta, int q);
GateOp rz(double theta, int q);
GateOp r(double theta, double phi, int q);
GateOp rxx(double theta, int q0, int q1);
GateOp ryy(double theta, int q0, int q1);
GateOp rzz(double theta, int q0, int q1);
GateOp cry(double theta, int control, int target);
GateOp crz(double theta, int control, int target);
GateOp cswap(int control, int a, int b);

/// Dense complex amplitude vector over n qubits, unit norm.
struct Statevector {
    int n_qubits = 0;
    std::vector<cnum> amps;
};

/// An ordered gate list over a fixed-width register.
struct CircuitSpec {
    int n_qubits = 0;
    std::vector<GateOp> ops;
};

inline constexpr int kMaxQubits = 24;

/// |0...0> on n qubits. Throws CapacityError outside [1, 24].
Statevector zero_state(int n_qubits);

/// The gate's dense matrix, row-major, dim 2^arity. The matrix index bit j
/// corresponds to the j-th listed qubit of the op.
std::vector<cnum> gate_matrix(const GateOp& g);

/// Applies g embedded on its target qubits; returns a new state.
Statevector apply(const Statevector& state, const GateOp& g);

/// Applies all ops in order starting from |0...0> on circuit.n_qubits.
Statevector run(const CircuitSpec& circuit);
/// Applies all ops in order to a copy of the given state.
Statevector apply_circuit(const Statevector& state, const CircuitSpec& circuit);

/// Probability of measuring `outcome` (0 or 1) on `qubit` along Z.
double prob_of(const Statevector& state, int qubit, int outcome);

/// Count of outcome-1 results over `shots` Z-measurements of `qubit`.
/// Deterministic for a fixed seed.
std::int64_t sample_outcome(const Statevector& state, int qubit,
                            std::int64_t shots, std::uint64_t seed);

/// <a|b>. Test oracle for fidelity; not part of the measurement model.
cnum inner_product(const Statevector& a, const Statevector& b);

/// Line-oriented text form: one op per line, `KIND angle[,angle] q[,q,q]`,
/// angles with 12 significant digits. First line is `qubits N`.
std::string to_text(const CircuitSpec& circuit);
CircuitSpec circuit_from_text(const std::string& text);

} // namespace quclassi
