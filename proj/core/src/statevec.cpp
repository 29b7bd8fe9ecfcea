#include "quclassi/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace quclassi {

namespace {

constexpr cnum kI{0.0, 1.0};

void check_op(const GateOp& g, int n_qubits) {
    const int arity = gate_arity(g.kind);
    if (static_cast<int>(g.qubits.size()) != arity)
        throw IndexError(std::string(gate_name(g.kind)) + ": expected " +
                         std::to_string(arity) + " qubit indices");
    if (static_cast<int>(g.params.size()) != param_arity(g.kind))
        throw ParameterError(std::string(gate_name(g.kind)) + ": expected " +
                             std::to_string(param_arity(g.kind)) + " angle(s)");
    for (int q : g.qubits) {
        if (q < 0 || q >= n_qubits)
            throw IndexError("qubit index " + std::to_string(q) +
                             " out of range for " + std::to_string(n_qubits) +
                             " qubits");
    }
    for (size_t i = 0; i < g.qubits.size(); ++i)
        for (size_t j = i + 1; j < g.qubits.size(); ++j)
            if (g.qubits[i] == g.qubits[j])
                throw IndexError("duplicate qubit index in gate operand list");
}

std::vector<cnum> rotation_matrix(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {cnum{c, 0.0}, -kI * std::exp(-kI * phi) * s,
            -kI * std::exp(kI * phi) * s, cnum{c, 0.0}};
}

} // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::R:
        return 1;
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
    case GateKind::CRY:
    case GateKind::CRZ:
        return 2;
    case GateKind::CSWAP:
        return 3;
    }
    throw ParameterError("unknown gate kind");
}

int param_arity(GateKind kind) {
    switch (kind) {
    case GateKind::H:
    case GateKind::CSWAP:
        return 0;
    case GateKind::R:
        return 2;
    default:
        return 1;
    }
}

const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::R: return "R";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CRY: return "CRY";
    case GateKind::CRZ: return "CRZ";
    case GateKind::CSWAP: return "CSWAP";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
    static const std::pair<const char*, GateKind> table[] = {
        {"H", GateKind::H},     {"RX", GateKind::RX},   {"RY", GateKind::RY},
        {"RZ", GateKind::RZ},   {"R", GateKind::R},     {"RXX", GateKind::RXX},
        {"RYY", GateKind::RYY}, {"RZZ", GateKind::RZZ}, {"CRY", GateKind::CRY},
        {"CRZ", GateKind::CRZ}, {"CSWAP", GateKind::CSWAP}};
    for (const auto& [n, k] : table)
        if (name == n) return k;
    throw ParseError("unknown gate name: " + name);
}

GateOp h(int q) { return {GateKind::H, {}, {q}}; }
GateOp rx(double theta, int q) { return {GateKind::RX, {theta}, {q}}; }
GateOp ry(double theta, int q) { return {GateKind::RY, {theta}, {q}}; }
GateOp rz(double theta, int q) { return {GateKind::RZ, {theta}, {q}}; }
GateOp r(double theta, double phi, int q) { return {GateKind::R, {theta, phi}, {q}}; }
GateOp rxx(double theta, int q0, int q1) { return {GateKind::RXX, {theta}, {q0, q1}}; }
GateOp ryy(double theta, int q0, int q1) { return {GateKind::RYY, {theta}, {q0, q1}}; }
GateOp rzz(double theta, int q0, int q1) { return {GateKind::RZZ, {theta}, {q0, q1}}; }
GateOp cry(double theta, int control, int target) { return {GateKind::CRY, {theta}, {control, target}}; }
GateOp crz(double theta, int control, int target) { return {GateKind::CRZ, {theta}, {control, target}}; }
GateOp cswap(int control, int a, int b) { return {GateKind::CSWAP, {}, {control, a, b}}; }

Statevector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw CapacityError("n_qubits must be in [1, " +
                            std::to_string(kMaxQubits) + "], got " +
                            std::to_string(n_qubits));
    Statevector s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, cnum{0.0, 0.0});
    s.amps[0] = cnum{1.0, 0.0};
    return s;
}

std::vector<cnum> gate_matrix(const GateOp& g) {
    if (static_cast<int>(g.params.size()) != param_arity(g.kind))
        throw ParameterError(std::string(gate_name(g.kind)) + ": expected " +
                             std::to_string(param_arity(g.kind)) + " angle(s)");
    const double t = g.params.empty() ? 0.0 : g.params[0];
    const double c = std::cos(t / 2.0), s = std::sin(t / 2.0);
    const cnum em = std::exp(-kI * (t / 2.0)), ep = std::exp(kI * (t / 2.0));
    const cnum z{0.0, 0.0}, one{1.0, 0.0};
    switch (g.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        return {cnum{r, 0}, cnum{r, 0}, cnum{r, 0}, cnum{-r, 0}};
    }
    case GateKind::R:
        return rotation_matrix(t, g.params[1]);
    case GateKind::RX:
        return rotation_matrix(t, 0.0);
    case GateKind::RY:
        // R(theta, pi/2) reduces to the real rotation [[c,-s],[s,c]].
        return {cnum{c, 0}, cnum{-s, 0}, cnum{s, 0}, cnum{c, 0}};
    case GateKind::RZ:
        return {em, z, z, ep};
    case GateKind::RXX:
        return {cnum{c, 0}, z, z, -kI * s,
                z, cnum{c, 0}, -kI * s, z,
                z, -kI * s, cnum{c, 0}, z,
                -kI * s, z, z, cnum{c, 0}};
    case GateKind::RYY:
        return {cnum{c, 0}, z, z, kI * s,
                z, cnum{c, 0}, -kI * s, z,
                z, -kI * s, cnum{c, 0}, z,
                kI * s, z, z, cnum{c, 0}};
    case GateKind::RZZ:
        // Corrected from the source description, whose printed matrix is the
        // global phase e^{-i theta/2} * I (non-entangling).
        return {em, z, z, z, z, ep, z, z, z, z, ep, z, z, z, z, em};
    case GateKind::CRY: {
        // Control is matrix-index bit 0 (the first listed qubit).
        std::vector<cnum> m(16, z);
        m[0 * 4 + 0] = one;
        m[2 * 4 + 2] = one;
        m[1 * 4 + 1] = cnum{c, 0};
        m[1 * 4 + 3] = cnum{-s, 0};
        m[3 * 4 + 1] = cnum{s, 0};
        m[3 * 4 + 3] = cnum{c, 0};
        return m;
    }
    case GateKind::CRZ: {
        std::vector<cnum> m(16, z);
        m[0 * 4 + 0] = one;
        m[2 * 4 + 2] = one;
        m[1 * 4 + 1] = em;
        m[3 * 4 + 3] = ep;
        return m;
    }
    case GateKind::CSWAP: {
        // |0><0| (x) I (x) I + |1><1| (x) SWAP with the control at matrix
        // bit 0: identity except basis 011 <-> 101.
        std::vector<cnum> m(64, z);
        for (int i = 0; i < 8; ++i) {
            int j = i;
            if (i == 3) j = 5;
            if (i == 5) j = 3;
            m[i * 8 + j] = one;
        }
        return m;
    }
    }
    throw ParameterError("unknown gate kind");
}

namespace {

void apply_inplace(Statevector& state, const GateOp& g) {
    check_op(g, state.n_qubits);
    const auto m = gate_matrix(g);
    const int k = gate_arity(g.kind);
    const int dim = 1 << k;
    const std::size_t n = state.amps.size();

    std::size_t mask = 0;
    for (int q : g.qubits) mask |= (std::size_t{1} << q);

    cnum in[8], out[8];
    for (std::size_t base = 0; base < n; ++base) {
        if (base & mask) continue;
        std::size_t idx[8];
        for (int v = 0; v < dim; ++v) {
            std::size_t i = base;
            for (int j = 0; j < k; ++j)
                if ((v >> j) & 1) i |= (std::size_t{1} << g.qubits[j]);
            idx[v] = i;
            in[v] = state.amps[i];
        }
        for (int row = 0; row < dim; ++row) {
            cnum acc{0.0, 0.0};
            for (int col = 0; col < dim; ++col) acc += m[row * dim + col] * in[col];
            out[row] = acc;
        }
        for (int v = 0; v < dim; ++v) state.amps[idx[v]] = out[v];
    }
}

} // namespace

Statevector apply(const Statevector& state, const GateOp& g) {
    Statevector next = state;
    apply_inplace(next, g);
    return next;
}

Statevector run(const CircuitSpec& circuit) {
    Statevector s = zero_state(circuit.n_qubits);
    for (const auto& op : circuit.ops) apply_inplace(s, op);
    return s;
}

Statevector apply_circuit(const Statevector& state, const CircuitSpec& circuit) {
    if (circuit.n_qubits > state.n_qubits)
        throw ShapeError("circuit is wider than the state");
    Statevector next = state;
    for (const auto& op : circuit.ops) apply_inplace(next, op);
    return next;
}

double prob_of(const Statevector& state, int qubit, int outcome) {
    if (qubit < 0 || qubit >= state.n_qubits)
        throw IndexError("qubit index out of range");
    if (outcome != 0 && outcome != 1)
        throw ParameterError("outcome must be 0 or 1");
    const std::size_t bit = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < state.amps.size(); ++i)
        if (((i & bit) != 0) == (outcome == 1)) p += std::norm(state.amps[i]);
    return p;
}

std::int64_t sample_outcome(const Statevector& state, int qubit,
                            std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ParameterError("shots must be >= 1");
    const double p1 = std::clamp(prob_of(state, qubit, 1), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::int64_t> dist(shots, p1);
    return dist(rng);
}

cnum inner_product(const Statevector& a, const Statevector& b) {
    if (a.n_qubits != b.n_qubits || a.amps.size() != b.amps.size())
        throw ShapeError("inner_product requires equal qubit counts");
    cnum acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

std::string to_text(const CircuitSpec& circuit) {
    std::ostringstream os;
    os.precision(12);
    os << "qubits " << circuit.n_qubits << "\n";
    for (const auto& op : circuit.ops) {
        os << gate_name(op.kind);
        if (!op.params.empty()) {
            os << " ";
            for (size_t i = 0; i < op.params.size(); ++i)
                os << (i ? "," : "") << op.params[i];
        }
        os << " ";
        for (size_t i = 0; i < op.qubits.size(); ++i)
            os << (i ? "," : "") << op.qubits[i];
        os << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

CircuitSpec circuit_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    CircuitSpec circuit;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (!have_header) {
            if (head != "qubits" || !(ls >> circuit.n_qubits))
                throw ParseError("line 1: expected `qubits N`");
            have_header = true;
            continue;
        }
        GateOp op;
        op.kind = gate_kind_from_name(head);
        std::string field;
        if (param_arity(op.kind) > 0) {
            if (!(ls >> field))
                throw ParseError("line " + std::to_string(lineno) + ": missing angles");
            for (const auto& tok : split(field, ','))
                op.params.push_back(std::stod(tok));
        }
        if (!(ls >> field))
            throw ParseError("line " + std::to_string(lineno) + ": missing qubits");
        for (const auto& tok : split(field, ','))
            op.qubits.push_back(std::stoi(tok));
        check_op(op, circuit.n_qubits);
        circuit.ops.push_back(std::move(op));
    }
    if (!have_header) throw ParseError("empty circuit text");
    return circuit;
}

} // namespace quclassi
