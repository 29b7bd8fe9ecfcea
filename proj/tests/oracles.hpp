// Test-only oracles, independent of the library's gate-application,
// fidelity, PCA, and gradient paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "quclassi/statevec.hpp"

namespace oracles {

using quclassi::cnum;

// Kronecker product, second factor on the low-order bits.
inline std::vector<cnum> kron(const std::vector<cnum>& a, int da,
                              const std::vector<cnum>& b, int db) {
    std::vector<cnum> out(std::size_t(da) * db * da * db);
    for (int ia = 0; ia < da; ++ia)
        for (int ja = 0; ja < da; ++ja)
            for (int ib = 0; ib < db; ++ib)
                for (int jb = 0; jb < db; ++jb)
                    out[std::size_t(ia * db + ib) * (da * db) + (ja * db + jb)] =
                        a[ia * da + ja] * b[ib * db + jb];
    return out;
}

inline std::vector<cnum> kron_vec(const std::vector<cnum>& a, const std::vector<cnum>& b) {
    std::vector<cnum> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

// Full 2^n x 2^n embedding of a small matrix on the listed qubits,
// built entrywise (qubit 0 = LSB, matrix bit j = j-th listed qubit).
inline std::vector<cnum> embed(const std::vector<cnum>& m, const std::vector<int>& qubits,
                               int n_qubits) {
    const std::size_t dim = std::size_t(1) << n_qubits;
    const int k = static_cast<int>(qubits.size());
    const int mdim = 1 << k;
    std::size_t mask = 0;
    for (int q : qubits) mask |= std::size_t(1) << q;
    auto sub = [&](std::size_t idx) {
        int r = 0;
        for (int j = 0; j < k; ++j) r |= int((idx >> qubits[j]) & 1) << j;
        return r;
    };
    std::vector<cnum> full(dim * dim, cnum{0, 0});
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if ((i & ~mask) == (j & ~mask))
                full[i * dim + j] = m[sub(i) * mdim + sub(j)];
    return full;
}

inline std::vector<cnum> matvec(const std::vector<cnum>& m, const std::vector<cnum>& v) {
    const std::size_t n = v.size();
    std::vector<cnum> out(n, cnum{0, 0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
    return out;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix; returns
// (eigenvalues, eigenvectors as rows), descending.
struct JacobiResult {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

inline JacobiResult jacobi_eigen(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    JacobiResult out;
    for (int i : order) {
        out.values.push_back(a[i][i]);
        std::vector<double> col(n);
        for (int r = 0; r < n; ++r) col[r] = v[r][i];
        out.vectors.push_back(col);
    }
    return out;
}

// Central finite difference.
inline double finite_diff(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Random normalized statevector.
inline quclassi::Statevector random_state(int n_qubits, std::mt19937_64& rng) {
    quclassi::Statevector s = quclassi::zero_state(n_qubits);
    std::normal_distribution<double> g;
    double norm2 = 0;
    for (auto& a : s.amps) {
        a = cnum{g(rng), g(rng)};
        norm2 += std::norm(a);
    }
    for (auto& a : s.amps) a /= std::sqrt(norm2);
    return s;
}

// Random single/controlled-rotation circuit on qubits [offset, offset+width).
inline quclassi::CircuitSpec random_prep_circuit(int width, int offset, int n_gates,
                                                 std::mt19937_64& rng) {
    using namespace quclassi;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_int_distribution<int> pick_q(0, width - 1);
    std::uniform_int_distribution<int> pick_g(0, width >= 2 ? 4 : 2);
    CircuitSpec circ;
    circ.n_qubits = offset + width;
    for (int i = 0; i < n_gates; ++i) {
        const int q = offset + pick_q(rng);
        switch (pick_g(rng)) {
        case 0: circ.ops.push_back(ry(angle(rng), q)); break;
        case 1: circ.ops.push_back(rz(angle(rng), q)); break;
        case 2: circ.ops.push_back(rx(angle(rng), q)); break;
        default: {
            int q2 = offset + pick_q(rng);
            while (q2 == q) q2 = offset + pick_q(rng);
            circ.ops.push_back(pick_g(rng) % 2 ? cry(angle(rng), q, q2)
                                               : crz(angle(rng), q, q2));
        }
        }
    }
    return circ;
}

} // namespace oracles
