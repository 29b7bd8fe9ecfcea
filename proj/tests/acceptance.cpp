// Acceptance suite: one [PASS]/[FAIL] line per criterion; exits nonzero if
// any criterion fails. argv[1] is the data directory (expects iris.csv and
// surrogate-mnist/).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quclassi/checkpoint.hpp"
#include "quclassi/dataprep.hpp"
#include "quclassi/fidelity.hpp"
#include "quclassi/model.hpp"
#include "quclassi/statevec.hpp"
#include "quclassi/trainer.hpp"

#include "oracles.hpp"

using namespace quclassi;
using clk = std::chrono::steady_clock;

namespace {

std::string g_data_dir;
int g_failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %-28s %s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double elapsed_s(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Copies a circuit with all qubit indices raised by `offset`.
CircuitSpec shifted(const CircuitSpec& circ, int offset, int n_qubits) {
    CircuitSpec out;
    out.n_qubits = n_qubits;
    for (GateOp op : circ.ops) {
        for (int& q : op.qubits) q += offset;
        out.ops.push_back(op);
    }
    return out;
}

// --- 1: Iris reproduction ---------------------------------------------------

void criterion_1() {
    const auto t0 = clk::now();
    Dataset iris = load_iris(g_data_dir + "/iris.csv");
    std::vector<double> accs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrainConfig config;
        config.seed = seed;
        SplitResult split = stratified_split(iris, 0.8, seed);
        TrainedModel model = train(config, split.train, &split.test);
        accs.push_back(evaluate(model, split.test));
    }
    const double med = median(accs);
    const double secs = elapsed_s(t0);
    report(1, "iris QC-S 5 seeds", med >= 0.90 && secs < 120.0,
           "median=" + fmt(med) + " (>=0.90), " + fmt(secs) + "s (<120s)");
}

// --- 2: parameter and qubit counts -------------------------------------------

void criterion_2() {
    const int iris_params = 3 * param_count(parse_stack("QC-S", encoded_qubits(4, EncodeMode::TwoPerQubit)));
    const int mnist_params = 2 * param_count(parse_stack("QC-S", encoded_qubits(16, EncodeMode::TwoPerQubit)));
    const int iris_qubits = total_qubits(4);
    const int mnist_qubits = total_qubits(16);
    const bool ok = iris_params == 12 && mnist_params == 32 && iris_qubits == 5 &&
                    mnist_qubits == 17;
    report(2, "parameter/qubit counts", ok,
           "iris " + std::to_string(iris_params) + "/" + std::to_string(iris_qubits) +
               " (12/5), mnist-16 " + std::to_string(mnist_params) + "/" +
               std::to_string(mnist_qubits) + " (32/17)");
}

// --- 3 and 4: digit-image subsample runs -------------------------------------

double digits_run(const std::vector<int>& classes, int limit_train, int limit_test,
                  std::uint64_t seed) {
    Dataset all = load_mnist(g_data_dir + "/surrogate-mnist/train-images-idx3-ubyte.gz",
                             g_data_dir + "/surrogate-mnist/train-labels-idx1-ubyte.gz");
    Dataset subset = filter_classes(all, classes);
    SplitResult split = stratified_split(subset, 0.8, seed, limit_train, limit_test);
    TrainConfig config;
    config.seed = seed;
    config.pca_k = 16;
    config.synchronous = true;
    config.jobs = 4;
    TrainedModel model = train(config, split.train, &split.test);
    return evaluate(model, split.test, 4);
}

void criterion_3() {
    const auto t0 = clk::now();
    std::vector<double> accs;
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        accs.push_back(digits_run({3, 6}, 200, 100, seed));
    const double med = median(accs);
    const double secs = elapsed_s(t0);
    report(3, "digits (3,6) PCA-16", med >= 0.90 && secs < 1800.0,
           "median=" + fmt(med) + " (>=0.90), " + fmt(secs) + "s (<1800s)");
}

void criterion_4() {
    std::vector<double> accs;
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        accs.push_back(digits_run({0, 3, 6}, 100, 50, seed));
    const double med = median(accs);
    report(4, "digits (0,3,6) PCA-16", med >= 0.75, "median=" + fmt(med) + " (>=0.75)");
}

// --- 5: SWAP-test oracle ------------------------------------------------------

void criterion_5() {
    std::mt19937_64 rng(5050);
    std::uniform_int_distribution<int> pick_n(1, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = pick_n(rng);
        CircuitSpec data_local = oracles::random_prep_circuit(n, 0, 12, rng);
        CircuitSpec model_local = oracles::random_prep_circuit(n, 0, 12, rng);
        const Statevector phi = run(data_local);
        const Statevector omega = run(model_local);
        const double expected = std::norm(inner_product(phi, omega));
        CircuitSpec swap = build_swap_test(shifted(data_local, 1, 1 + 2 * n),
                                           shifted(model_local, 1 + n, 1 + 2 * n), n);
        const FidelityEstimate est = estimate(swap, EstimateMode::exact());
        worst = std::max(worst, std::abs(est.fidelity - expected));
    }
    // Orthogonal pair |0> vs |1>: p_match must be exactly 1/2.
    CircuitSpec empty_data;
    empty_data.n_qubits = 3;
    CircuitSpec flip;
    flip.n_qubits = 3;
    flip.ops.push_back(ry(M_PI, 2));
    const double p_orth = estimate(build_swap_test(empty_data, flip, 1),
                                   EstimateMode::exact()).p_match;
    // Identical pair: fidelity must be exactly 1.
    CircuitSpec same_data = oracles::random_prep_circuit(2, 1, 10, rng);
    same_data.n_qubits = 5;
    const double f_same = estimate(build_swap_test(same_data, shifted(same_data, 2, 5), 2),
                                   EstimateMode::exact()).fidelity;
    const bool ok = worst <= 1e-9 && std::abs(p_orth - 0.5) <= 1e-10 &&
                    std::abs(f_same - 1.0) <= 1e-10;
    report(5, "swap-test oracle (500)", ok,
           "max|F-oracle|=" + fmt(worst) + " (<=1e-9), orth p=" + fmt(p_orth) +
               ", same F=" + fmt(f_same));
}

// --- 6: gradient suite ---------------------------------------------------------

void criterion_6() {
    std::mt19937_64 rng(6060);
    std::uniform_real_distribution<double> angle(0.0, M_PI);
    std::uniform_int_distribution<int> pick_n(1, 3);
    std::uniform_int_distribution<int> pick_stack(0, 4);
    const char* stacks[] = {"QC-S", "QC-D", "QC-E", "QC-SD", "QC-SDE"};
    const int epoch = 4000000; // s = pi/(2*2000) <= 1e-3
    double worst_excess = -1.0;
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        int n = pick_n(rng);
        int which = pick_stack(rng);
        if (which != 0 && n < 2) n = 2; // D/E layers need a pair
        ClassModel model = init_params(parse_stack(stacks[which], n), rng());
        for (double& t : model.theta) t = angle(rng);
        EncodedSample sample;
        for (int q = 0; q < n; ++q) sample.angles.push_back({angle(rng), angle(rng)});
        std::uniform_int_distribution<int> pick_p(0, int(model.theta.size()) - 1);
        const int p = pick_p(rng);
        const double g = grad_param(model, sample, p, epoch, EstimateMode::exact());
        // Oracle: full SWAP-test circuit evaluation at perturbed theta.
        auto cost = [&](double t) {
            ClassModel m = model;
            m.theta[p] = t;
            CircuitSpec swap = build_swap_test(build_data_circuit(sample, 1),
                                               build_model_circuit(m, 1 + n), n);
            const double f = clamp_fidelity(2.0 * match_probability(swap) - 1.0);
            return sample_loss(f, 1);
        };
        // The step is (C(t+s) - C(t-s))/2 ~ s * C'(t); scale the derivative
        // oracle by the same shift before comparing.
        const double fd = shift(epoch) * oracles::finite_diff(cost, model.theta[p]);
        const double tol = std::max(1e-4, 1e-2 * std::abs(fd));
        const double excess = std::abs(g - fd) - tol;
        worst_excess = std::max(worst_excess, excess);
        if (excess > 0) ok = false;
    }
    report(6, "gradient suite (200)", ok,
           "max(|g-fd|-tol)=" + fmt(worst_excess) + " (<=0)");
}

// --- 7: simulator suite ---------------------------------------------------------

void criterion_7() {
    std::mt19937_64 rng(7070);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double worst_unit = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = angle(rng), b = angle(rng);
        const GateOp gates[] = {h(0),          rx(a, 0),      ry(a, 0),
                                rz(a, 0),      r(a, b, 0),    rxx(a, 0, 1),
                                ryy(a, 0, 1),  rzz(a, 0, 1),  cry(a, 0, 1),
                                crz(a, 0, 1),  cswap(0, 1, 2)};
        for (const GateOp& g : gates) {
            const std::vector<cnum> u = gate_matrix(g);
            const int dim = 1 << gate_arity(g.kind);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    cnum acc = 0;
                    for (int k = 0; k < dim; ++k)
                        acc += std::conj(u[k * dim + i]) * u[k * dim + j];
                    worst_unit = std::max(worst_unit,
                                          std::abs(acc - (i == j ? 1.0 : 0.0)));
                }
        }
    }
    double worst_norm = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const Statevector s = run(oracles::random_prep_circuit(4, 0, 50, rng));
        double norm2 = 0;
        for (const cnum& amp : s.amps) norm2 += std::norm(amp);
        worst_norm = std::max(worst_norm, std::abs(norm2 - 1.0));
    }
    // CSWAP: identity except basis states 3 and 5 swap (control bit 0 set).
    const std::vector<cnum> cs = gate_matrix(cswap(0, 1, 2));
    double worst_cs = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int jj = j == 3 ? 5 : (j == 5 ? 3 : j);
            worst_cs = std::max(worst_cs, std::abs(cs[i * 8 + j] - (i == jj ? 1.0 : 0.0)));
        }
    const bool ok = worst_unit <= 1e-12 && worst_norm <= 1e-9 && worst_cs == 0.0;
    report(7, "simulator suite", ok,
           "unitarity " + fmt(worst_unit) + " (<=1e-12), norm " + fmt(worst_norm) +
               " (<=1e-9), cswap " + fmt(worst_cs));
}

// --- 8: encoding identity --------------------------------------------------------

void criterion_8() {
    std::mt19937_64 rng(8080);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick_d(1, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = pick_d(rng);
        std::vector<double> x(d);
        for (double& v : x) v = unit(rng);
        const EncodedSample enc = encode(x);
        const Statevector s = run(build_data_circuit(enc, 0));
        for (std::size_t q = 0; q < enc.angles.size(); ++q)
            worst = std::max(worst, std::abs(prob_of(s, int(q), 1) - x[2 * q]));
    }
    const double theta_half = encode({0.5}).angles[0].first;
    const double golden_err = std::abs(theta_half - 1.5708);
    const bool ok = worst <= 1e-10 && golden_err < 5e-4;
    report(8, "encoding identity", ok,
           "max|P(1)-x|=" + fmt(worst) + " (<=1e-10), |theta(0.5)-1.5708|=" +
               fmt(golden_err) + " (<5e-4)");
}

// --- 9: shot statistics ------------------------------------------------------------

void criterion_9() {
    std::mt19937_64 rng(9090);
    const Statevector phi = oracles::random_state(2, rng);
    const Statevector omega = oracles::random_state(2, rng);
    const double exact = estimate_states(phi, omega, EstimateMode::exact()).fidelity;
    auto stats = [&](std::int64_t shots) {
        double sum = 0, sum2 = 0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const double f =
                estimate_states(phi, omega, EstimateMode::with_shots(shots, seed + 1))
                    .fidelity;
            sum += f;
            sum2 += f * f;
        }
        const double mean = sum / 200.0;
        const double var = std::max(0.0, sum2 / 200.0 - mean * mean);
        return std::pair<double, double>(mean, std::sqrt(var));
    };
    const auto [m100, se100] = stats(100);
    const auto [m1600, se1600] = stats(1600);
    const auto [m8000, se8000] = stats(8000);
    const bool mean_ok = std::abs(m8000 - exact) <= 3.0 * se8000 / std::sqrt(200.0);
    // 1/sqrt(shots) scaling: expected ratios 4 (100->1600) and sqrt(5) (1600->8000).
    const double r1 = se100 / se1600, r2 = se1600 / se8000;
    const bool scale_ok = std::abs(r1 / 4.0 - 1.0) <= 0.20 &&
                          std::abs(r2 / std::sqrt(5.0) - 1.0) <= 0.20;
    report(9, "shot statistics", mean_ok && scale_ok,
           "|mean-exact|=" + fmt(std::abs(m8000 - exact)) + " (<=" +
               fmt(3.0 * se8000 / std::sqrt(200.0)) + "), SE ratios " + fmt(r1) +
               "/4, " + fmt(r2) + "/sqrt5");
    (void)m100;
    (void)m1600;
}

// --- 10: determinism and round trip ---------------------------------------------------

void criterion_10() {
    Dataset iris = load_iris(g_data_dir + "/iris.csv");
    TrainConfig config;
    config.seed = 42;
    config.epochs = 3;
    SplitResult split = stratified_split(iris, 0.8, config.seed);
    TrainedModel a = train(config, split.train, &split.test);
    TrainedModel b = train(config, split.train, &split.test);
    const std::string text_a = checkpoint_to_text(a, config);
    const bool identical = text_a == checkpoint_to_text(b, config);
    const std::string path =
        (std::filesystem::temp_directory_path() / "quclassi_acceptance.json").string();
    save_checkpoint(path, a, config);
    LoadedCheckpoint loaded = load_checkpoint(path);
    std::filesystem::remove(path);
    const double mem_acc = evaluate(a, split.test);
    const double load_acc = evaluate(loaded.model, split.test);
    const bool ok = identical && mem_acc == load_acc;
    report(10, "determinism/round-trip", ok,
           std::string(identical ? "bit-identical" : "MISMATCH") +
               ", eval " + fmt(mem_acc) + (mem_acc == load_acc ? " == " : " != ") +
               fmt(load_acc));
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <data-dir>\n";
        return 2;
    }
    g_data_dir = argv[1];
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
