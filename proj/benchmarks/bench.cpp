#include <benchmark/benchmark.h>

#include <random>

#include "quclassi/fidelity.hpp"
#include "quclassi/model.hpp"
#include "quclassi/trainer.hpp"

using namespace quclassi;

namespace {

CircuitSpec random_layered(int n_qubits, int n_gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
    std::uniform_int_distribution<int> pick(0, n_qubits - 1);
    CircuitSpec circ;
    circ.n_qubits = n_qubits;
    for (int i = 0; i < n_gates; ++i) {
        const int q = pick(rng);
        switch (i % 3) {
        case 0: circ.ops.push_back(ry(angle(rng), q)); break;
        case 1: circ.ops.push_back(rz(angle(rng), q)); break;
        default: {
            int q2 = pick(rng);
            while (q2 == q) q2 = pick(rng);
            circ.ops.push_back(cry(angle(rng), q, q2));
        }
        }
    }
    return circ;
}

EncodedSample random_sample(int n_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 3.141592653589793);
    EncodedSample s;
    for (int q = 0; q < n_qubits; ++q) s.angles.push_back({angle(rng), angle(rng)});
    return s;
}

void BM_ApplyCircuit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CircuitSpec circ = random_layered(n, 100, 1);
    for (auto _ : state) benchmark::DoNotOptimize(run(circ));
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ApplyCircuit)->Arg(5)->Arg(9)->Arg(13)->Arg(17);

void BM_SwapTestExact(benchmark::State& state) {
    const int n_pairs = static_cast<int>(state.range(0));
    const ClassModel model = init_params(parse_stack("QC-S", n_pairs), 7);
    const EncodedSample sample = random_sample(n_pairs, 11);
    const CircuitSpec swap = build_swap_test(build_data_circuit(sample, 1),
                                             build_model_circuit(model, 1 + n_pairs),
                                             n_pairs);
    for (auto _ : state) benchmark::DoNotOptimize(estimate(swap, EstimateMode::exact()));
}
BENCHMARK(BM_SwapTestExact)->Arg(2)->Arg(4)->Arg(8);

void BM_SwapTestStates(benchmark::State& state) {
    const int n_pairs = static_cast<int>(state.range(0));
    const ClassModel model = init_params(parse_stack("QC-S", n_pairs), 7);
    const EncodedSample sample = random_sample(n_pairs, 11);
    const Statevector phi = run(build_data_circuit(sample, 0));
    const Statevector omega = run(build_model_circuit(model, 0));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_states(phi, omega, EstimateMode::exact()));
}
BENCHMARK(BM_SwapTestStates)->Arg(2)->Arg(4)->Arg(8);

void BM_GradParam(benchmark::State& state) {
    const int n_pairs = static_cast<int>(state.range(0));
    const ClassModel model = init_params(parse_stack("QC-S", n_pairs), 7);
    const EncodedSample sample = random_sample(n_pairs, 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_param(model, sample, 0, 1, EstimateMode::exact()));
}
BENCHMARK(BM_GradParam)->Arg(2)->Arg(8);

void BM_TrainEpoch(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Dataset data;
    data.dim = 4;
    data.class_count = 2;
    data.class_names = {"a", "b"};
    for (int i = 0; i < 40; ++i) {
        std::vector<double> x(4);
        for (double& v : x) v = unit(rng);
        data.samples.push_back({x, i % 2});
    }
    TrainConfig config;
    config.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(train(config, data));
}
BENCHMARK(BM_TrainEpoch);

} // namespace

BENCHMARK_MAIN();
