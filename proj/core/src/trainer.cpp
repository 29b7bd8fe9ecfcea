#include "quclassi/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

namespace quclassi {

double sample_loss(double fidelity, int y) {
    if (y != 0 && y != 1) throw ParameterError("y must be 0 or 1");
    const double p = clamp_fidelity(fidelity);
    return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

double shift(int epoch) {
    if (epoch < 1) throw ParameterError("epoch index is 1-based");
    return std::numbers::pi / (2.0 * std::sqrt(double(epoch)));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

Statevector model_state(const ClassModel& model) {
    return run(build_model_circuit(model, 0));
}

double cost_at(const ClassModel& model, const Statevector& data_state,
               const EstimateMode& mode, int y) {
    const auto est = estimate_states(data_state, model_state(model), mode);
    return sample_loss(est.fidelity, y);
}

double grad_on_state(ClassModel& model, const Statevector& data_state, int param_index,
                     int epoch, const EstimateMode& mode, int y) {
    const double s = shift(epoch);
    const double original = model.theta[param_index];
    EstimateMode fwd = mode, bck = mode;
    if (!mode.is_exact()) bck.seed = mode.seed + 1;

    model.theta[param_index] = original + s;
    const double c_fwd = cost_at(model, data_state, fwd, y);
    model.theta[param_index] = original - s;
    const double c_bck = cost_at(model, data_state, bck, y);
    model.theta[param_index] = original;
    return 0.5 * (c_fwd - c_bck);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& w : workers) w.join();
}

int argmax_lowest(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

} // namespace

double grad_param(const ClassModel& model, const EncodedSample& sample, int param_index,
                  int epoch, const EstimateMode& mode, int y) {
    if (param_index < 0 || param_index >= static_cast<int>(model.theta.size()))
        throw IndexError("param index out of range");
    ClassModel scratch = model;
    const Statevector data_state = run(build_data_circuit(sample, 0));
    return grad_on_state(scratch, data_state, param_index, epoch, mode, y);
}

std::vector<double> softmax(const std::vector<double>& v) {
    if (v.empty()) throw ParameterError("softmax of empty vector");
    const double m = *std::max_element(v.begin(), v.end());
    std::vector<double> out(v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) sum += out[i] = std::exp(v[i] - m);
    for (double& x : out) x /= sum;
    return out;
}

TrainedModel train(const TrainConfig& config, const Dataset& train_data,
                   const Dataset* eval_data, std::ostream* metrics) {
    if (config.learning_rate < 0.0) throw ConfigError("learning rate must be >= 0");
    if (config.epochs < 1) throw ConfigError("epochs must be >= 1");
    if (train_data.class_count < 2) throw ConfigError("need at least 2 classes");
    if (train_data.samples.empty()) throw ConfigError("empty training set");

    TrainedModel trained;
    trained.encode_mode = config.encode_mode;
    trained.class_names = train_data.class_names;

    // Pipeline: optional PCA, then min-max to [0,1], fitted on train only.
    Dataset train_feats = train_data;
    Dataset eval_feats;
    if (config.pca_k > 0) {
        trained.pca = pca_fit(train_data, config.pca_k);
        train_feats = pca_transform(*trained.pca, train_data);
        if (eval_data) eval_feats = pca_transform(*trained.pca, *eval_data);
    } else if (eval_data) {
        eval_feats = *eval_data;
    }
    trained.norm = fit_norm(train_feats);
    train_feats = normalize(trained.norm, train_feats);
    if (eval_data) eval_feats = normalize(trained.norm, eval_feats);

    const int n_classes = train_data.class_count;
    const int width = encoded_qubits(train_feats.dim, config.encode_mode);
    const LayerStack stack = parse_stack(config.stack, width, config.pairing);

    std::vector<Statevector> data_states;
    std::vector<int> labels;
    data_states.reserve(train_feats.samples.size());
    for (const auto& s : train_feats.samples) {
        data_states.push_back(run(build_data_circuit(
            encode(s.features, config.encode_mode), 0)));
        labels.push_back(s.label);
    }
    std::vector<Statevector> eval_states;
    std::vector<int> eval_labels;
    for (const auto& s : eval_feats.samples) {
        eval_states.push_back(run(build_data_circuit(
            encode(s.features, config.encode_mode), 0)));
        eval_labels.push_back(s.label);
    }

    std::vector<std::vector<int>> by_class(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(int(i));
    for (int c = 0; c < n_classes; ++c)
        if (by_class[c].empty())
            throw ConfigError("class " + std::to_string(c) + " has no training samples");

    for (int c = 0; c < n_classes; ++c)
        trained.class_models.push_back(init_params(stack, mix_seed(config.seed, 1000 + c), c));

    const int n_params = param_count(stack);
    std::uint64_t shot_counter = 0;
    auto next_mode = [&]() {
        EstimateMode m = config.mode;
        if (!m.is_exact()) m.seed = mix_seed(config.mode.seed, shot_counter += 2);
        return m;
    };

    auto accuracy_on = [&](const std::vector<Statevector>& states,
                           const std::vector<int>& lbs) {
        std::vector<Statevector> states_of_class;
        for (const auto& m : trained.class_models) states_of_class.push_back(model_state(m));
        std::atomic<int> correct{0};
        parallel_for(int(states.size()), config.jobs, [&](int i) {
            std::vector<double> fid(n_classes);
            for (int c = 0; c < n_classes; ++c)
                fid[c] = estimate_states(states[i], states_of_class[c],
                                         EstimateMode::exact()).fidelity;
            if (argmax_lowest(softmax(fid)) == lbs[i]) ++correct;
        });
        return states.empty() ? -1.0 : double(correct) / double(states.size());
    };

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        for (int c = 0; c < n_classes; ++c) {
            ClassModel& model = trained.class_models[c];
            std::vector<int> order;
            if (config.negative_sampling) {
                order.resize(labels.size());
                std::iota(order.begin(), order.end(), 0);
            } else {
                order = by_class[c];
            }
            std::mt19937_64 shuffle_rng(mix_seed(config.seed, std::uint64_t(epoch) * 131 + c));
            std::shuffle(order.begin(), order.end(), shuffle_rng);

            for (int i : order) {
                const int y = labels[i] == c ? 1 : 0;
                const Statevector& data_state = data_states[i];
                if (config.synchronous) {
                    std::vector<double> grads(n_params);
                    if (config.mode.is_exact()) {
                        parallel_for(n_params, config.jobs, [&](int p) {
                            ClassModel scratch = model;
                            grads[p] = grad_on_state(scratch, data_state, p, epoch,
                                                     config.mode, y);
                        });
                    } else {
                        for (int p = 0; p < n_params; ++p) {
                            ClassModel scratch = model;
                            grads[p] = grad_on_state(scratch, data_state, p, epoch,
                                                     next_mode(), y);
                        }
                    }
                    for (int p = 0; p < n_params; ++p)
                        model.theta[p] -= config.learning_rate * grads[p];
                } else {
                    for (int p = 0; p < n_params; ++p) {
                        const double g = grad_on_state(model, data_state, p, epoch,
                                                       next_mode(), y);
                        model.theta[p] -= config.learning_rate * g;
                    }
                }
            }
        }

        EpochRecord rec;
        rec.epoch = epoch;
        for (int c = 0; c < n_classes; ++c) {
            const Statevector omega = model_state(trained.class_models[c]);
            double loss = 0.0;
            for (int i : by_class[c])
                loss += sample_loss(
                    estimate_states(data_states[i], omega, EstimateMode::exact()).fidelity, 1);
            rec.class_loss.push_back(loss / double(by_class[c].size()));
        }
        rec.train_accuracy = accuracy_on(data_states, labels);
        if (!eval_states.empty()) rec.eval_accuracy = accuracy_on(eval_states, eval_labels);
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0).count();
        trained.history.push_back(rec);

        if (metrics) {
            nlohmann::json line{{"epoch", rec.epoch},
                                {"class_loss", rec.class_loss},
                                {"train_accuracy", rec.train_accuracy},
                                {"wall_ms", rec.wall_ms}};
            if (rec.eval_accuracy >= 0.0) line["eval_accuracy"] = rec.eval_accuracy;
            (*metrics) << line.dump() << "\n";
        }
    }
    return trained;
}

std::vector<double> class_fidelities(const TrainedModel& trained,
                                     const std::vector<double>& raw_sample) {
    std::vector<double> x = raw_sample;
    if (trained.pca) x = pca_transform_row(*trained.pca, x);
    x = normalize_row(trained.norm, x);
    const Statevector phi = run(build_data_circuit(encode(x, trained.encode_mode), 0));
    std::vector<double> fid;
    for (const auto& m : trained.class_models) {
        if (phi.n_qubits != m.stack.n_state_qubits)
            throw ShapeError("sample width does not match the trained model");
        fid.push_back(estimate_states(phi, model_state(m), EstimateMode::exact()).fidelity);
    }
    return fid;
}

std::pair<int, std::vector<double>> predict(const TrainedModel& trained,
                                            const std::vector<double>& raw_sample) {
    const auto probs = softmax(class_fidelities(trained, raw_sample));
    return {argmax_lowest(probs), probs};
}

double evaluate(const TrainedModel& trained, const Dataset& data, int jobs) {
    if (data.samples.empty()) throw ParameterError("evaluate: empty dataset");
    std::atomic<int> correct{0};
    parallel_for(int(data.samples.size()), jobs, [&](int i) {
        if (predict(trained, data.samples[i].features).first == data.samples[i].label)
            ++correct;
    });
    return double(correct) / double(data.samples.size());
}

} // namespace quclassi
