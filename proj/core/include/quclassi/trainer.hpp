#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "quclassi/dataprep.hpp"
#include "quclassi/fidelity.hpp"
#include "quclassi/model.hpp"

namespace quclassi {

struct TrainConfig {
    double learning_rate = 0.01;
    int epochs = 25;
    EstimateMode mode = EstimateMode::exact();
    std::uint64_t seed = 0;
    std::string stack = "QC-S";
    Pairing pairing = Pairing::Chain;
    EncodeMode encode_mode = EncodeMode::TwoPerQubit;
    int pca_k = 0; // 0 = no PCA stage
    bool negative_sampling = false;
    // When set, gradients for a sample are all evaluated at fixed theta and
    // applied together, instead of the default immediate per-parameter
    // (coordinate-wise) update. Enables parallel gradient evaluation.
    bool synchronous = false;
    int jobs = 1;
};

struct EpochRecord {
    int epoch = 0;
    std::vector<double> class_loss; // mean loss per class over the epoch
    double train_accuracy = -1.0;
    double eval_accuracy = -1.0; // -1 when no eval split was given
    double wall_ms = 0.0;
};

struct TrainedModel {
    std::vector<ClassModel> class_models; // one per class, shared stack
    NormStats norm;
    std::optional<PcaModel> pca;
    EncodeMode encode_mode = EncodeMode::TwoPerQubit;
    std::vector<std::string> class_names;
    std::vector<EpochRecord> history;
};

/// Cross-entropy on the (clamped) fidelity: -y log p - (1-y) log(1-p).
double sample_loss(double fidelity, int y);

/// Epoch-shrinking parameter shift pi / (2 sqrt(epoch)); epoch is 1-based.
double shift(int epoch);

/// Central shift-rule gradient of the per-sample cost with respect to
/// parameter `param_index`: 1/2 (C(theta+s) - C(theta-s)), s = shift(epoch).
/// Exactly two fidelity estimates are performed (seeds mode.seed and
/// mode.seed+1 in shots mode).
double grad_param(const ClassModel& model, const EncodedSample& sample, int param_index,
                  int epoch, const EstimateMode& mode, int y = 1);

/// Algorithm: per epoch, per class, per (shuffled) sample, per parameter,
/// immediate update theta_i -= lr * grad. The pipeline (optional PCA, then
/// min-max normalization, then angle encoding) is fitted on `train_data`
/// and stored in the returned model. `eval_data`, when given, is scored
/// each epoch. `metrics`, when given, receives one JSON object per epoch.
TrainedModel train(const TrainConfig& config, const Dataset& train_data,
                   const Dataset* eval_data = nullptr, std::ostream* metrics = nullptr);

/// Per-class exact fidelities softmaxed; argmax class, lowest id on ties.
std::pair<int, std::vector<double>> predict(const TrainedModel& trained,
                                            const std::vector<double>& raw_sample);

/// Per-class fidelities of a raw sample, before the softmax.
std::vector<double> class_fidelities(const TrainedModel& trained,
                                     const std::vector<double>& raw_sample);

/// Fraction of samples whose predicted class equals the label.
double evaluate(const TrainedModel& trained, const Dataset& data, int jobs = 1);

/// Softmax with the usual max-subtraction; sums to 1.
std::vector<double> softmax(const std::vector<double>& v);

/// splitmix64-style stream derivation for reproducible nested seeding.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

} // namespace quclassi
