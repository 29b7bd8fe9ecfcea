#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quclassi/statevec.hpp"

namespace quclassi {

struct Sample {
    std::vector<double> features;
    int label = 0;
};

struct Dataset {
    std::vector<Sample> samples;
    int dim = 0;
    int class_count = 0;
    std::vector<std::string> class_names; // index = class id
};

/// CSV with 4 numeric columns plus a string or integer class column.
/// A non-numeric first row is treated as a header.
Dataset load_iris(const std::string& path);

/// Big-endian IDX3 (images) / IDX1 (labels), optionally gzip-compressed
/// (detected by magic bytes). Pixels are scaled to [0,1] by /255.
Dataset load_mnist(const std::string& images_path, const std::string& labels_path);

/// Writes a raw IDX3/IDX1 pair (test and tooling support).
void write_idx(const std::string& images_path, const std::string& labels_path,
               const std::vector<std::vector<std::uint8_t>>& images,
               const std::vector<std::uint8_t>& labels, int rows, int cols);

struct SplitResult {
    Dataset train, test;
};

/// Seeded stratified split; per-class caps apply after splitting (0 = all).
SplitResult stratified_split(const Dataset& data, double train_fraction,
                             std::uint64_t seed, int limit_train = 0, int limit_test = 0);

/// Keeps only the listed class ids, relabelled by list position.
Dataset filter_classes(const Dataset& data, const std::vector<int>& keep);

struct NormStats {
    std::vector<double> min, max; // per dimension, from the fitting split
};

NormStats fit_norm(const Dataset& data);
/// Maps each dimension to [0,1] by the fitted min/max; out-of-range values
/// clamp; a constant dimension maps to 0.
std::vector<double> normalize_row(const NormStats& stats, const std::vector<double>& x);
Dataset normalize(const NormStats& stats, const Dataset& data);

struct PcaModel {
    std::vector<double> mean;
    std::vector<std::vector<double>> components; // k orthonormal rows, descending eigenvalue
    std::vector<double> eigenvalues;
};

/// Covariance eigendecomposition; sign convention: the largest-|entry|
/// coordinate of each component is positive.
PcaModel pca_fit(const Dataset& data, int k);
std::vector<double> pca_transform_row(const PcaModel& model, const std::vector<double>& x);
Dataset pca_transform(const PcaModel& model, const Dataset& data);

enum class EncodeMode { TwoPerQubit, OnePerQubit };

const char* encode_mode_name(EncodeMode mode);
EncodeMode encode_mode_from_name(const std::string& name);

/// Angle pairs (ry, rz) per data qubit, angles in [0, pi].
struct EncodedSample {
    std::vector<std::pair<double, double>> angles;
    int label = 0;
};

/// theta = 2*asin(sqrt(x)); two dimensions per qubit (RY then RZ), the last
/// rz padded with 0 for odd dimension. OnePerQubit puts one dimension per
/// qubit through RY alone.
EncodedSample encode(const std::vector<double>& x, EncodeMode mode = EncodeMode::TwoPerQubit);

/// Number of data qubits an encoded vector of dimension d occupies.
int encoded_qubits(int dim, EncodeMode mode);

/// Per data qubit: RY(ry) then RZ(rz), targets starting at qubit_offset.
CircuitSpec build_data_circuit(const EncodedSample& sample, int qubit_offset);

} // namespace quclassi
