#include "quclassi/dataprep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <zlib.h>

namespace quclassi {

namespace {

bool parse_double(const std::string& tok, double& out) {
    try {
        size_t pos = 0;
        out = std::stod(tok, &pos);
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        return pos == tok.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

} // namespace

Dataset load_iris(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Dataset data;
    data.dim = 4;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
        double v;
        if (lineno == 1 && !cells.empty() && !parse_double(cells[0], v))
            continue; // header row
        if (cells.size() > 5)
            throw ShapeError("line " + std::to_string(lineno) +
                             ": expected 4 feature columns + label, got " +
                             std::to_string(cells.size()) + " columns");
        if (cells.size() < 5)
            throw ParseError("line " + std::to_string(lineno) + ": expected 5 columns, got " +
                             std::to_string(cells.size()));
        Sample s;
        for (int i = 0; i < 4; ++i) {
            if (!parse_double(cells[i], v))
                throw ParseError("line " + std::to_string(lineno) + ": bad numeric value `" + cells[i] + "`");
            s.features.push_back(v);
        }
        const std::string& label = cells[4];
        auto it = std::find(data.class_names.begin(), data.class_names.end(), label);
        if (it == data.class_names.end()) {
            data.class_names.push_back(label);
            s.label = static_cast<int>(data.class_names.size()) - 1;
        } else {
            s.label = static_cast<int>(it - data.class_names.begin());
        }
        data.samples.push_back(std::move(s));
    }
    if (data.samples.empty()) throw ParseError(path + ": no data rows");
    data.class_count = static_cast<int>(data.class_names.size());
    return data;
}

namespace {

// gzread passes plain files through unchanged, so one path handles both
// raw and gzip-compressed IDX files.
std::vector<std::uint8_t> read_all_maybe_gz(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw FormatError("cannot open " + path);
    std::vector<std::uint8_t> out;
    std::uint8_t buf[1 << 16];
    int n;
    while ((n = gzread(f, buf, sizeof(buf))) > 0) out.insert(out.end(), buf, buf + n);
    const bool bad = n < 0;
    gzclose(f);
    if (bad) throw FormatError(path + ": decompression failed");
    return out;
}

std::uint32_t be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_be32(std::ofstream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {std::uint8_t(v >> 24), std::uint8_t(v >> 16),
                               std::uint8_t(v >> 8), std::uint8_t(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

} // namespace

Dataset load_mnist(const std::string& images_path, const std::string& labels_path) {
    const auto img = read_all_maybe_gz(images_path);
    const auto lab = read_all_maybe_gz(labels_path);
    if (img.size() < 16 || be32(img.data()) != 0x00000803u)
        throw FormatError(images_path + ": not an IDX3 image file");
    if (lab.size() < 8 || be32(lab.data()) != 0x00000801u)
        throw FormatError(labels_path + ": not an IDX1 label file");
    const std::uint32_t n = be32(img.data() + 4);
    const std::uint32_t rows = be32(img.data() + 8);
    const std::uint32_t cols = be32(img.data() + 12);
    if (be32(lab.data() + 4) != n)
        throw FormatError("image/label count mismatch: " + std::to_string(n) +
                          " vs " + std::to_string(be32(lab.data() + 4)));
    const std::size_t pix = std::size_t(rows) * cols;
    if (img.size() != 16 + std::size_t(n) * pix)
        throw FormatError(images_path + ": truncated image data");
    if (lab.size() != 8 + std::size_t(n))
        throw FormatError(labels_path + ": truncated label data");

    Dataset data;
    data.dim = static_cast<int>(pix);
    int max_label = 0;
    data.samples.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Sample s;
        s.features.resize(pix);
        const std::uint8_t* p = img.data() + 16 + std::size_t(i) * pix;
        for (std::size_t j = 0; j < pix; ++j) s.features[j] = p[j] / 255.0;
        s.label = lab[8 + i];
        max_label = std::max(max_label, s.label);
        data.samples.push_back(std::move(s));
    }
    data.class_count = max_label + 1;
    for (int c = 0; c < data.class_count; ++c) data.class_names.push_back(std::to_string(c));
    return data;
}

void write_idx(const std::string& images_path, const std::string& labels_path,
               const std::vector<std::vector<std::uint8_t>>& images,
               const std::vector<std::uint8_t>& labels, int rows, int cols) {
    if (images.size() != labels.size())
        throw ShapeError("write_idx: image/label count mismatch");
    std::ofstream im(images_path, std::ios::binary);
    put_be32(im, 0x00000803u);
    put_be32(im, static_cast<std::uint32_t>(images.size()));
    put_be32(im, rows);
    put_be32(im, cols);
    for (const auto& image : images) {
        if (static_cast<int>(image.size()) != rows * cols)
            throw ShapeError("write_idx: image size mismatch");
        im.write(reinterpret_cast<const char*>(image.data()), image.size());
    }
    std::ofstream lb(labels_path, std::ios::binary);
    put_be32(lb, 0x00000801u);
    put_be32(lb, static_cast<std::uint32_t>(labels.size()));
    lb.write(reinterpret_cast<const char*>(labels.data()), labels.size());
}

namespace {

// splitmix64-style mixer, kept in sync with trainer::mix_seed but local so
// dataprep does not depend on the trainer.
std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SplitResult stratified_split(const Dataset& data, double train_fraction,
                             std::uint64_t seed, int limit_train, int limit_test) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw ParameterError("train fraction must be in (0, 1)");
    SplitResult out;
    out.train.dim = out.test.dim = data.dim;
    out.train.class_count = out.test.class_count = data.class_count;
    out.train.class_names = out.test.class_names = data.class_names;
    for (int c = 0; c < data.class_count; ++c) {
        std::vector<int> idx;
        for (std::size_t i = 0; i < data.samples.size(); ++i)
            if (data.samples[i].label == c) idx.push_back(static_cast<int>(i));
        std::mt19937_64 rng(mix(seed, 777 + c));
        std::shuffle(idx.begin(), idx.end(), rng);
        const int cut = static_cast<int>(idx.size() * train_fraction);
        int n_train = cut;
        int n_test = static_cast<int>(idx.size()) - cut;
        if (limit_train > 0) n_train = std::min(n_train, limit_train);
        if (limit_test > 0) n_test = std::min(n_test, limit_test);
        for (int i = 0; i < n_train; ++i) out.train.samples.push_back(data.samples[idx[i]]);
        for (int i = 0; i < n_test; ++i) out.test.samples.push_back(data.samples[idx[cut + i]]);
    }
    return out;
}

Dataset filter_classes(const Dataset& data, const std::vector<int>& keep) {
    if (keep.empty()) return data;
    Dataset out;
    out.dim = data.dim;
    out.class_count = static_cast<int>(keep.size());
    for (int c : keep) {
        if (c < 0 || c >= data.class_count)
            throw ConfigError("class id " + std::to_string(c) + " out of range");
        out.class_names.push_back(data.class_names[c]);
    }
    for (const auto& s : data.samples) {
        auto it = std::find(keep.begin(), keep.end(), s.label);
        if (it == keep.end()) continue;
        out.samples.push_back({s.features, static_cast<int>(it - keep.begin())});
    }
    return out;
}

NormStats fit_norm(const Dataset& data) {
    if (data.samples.empty()) throw ParameterError("fit_norm: empty dataset");
    NormStats stats;
    stats.min.assign(data.dim, std::numeric_limits<double>::infinity());
    stats.max.assign(data.dim, -std::numeric_limits<double>::infinity());
    for (const auto& s : data.samples)
        for (int j = 0; j < data.dim; ++j) {
            stats.min[j] = std::min(stats.min[j], s.features[j]);
            stats.max[j] = std::max(stats.max[j], s.features[j]);
        }
    return stats;
}

std::vector<double> normalize_row(const NormStats& stats, const std::vector<double>& x) {
    if (x.size() != stats.min.size())
        throw ShapeError("normalize: dimension mismatch");
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double span = stats.max[j] - stats.min[j];
        out[j] = span > 0.0 ? std::clamp((x[j] - stats.min[j]) / span, 0.0, 1.0) : 0.0;
    }
    return out;
}

Dataset normalize(const NormStats& stats, const Dataset& data) {
    Dataset out = data;
    for (auto& s : out.samples) s.features = normalize_row(stats, s.features);
    return out;
}

PcaModel pca_fit(const Dataset& data, int k) {
    const int d = data.dim;
    const int n = static_cast<int>(data.samples.size());
    if (k < 1 || k > d) throw ParameterError("pca_fit: k must be in [1, dim]");
    if (n < 2) throw ParameterError("pca_fit: need at least 2 samples");

    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) x(i, j) = data.samples[i].features[j];
    Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    Eigen::MatrixXd cov = (x.transpose() * x) / double(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw ParameterError("pca_fit: eigensolver failed");

    PcaModel model;
    model.mean.assign(mean.data(), mean.data() + d);
    for (int c = 0; c < k; ++c) {
        const int src = d - 1 - c; // eigenvalues come back ascending
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        int imax = 0;
        for (int j = 1; j < d; ++j)
            if (std::abs(v(j)) > std::abs(v(imax))) imax = j;
        if (v(imax) < 0) v = -v;
        model.components.emplace_back(v.data(), v.data() + d);
        model.eigenvalues.push_back(std::max(0.0, solver.eigenvalues()(src)));
    }
    return model;
}

std::vector<double> pca_transform_row(const PcaModel& model, const std::vector<double>& x) {
    if (x.size() != model.mean.size())
        throw ShapeError("pca_transform: dimension mismatch");
    std::vector<double> out(model.components.size(), 0.0);
    for (std::size_t c = 0; c < model.components.size(); ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += model.components[c][j] * (x[j] - model.mean[j]);
        out[c] = acc;
    }
    return out;
}

Dataset pca_transform(const PcaModel& model, const Dataset& data) {
    Dataset out;
    out.dim = static_cast<int>(model.components.size());
    out.class_count = data.class_count;
    out.class_names = data.class_names;
    out.samples.reserve(data.samples.size());
    for (const auto& s : data.samples)
        out.samples.push_back({pca_transform_row(model, s.features), s.label});
    return out;
}

const char* encode_mode_name(EncodeMode mode) {
    return mode == EncodeMode::TwoPerQubit ? "2per" : "1per";
}

EncodeMode encode_mode_from_name(const std::string& name) {
    if (name == "2per") return EncodeMode::TwoPerQubit;
    if (name == "1per") return EncodeMode::OnePerQubit;
    throw ConfigError("unknown encode mode: " + name);
}

int encoded_qubits(int dim, EncodeMode mode) {
    if (dim < 1) throw ParameterError("dimension must be >= 1");
    return mode == EncodeMode::TwoPerQubit ? (dim + 1) / 2 : dim;
}

namespace {

double angle_of(double x) {
    if (x < 0.0 || x > 1.0)
        throw DomainError("encode: value " + std::to_string(x) + " outside [0,1]");
    return 2.0 * std::asin(std::sqrt(x));
}

} // namespace

EncodedSample encode(const std::vector<double>& x, EncodeMode mode) {
    if (x.empty()) throw ParameterError("encode: empty vector");
    EncodedSample out;
    if (mode == EncodeMode::OnePerQubit) {
        for (double v : x) out.angles.emplace_back(angle_of(v), 0.0);
        return out;
    }
    for (std::size_t j = 0; j + 1 < x.size(); j += 2)
        out.angles.emplace_back(angle_of(x[j]), angle_of(x[j + 1]));
    if (x.size() % 2 == 1) out.angles.emplace_back(angle_of(x.back()), 0.0);
    return out;
}

CircuitSpec build_data_circuit(const EncodedSample& sample, int qubit_offset) {
    if (qubit_offset < 0) throw IndexError("qubit offset must be >= 0");
    CircuitSpec circuit;
    circuit.n_qubits = qubit_offset + static_cast<int>(sample.angles.size());
    for (std::size_t j = 0; j < sample.angles.size(); ++j) {
        const int q = qubit_offset + static_cast<int>(j);
        circuit.ops.push_back(ry(sample.angles[j].first, q));
        circuit.ops.push_back(rz(sample.angles[j].second, q));
    }
    return circuit;
}

} // namespace quclassi
