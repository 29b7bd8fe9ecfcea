// Command-line front end: train / eval / predict / inspect.
//
// Exit codes: 0 success, 2 usage, 3 checkpoint, 4 input shape, 5 data format.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quclassi/checkpoint.hpp"
#include "quclassi/trainer.hpp"

using nlohmann::json;
using namespace quclassi;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCheckpoint = 3;
constexpr int kExitShape = 4;
constexpr int kExitFormat = 5;

struct DataOpts {
    std::string dataset;
    std::string iris_path = "data/iris.csv";
    std::string mnist_images, mnist_labels;
    std::string classes; // e.g. "3,6"; empty = all
    double split = 0.8;
    std::uint64_t seed = 0;
    int limit_train = 0, limit_test = 0; // per-class caps, 0 = no cap
};

void add_data_flags(CLI::App* cmd, DataOpts& opts) {
    cmd->add_option("--dataset", opts.dataset, "iris or mnist")
        ->required()
        ->check(CLI::IsMember({"iris", "mnist"}));
    cmd->add_option("--iris-path", opts.iris_path, "Iris CSV path");
    cmd->add_option("--mnist-images", opts.mnist_images, "IDX3 image file (optionally .gz)");
    cmd->add_option("--mnist-labels", opts.mnist_labels, "IDX1 label file (optionally .gz)");
    cmd->add_option("--classes", opts.classes, "comma list of class ids to keep, e.g. 3,6");
    cmd->add_option("--split", opts.split, "train fraction of the stratified split")
        ->check(CLI::Range(0.05, 0.95));
    cmd->add_option("--limit-train", opts.limit_train, "cap train samples per class (0 = all)");
    cmd->add_option("--limit-test", opts.limit_test, "cap test samples per class (0 = all)");
}

Dataset load_dataset(const DataOpts& opts) {
    if (opts.dataset == "iris") return load_iris(opts.iris_path);
    if (opts.mnist_images.empty() || opts.mnist_labels.empty())
        throw ConfigError("--mnist-images and --mnist-labels are required for --dataset mnist");
    return load_mnist(opts.mnist_images, opts.mnist_labels);
}

Dataset filter_class_list(const Dataset& data, const std::string& classes) {
    if (classes.empty()) return data;
    std::vector<int> keep;
    std::istringstream is(classes);
    std::string tok;
    while (std::getline(is, tok, ',')) keep.push_back(std::stoi(tok));
    return filter_classes(data, keep);
}

std::vector<double> parse_row(const std::string& row) {
    std::vector<double> out;
    std::istringstream is(row);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            // Non-numeric trailing cell (a label) is ignored.
            if (out.empty()) throw ParseError("bad numeric value `" + tok + "`");
        }
    }
    return out;
}

json confusion_json(const TrainedModel& model, const Dataset& data) {
    const int k = static_cast<int>(model.class_models.size());
    std::vector<std::vector<int>> confusion(k, std::vector<int>(k, 0));
    int correct = 0;
    for (const auto& s : data.samples) {
        const int pred = predict(model, s.features).first;
        ++confusion[s.label][pred];
        if (pred == s.label) ++correct;
    }
    return json{{"accuracy", double(correct) / double(data.samples.size())},
                {"confusion", confusion},
                {"n", data.samples.size()}};
}

int run_train(const DataOpts& data_opts, TrainConfig& config, const std::string& shots,
              const std::string& out_path, const std::string& metrics_path) {
    if (shots != "exact") config.mode = EstimateMode::with_shots(std::stoll(shots), config.seed);
    Dataset all = filter_class_list(load_dataset(data_opts), data_opts.classes);
    SplitResult split = stratified_split(all, data_opts.split, config.seed,
                                   data_opts.limit_train, data_opts.limit_test);

    std::ofstream metrics_file;
    std::ostream* metrics = nullptr;
    if (!metrics_path.empty()) {
        metrics_file.open(metrics_path);
        if (!metrics_file) throw ConfigError("cannot write " + metrics_path);
        metrics = &metrics_file;
    }
    TrainedModel model = train(config, split.train, &split.test, metrics);
    if (!out_path.empty()) save_checkpoint(out_path, model, config);

    const auto& last = model.history.back();
    std::cout << "train accuracy: " << last.train_accuracy << "\n";
    if (last.eval_accuracy >= 0) std::cout << "eval accuracy: " << last.eval_accuracy << "\n";
    return 0;
}

int run_eval(const DataOpts& data_opts, const std::string& model_path,
             const std::string& on, bool as_json) {
    LoadedCheckpoint loaded = load_checkpoint(model_path);
    Dataset all = filter_class_list(load_dataset(data_opts), data_opts.classes);
    SplitResult split = stratified_split(all, data_opts.split, loaded.config.seed,
                                   data_opts.limit_train, data_opts.limit_test);
    const Dataset& target = on == "train" ? split.train : (on == "all" ? all : split.test);
    const json report = confusion_json(loaded.model, target);
    if (as_json) {
        std::cout << report.dump() << "\n";
    } else {
        std::cout << "accuracy: " << report["accuracy"].get<double>() << " (n="
                  << report["n"].get<std::size_t>() << ")\n";
        std::cout << "confusion (rows = true class, cols = predicted):\n";
        for (const auto& row : report["confusion"]) {
            for (const auto& cell : row) std::cout << "  " << cell.get<int>();
            std::cout << "\n";
        }
    }
    return 0;
}

int run_predict(const std::string& model_path, std::string row,
                const std::string& input_file, const std::string& dump_circuit,
                bool as_json) {
    LoadedCheckpoint loaded = load_checkpoint(model_path);
    if (!input_file.empty()) {
        std::ifstream in(input_file);
        if (!in) throw ParseError("cannot open " + input_file);
        std::getline(in, row);
    }
    if (row.empty()) throw ConfigError("provide --input or --input-file");
    const std::vector<double> features = parse_row(row);
    const auto [cls, probs] = predict(loaded.model, features);

    if (!dump_circuit.empty()) {
        std::vector<double> x = features;
        if (loaded.model.pca) x = pca_transform_row(*loaded.model.pca, x);
        x = normalize_row(loaded.model.norm, x);
        const int n_pairs = loaded.model.class_models.front().stack.n_state_qubits;
        ClassModel shifted = loaded.model.class_models.front();
        const CircuitSpec data_circ =
            build_data_circuit(encode(x, loaded.model.encode_mode), 1);
        const CircuitSpec model_circ = build_model_circuit(shifted, 1 + n_pairs);
        std::ofstream out(dump_circuit);
        if (!out) throw ConfigError("cannot write " + dump_circuit);
        out << to_text(build_swap_test(data_circ, model_circ, n_pairs));
    }

    if (as_json) {
        std::cout << json{{"class", cls},
                          {"class_name", loaded.model.class_names[cls]},
                          {"probabilities", probs}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "class: " << loaded.model.class_names[cls] << " (id " << cls << ")\n";
        std::cout << "probabilities:";
        for (double p : probs) std::cout << " " << p;
        std::cout << "\n";
    }
    return 0;
}

int run_inspect(const std::string& model_path, int qubit) {
    LoadedCheckpoint loaded = load_checkpoint(model_path);
    json out = json::array();
    for (const auto& m : loaded.model.class_models) {
        const Statevector state = run(build_model_circuit(m, 0));
        json entry{{"class_id", m.class_id},
                   {"class_name", loaded.model.class_names[m.class_id]},
                   {"n_qubits", state.n_qubits}};
        json amps = json::array();
        for (const auto& a : state.amps) amps.push_back({a.real(), a.imag()});
        entry["amplitudes"] = amps;
        if (qubit >= 0) {
            entry["qubit"] = qubit;
            entry["p1"] = prob_of(state, qubit, 1);
        } else {
            json p1 = json::array();
            for (int q = 0; q < state.n_qubits; ++q) p1.push_back(prob_of(state, q, 1));
            entry["p1_per_qubit"] = p1;
        }
        out.push_back(entry);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QuClassi: quantum-classical classifier on a statevector simulator"};
    app.require_subcommand(1);

    DataOpts data_opts;
    TrainConfig config;
    std::string shots = "exact", out_path = "model.qc", metrics_path;
    std::string model_path, on = "test", row, input_file, dump_circuit;
    std::string pairing = "chain", encode_mode = "2per";
    bool as_json = false;
    int inspect_qubit = -1;

    auto* train_cmd = app.add_subcommand("train", "Train per-class models");
    add_data_flags(train_cmd, data_opts);
    train_cmd->add_option("--stack", config.stack, "QC-S, QC-D, QC-E, QC-SD, QC-SDE or e.g. S,D,E");
    train_cmd->add_option("--pairing", pairing)->check(CLI::IsMember({"chain", "all"}));
    train_cmd->add_option("--encode", encode_mode)->check(CLI::IsMember({"2per", "1per"}));
    train_cmd->add_option("--pca", config.pca_k, "PCA target dimension (0 = off)");
    train_cmd->add_option("--lr", config.learning_rate);
    train_cmd->add_option("--epochs", config.epochs)->check(CLI::PositiveNumber);
    train_cmd->add_option("--shots", shots, "N or `exact`");
    train_cmd->add_option("--seed", config.seed);
    train_cmd->add_flag("--negative-sampling", config.negative_sampling);
    train_cmd->add_flag("--synchronous", config.synchronous);
    train_cmd->add_option("--jobs", config.jobs)->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", out_path, "checkpoint path");
    train_cmd->add_option("--metrics-out", metrics_path, "JSON-lines metrics path");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
    add_data_flags(eval_cmd, data_opts);
    eval_cmd->add_option("--model", model_path)->required();
    eval_cmd->add_option("--on", on)->check(CLI::IsMember({"train", "test", "all"}));
    eval_cmd->add_flag("--json", as_json);

    auto* predict_cmd = app.add_subcommand("predict", "Classify one sample");
    predict_cmd->add_option("--model", model_path)->required();
    predict_cmd->add_option("--input", row, "inline CSV feature row");
    predict_cmd->add_option("--input-file", input_file, "file with one CSV feature row");
    predict_cmd->add_option("--dump-circuit", dump_circuit,
                            "write the class-0 SWAP-test circuit text here");
    predict_cmd->add_flag("--json", as_json);

    auto* inspect_cmd = app.add_subcommand("inspect", "Dump learned states as JSON");
    inspect_cmd->add_option("--model", model_path)->required();
    inspect_cmd->add_option("--qubit", inspect_qubit, "report one qubit's marginal only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        config.pairing = pairing_from_name(pairing);
        config.encode_mode = encode_mode_from_name(encode_mode);
        data_opts.seed = config.seed;
        if (train_cmd->parsed())
            return run_train(data_opts, config, shots, out_path, metrics_path);
        if (eval_cmd->parsed()) return run_eval(data_opts, model_path, on, as_json);
        if (predict_cmd->parsed())
            return run_predict(model_path, row, input_file, dump_circuit, as_json);
        if (inspect_cmd->parsed()) return run_inspect(model_path, inspect_qubit);
    } catch (const CheckpointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckpoint;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitShape;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitShape;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
