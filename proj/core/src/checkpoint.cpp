#include "quclassi/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace quclassi {

using nlohmann::json;

std::string checkpoint_to_text(const TrainedModel& model, const TrainConfig& config) {
    json j;
    j["format_version"] = kCheckpointVersion;
    j["encode"] = encode_mode_name(model.encode_mode);
    if (model.class_models.empty()) throw CheckpointError("no class models to save");
    const LayerStack& stack = model.class_models.front().stack;
    j["stack"] = stack_to_string(stack);
    j["pairing"] = pairing_name(stack.pairing);
    j["n_state_qubits"] = stack.n_state_qubits;
    j["class_names"] = model.class_names;
    json classes = json::array();
    for (const auto& m : model.class_models)
        classes.push_back({{"class_id", m.class_id}, {"theta", m.theta}});
    j["classes"] = classes;
    j["norm"] = {{"min", model.norm.min}, {"max", model.norm.max}};
    if (model.pca) {
        j["pca"] = {{"mean", model.pca->mean},
                    {"components", model.pca->components},
                    {"eigenvalues", model.pca->eigenvalues}};
    } else {
        j["pca"] = nullptr;
    }
    j["config"] = {{"learning_rate", config.learning_rate},
                   {"epochs", config.epochs},
                   {"shots", config.mode.shots},
                   {"seed", config.seed},
                   {"stack", config.stack},
                   {"pairing", pairing_name(config.pairing)},
                   {"encode", encode_mode_name(config.encode_mode)},
                   {"pca_k", config.pca_k},
                   {"negative_sampling", config.negative_sampling},
                   {"synchronous", config.synchronous}};
    // Wall times are deliberately left out so identical runs produce
    // identical files.
    json history = json::array();
    for (const auto& rec : model.history) {
        json h{{"epoch", rec.epoch},
               {"class_loss", rec.class_loss},
               {"train_accuracy", rec.train_accuracy}};
        if (rec.eval_accuracy >= 0.0) h["eval_accuracy"] = rec.eval_accuracy;
        history.push_back(h);
    }
    j["history"] = history;
    return j.dump(2) + "\n";
}

void save_checkpoint(const std::string& path, const TrainedModel& model,
                     const TrainConfig& config) {
    std::ofstream out(path);
    if (!out) throw CheckpointError("cannot write " + path);
    out << checkpoint_to_text(model, config);
}

LoadedCheckpoint checkpoint_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
    }
    try {
        const int version = j.at("format_version").get<int>();
        if (version != kCheckpointVersion)
            throw CheckpointError("checkpoint format_version " + std::to_string(version) +
                                  " is not supported (expected " +
                                  std::to_string(kCheckpointVersion) + ")");
        LoadedCheckpoint loaded;
        TrainedModel& model = loaded.model;
        model.encode_mode = encode_mode_from_name(j.at("encode").get<std::string>());
        LayerStack stack = parse_stack(j.at("stack").get<std::string>(),
                                       j.at("n_state_qubits").get<int>(),
                                       pairing_from_name(j.at("pairing").get<std::string>()));
        model.class_names = j.at("class_names").get<std::vector<std::string>>();
        for (const auto& c : j.at("classes")) {
            ClassModel m;
            m.stack = stack;
            m.class_id = c.at("class_id").get<int>();
            m.theta = c.at("theta").get<std::vector<double>>();
            if (static_cast<int>(m.theta.size()) != param_count(stack))
                throw CheckpointError("theta length does not match the stack");
            model.class_models.push_back(std::move(m));
        }
        if (model.class_models.empty()) throw CheckpointError("checkpoint has no classes");
        model.norm.min = j.at("norm").at("min").get<std::vector<double>>();
        model.norm.max = j.at("norm").at("max").get<std::vector<double>>();
        if (!j.at("pca").is_null()) {
            PcaModel pca;
            pca.mean = j["pca"].at("mean").get<std::vector<double>>();
            pca.components = j["pca"].at("components").get<std::vector<std::vector<double>>>();
            pca.eigenvalues = j["pca"].at("eigenvalues").get<std::vector<double>>();
            model.pca = std::move(pca);
        }
        for (const auto& h : j.at("history")) {
            EpochRecord rec;
            rec.epoch = h.at("epoch").get<int>();
            rec.class_loss = h.at("class_loss").get<std::vector<double>>();
            rec.train_accuracy = h.at("train_accuracy").get<double>();
            if (h.contains("eval_accuracy")) rec.eval_accuracy = h["eval_accuracy"].get<double>();
            model.history.push_back(std::move(rec));
        }
        const auto& cfg = j.at("config");
        loaded.config.learning_rate = cfg.at("learning_rate").get<double>();
        loaded.config.epochs = cfg.at("epochs").get<int>();
        const auto shots = cfg.at("shots").get<std::int64_t>();
        loaded.config.mode = shots > 0 ? EstimateMode::with_shots(shots, 0)
                                       : EstimateMode::exact();
        loaded.config.seed = cfg.at("seed").get<std::uint64_t>();
        loaded.config.stack = cfg.at("stack").get<std::string>();
        loaded.config.pairing = pairing_from_name(cfg.at("pairing").get<std::string>());
        loaded.config.encode_mode = encode_mode_from_name(cfg.at("encode").get<std::string>());
        loaded.config.pca_k = cfg.at("pca_k").get<int>();
        loaded.config.negative_sampling = cfg.at("negative_sampling").get<bool>();
        loaded.config.synchronous = cfg.at("synchronous").get<bool>();
        return loaded;
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
    }
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return checkpoint_from_text(ss.str());
}

} // namespace quclassi
