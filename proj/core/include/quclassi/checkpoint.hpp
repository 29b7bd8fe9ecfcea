#pragma once

#include <string>

#include "quclassi/trainer.hpp"

namespace quclassi {

inline constexpr int kCheckpointVersion = 1;

struct LoadedCheckpoint {
    TrainedModel model;
    TrainConfig config; // training-config echo
};

/// Versioned JSON text; doubles round-trip bit-exactly.
void save_checkpoint(const std::string& path, const TrainedModel& model,
                     const TrainConfig& config);
std::string checkpoint_to_text(const TrainedModel& model, const TrainConfig& config);

/// Throws CheckpointError on missing file, malformed JSON, or a
/// format_version mismatch.
LoadedCheckpoint load_checkpoint(const std::string& path);
LoadedCheckpoint checkpoint_from_text(const std::string& text);

} // namespace quclassi
