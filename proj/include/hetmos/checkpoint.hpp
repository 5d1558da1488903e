#pragma once

// Checkpoint file: one JSON document
//   {format_version, arch, weights, biases, rng_seed_used, calibration_r?}
// weights/biases are grouped as {trunk: [...], score_head: [hidden, out],
// logvar_head: [hidden, out]}; matrices are row-major nested arrays.
// Serialization is canonical (sorted keys, fixed indentation), so
// load -> save reproduces the file byte for byte.

#include <optional>
#include <string>

#include "hetmos/net.hpp"

namespace hetmos {

inline constexpr int kCheckpointFormatVersion = 1;

struct Checkpoint {
  ModelParams<double> model;
  std::optional<double> calibration_r;  // absent: uncalibrated
};

std::string checkpoint_to_string(const Checkpoint& ckpt);
Checkpoint checkpoint_from_string(const std::string& text, const std::string& source = "<memory>");

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace hetmos
