#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetmos/datagen.hpp"
#include "hetmos/loss.hpp"
#include "hetmos/net.hpp"

namespace hetmos {

enum class OptimizerKind { adam, sgd };

LossKind loss_from_string(const std::string& name);
std::string to_string(LossKind kind);
OptimizerKind optimizer_from_string(const std::string& name);
std::string to_string(OptimizerKind kind);

struct TrainConfig {
  int epochs = 50;
  int batch_size = 8;
  double learning_rate = 3e-4;
  LossKind loss = LossKind::nll;
  std::uint64_t seed = 0;
  OptimizerKind optimizer = OptimizerKind::adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

struct TrainHistory {
  std::vector<double> train_loss;  // mean per-sample loss over each epoch, dropout active
  std::vector<double> val_loss;    // deterministic forward; empty without a validation set
};

struct TrainResult {
  ModelParams<double> params;
  TrainHistory history;
};

// Mean training loss (same kind as the config) of a model on a dataset,
// deterministic forward pass.
double dataset_loss(const ModelParams<double>& model, const Dataset& data, LossKind kind);

// Mini-batch training with per-batch mean loss. Shuffling and dropout masks
// come from seed-derived streams, so the result is a pure function of the
// arguments. Throws TrainingDiverged on a non-finite loss.
TrainResult train(const Dataset& data, const ArchConfig& arch, const TrainConfig& cfg,
                  const Dataset* validation = nullptr);

std::string history_to_csv(const TrainHistory& history);

}  // namespace hetmos
