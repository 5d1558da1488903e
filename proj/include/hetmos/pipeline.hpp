#pragma once

// Dataset-level glue between the model, calibration, MC dropout and metrics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetmos/calibrate.hpp"
#include "hetmos/datagen.hpp"
#include "hetmos/mcdropout.hpp"
#include "hetmos/metrics.hpp"
#include "hetmos/net.hpp"

namespace hetmos {

enum class UncertaintyKind { aleatoric, epi_pred, epi_dist, oracle };
enum class PointPrediction { deterministic, mc_mean };

UncertaintyKind uncertainty_from_string(const std::string& name);
std::string to_string(UncertaintyKind kind);
PointPrediction point_prediction_from_string(const std::string& name);

struct SamplePrediction {
  HeteroPrediction<double> det;  // deterministic pass, calibrated when a scale is given
  std::optional<MCResult<double>> mc;
};

// MC masks for sample i come from a seed derived from (cfg.seed, i), so two
// datasets of equal length see identical masks row for row.
MCConfig mc_config_for_sample(const MCConfig& cfg, std::size_t index);

std::vector<SamplePrediction> predict_dataset(const ModelParams<double>& model, const Dataset& data,
                                              const std::optional<CalibrationScale>& scale,
                                              const std::optional<MCConfig>& mc);

std::vector<HeteroPrediction<double>> deterministic_predictions(const ModelParams<double>& model, const Dataset& data);
std::vector<double> labels_of(const Dataset& data);

// Throws ConfigError when an epistemic kind is requested without MC results,
// or the oracle kind on samples lacking true_noise_var.
std::vector<EvalRecord> make_records(const Dataset& data, const std::vector<SamplePrediction>& preds,
                                     UncertaintyKind kind, PointPrediction point = PointPrediction::deterministic);

std::string report_to_json(const MetricsReport& report);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);
std::string sweep_to_csv(const std::vector<SweepPoint>& sweep);
// Header: id,y_mean,y_det,aleatoric_var,epi_pred_var,epi_dist_var
std::string mc_rows_to_csv(const Dataset& data, const std::vector<SamplePrediction>& preds);

}  // namespace hetmos
