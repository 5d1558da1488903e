#pragma once

// Evaluation metrics for probabilistic score predictions: quality (MSE,
// system-level SRCC), uncertainty (NLL, UCE, sharpness), OOD discrimination
// (ROC AUC) and the two curve constructions used for reporting.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hetmos {

struct EvalRecord {
  std::string id;
  std::string system_id;
  double y_true = 0.0;
  double y_pred = 0.0;
  double var_pred = 0.0;  // the uncertainty under evaluation, squared score units
  std::optional<int> domain_label;  // 0 in-domain, 1 OOD

  double squared_error() const { return (y_true - y_pred) * (y_true - y_pred); }
};

struct MetricsReport {
  double mse = 0.0;
  double srcc_system = 0.0;
  std::optional<double> nll;  // absent when some var_pred is zero
  double uce = 0.0;
  double sharpness = 0.0;
  std::optional<double> auc;  // present only when both domain labels occur
};

inline constexpr double kHalfLog2Pi = 0.91893853320467274178;

double mse(std::span<const EvalRecord> records);

// Fractional ranks (1-based); tied values share the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Returns 0 when either side is constant.
double spearman(std::span<const double> a, std::span<const double> b);

// Spearman correlation between per-system mean labels and mean predictions.
double srcc_system(std::span<const EvalRecord> records);

double nll_metric(std::span<const EvalRecord> records, bool include_const = true);

// Uncertainty calibration error over `bins` equal-width variance bins spanning
// the observed [min, max] of var_pred; bins are right-closed, the first also
// contains the minimum. Per bin, err is the mean squared error and uncert the
// mean variance.
double uce(std::span<const EvalRecord> records, int bins = 10);

double sharpness(std::span<const EvalRecord> records);

// Mann-Whitney estimate of P(score_pos > score_neg), ties counting 1/2.
// Label 1 is the positive class.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct CurvePoint {
  double mean_uncert = 0.0;
  double mean_sq_err = 0.0;
};

// Records sorted by var_pred and cut into equal-count bins; the last bin
// absorbs the remainder.
std::vector<CurvePoint> error_uncertainty_curve(std::span<const EvalRecord> records, int num_bins = 10);

struct SweepPoint {
  double threshold = 0.0;
  double retained_fraction = 0.0;
  std::optional<double> subset_mse;  // absent when nothing is retained
};

// Keeps records with var_pred <= threshold and reports the MSE of what remains.
std::vector<SweepPoint> selective_sweep(std::span<const EvalRecord> records, std::span<const double> thresholds);

// Empirical var_pred quantiles at 1/count, 2/count, ..., 1 (nearest rank).
std::vector<double> quantile_thresholds(std::span<const EvalRecord> records, int count);

MetricsReport compute_report(std::span<const EvalRecord> records, int uce_bins = 10, bool nll_include_const = true);

}  // namespace hetmos
