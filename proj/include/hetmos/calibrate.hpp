#pragma once

// Post-hoc scaling of the predicted aleatoric standard deviation by a single
// positive factor r, fitted in closed form on a held-out calibration set.
// The model is frozen, so only r enters the Gaussian NLL:
//   L(r) = C ln r + (1 / 2r^2) * sum_i (y_i - yhat_i)^2 / sigma_i^2 + const,
// minimized at r^2 = mean_i (y_i - yhat_i)^2 / sigma_i^2.

#include <cmath>
#include <span>
#include <string>

#include "hetmos/errors.hpp"
#include "hetmos/net.hpp"

namespace hetmos {

// Below this total normalized squared residual the fit is degenerate and r is floored.
inline constexpr double kDegenerateSum = 1e-12;
inline constexpr double kMinScale = 1e-6;

struct CalibrationScale {
  double r = 1.0;
  std::size_t num_samples_used = 0;
  double mean_normalized_residual_sq = 1.0;  // r^2
  std::string warning;                       // non-empty for a degenerate fit

  bool degenerate() const { return !warning.empty(); }
};

template <typename Scalar>
CalibrationScale fit_scale(std::span<const HeteroPrediction<Scalar>> preds, std::span<const Scalar> labels) {
  if (preds.empty()) throw InputError("calibration set is empty");
  if (preds.size() != labels.size()) throw InputError("predictions and labels differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double var = static_cast<double>(preds[i].sigma2);
    if (!(var > 0.0)) throw InvariantViolation("predicted variance must be positive at index " + std::to_string(i));
    const double e = static_cast<double>(labels[i]) - static_cast<double>(preds[i].y_hat);
    sum += e * e / var;
  }
  CalibrationScale scale;
  scale.num_samples_used = preds.size();
  if (sum < kDegenerateSum) {
    scale.r = kMinScale;
    scale.warning = "degenerate calibration fit: residuals are all ~0, r floored at 1e-6";
  } else {
    scale.r = std::sqrt(sum / static_cast<double>(preds.size()));
  }
  scale.mean_normalized_residual_sq = scale.r * scale.r;
  return scale;
}

template <typename Scalar>
HeteroPrediction<Scalar> apply_scale(const HeteroPrediction<Scalar>& pred, const CalibrationScale& scale) {
  using std::log;
  const Scalar r = static_cast<Scalar>(scale.r);
  return {pred.y_hat, pred.s + Scalar(2) * log(r), r * r * pred.sigma2};
}

}  // namespace hetmos
