#pragma once

#include <cmath>

#include "hetmos/net.hpp"

namespace hetmos {

enum class LossKind { nll, mse };

template <typename Scalar>
struct LossValue {
  Scalar value{0};
  Scalar d_y_hat{0};
  Scalar d_s{0};
};

// Per-sample Gaussian negative log-likelihood in the log-variance
// parameterization, without the constant 0.5*ln(2*pi).
template <typename Scalar>
LossValue<Scalar> nll_loss(const HeteroPrediction<Scalar>& pred, Scalar y) {
  using std::exp;
  const Scalar residual = y - pred.y_hat;
  const Scalar inv_var = exp(-pred.s);
  const Scalar half_sq = Scalar(0.5) * residual * residual * inv_var;
  return {Scalar(0.5) * pred.s + half_sq, -residual * inv_var, Scalar(0.5) - half_sq};
}

// Squared error; the log-variance output is ignored.
template <typename Scalar>
LossValue<Scalar> mse_loss(const HeteroPrediction<Scalar>& pred, Scalar y) {
  const Scalar residual = y - pred.y_hat;
  return {residual * residual, Scalar(-2) * residual, Scalar(0)};
}

template <typename Scalar>
LossValue<Scalar> evaluate_loss(LossKind kind, const HeteroPrediction<Scalar>& pred, Scalar y) {
  return kind == LossKind::nll ? nll_loss(pred, y) : mse_loss(pred, y);
}

}  // namespace hetmos
