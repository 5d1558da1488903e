#pragma once

// Test-time Monte Carlo dropout. T stochastic passes with dropout active in
// both heads; the spread of the score outputs is the epistemic prediction
// uncertainty and the spread of the log-variance outputs is the epistemic
// distributional uncertainty. Both use the population (divide-by-T) variance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetmos/calibrate.hpp"
#include "hetmos/errors.hpp"
#include "hetmos/net.hpp"
#include "hetmos/rng.hpp"

namespace hetmos {

struct MCConfig {
  int T = 25;
  double dropout_p = 0.5;
  std::uint64_t seed = 0;

  void validate() const {
    if (T < 1) throw ConfigError("MC sample count T must be >= 1");
    if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ConfigError("MC dropout_p must lie in [0, 1)");
  }
};

template <typename Scalar>
struct MCResult {
  std::vector<Scalar> y_samples;
  std::vector<Scalar> s_samples;
  Scalar y_mean{0};
  Scalar s_mean{0};
  Scalar epi_pred_var{0};
  Scalar epi_dist_var{0};
  Scalar aleatoric_var{0};  // mean of exp(s_t), times r^2 when calibrated
};

// Two-pass population variance.
template <typename Scalar>
Scalar variance_of(std::span<const Scalar> samples) {
  if (samples.empty()) throw InputError("variance of an empty sample list");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) return Scalar(0);
  const Scalar n = static_cast<Scalar>(samples.size());
  Scalar mean{0};
  for (Scalar v : samples) mean += v;
  mean /= n;
  Scalar acc{0};
  Scalar comp{0};
  for (Scalar v : samples) {
    const Scalar d = v - mean;
    acc += d * d;
    comp += d;
  }
  // corrected two-pass: the compensation term is zero in exact arithmetic
  return (acc - comp * comp / n) / n;
}

template <typename Scalar>
Scalar mean_of(std::span<const Scalar> samples) {
  if (samples.empty()) throw InputError("mean of an empty sample list");
  Scalar acc{0};
  for (Scalar v : samples) acc += v;
  return acc / static_cast<Scalar>(samples.size());
}

// Builds an MCResult from already-drawn pass outputs.
template <typename Scalar>
MCResult<Scalar> summarize_samples(std::vector<Scalar> y_samples, std::vector<Scalar> s_samples,
                                   const std::optional<CalibrationScale>& scale = std::nullopt) {
  if (y_samples.empty() || y_samples.size() != s_samples.size())
    throw InputError("MC sample lists must be non-empty and of equal length");
  MCResult<Scalar> r;
  r.y_mean = mean_of<Scalar>(y_samples);
  r.s_mean = mean_of<Scalar>(s_samples);
  r.epi_pred_var = variance_of<Scalar>(y_samples);
  r.epi_dist_var = variance_of<Scalar>(s_samples);
  Scalar ale{0};
  for (Scalar s : s_samples) {
    using std::exp;
    ale += exp(s);
  }
  ale /= static_cast<Scalar>(s_samples.size());
  if (scale) ale *= static_cast<Scalar>(scale->r * scale->r);
  r.aleatoric_var = ale;
  r.y_samples = std::move(y_samples);
  r.s_samples = std::move(s_samples);
  return r;
}

// Pass t draws its masks from substream(cfg.seed, {kMcPass, t}), so passes are
// independent of each other and of evaluation order.
template <typename Scalar>
MCResult<Scalar> mc_forward(const ModelParams<Scalar>& m, const Vector<Scalar>& x,
                            const MCConfig& cfg, const std::optional<CalibrationScale>& scale = std::nullopt) {
  cfg.validate();
  std::vector<Scalar> ys(cfg.T), ss(cfg.T);
  for (int t = 0; t < cfg.T; ++t) {
    Rng rng = substream(cfg.seed, {stream::kMcPass, static_cast<std::uint64_t>(t)});
    const auto pred = forward(m, x, Mode::dropout, rng, cfg.dropout_p).pred;
    ys[t] = pred.y_hat;
    ss[t] = pred.s;
  }
  return summarize_samples(std::move(ys), std::move(ss), scale);
}

}  // namespace hetmos
