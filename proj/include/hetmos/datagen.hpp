#pragma once

// Synthetic MOS-like data with known ground truth. Each system is a Gaussian
// cluster in feature space; the clean score is a bounded smooth function of
// the features and the label noise follows one of three models.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hetmos {

enum class DomainTag { in_domain, ood };

std::string to_string(DomainTag tag);
DomainTag domain_tag_from_string(const std::string& name);

struct Sample {
  std::string id;
  std::string system_id;
  Eigen::VectorXd features;
  double y = 0.0;
  DomainTag domain_tag = DomainTag::in_domain;
  std::optional<double> true_noise_var;
};

using Dataset = std::vector<Sample>;

struct NoiseModel {
  enum class Kind { homoscedastic, heteroscedastic, rater_panel };
  Kind kind = Kind::heteroscedastic;
  double sigma = 0.1;     // homoscedastic only
  int raters = 4;         // rater_panel only
  double rater_sd = 0.8;  // rater_panel only

  static NoiseModel homoscedastic(double sigma) { return {Kind::homoscedastic, sigma, 0, 0.0}; }
  static NoiseModel heteroscedastic() { return {Kind::heteroscedastic, 0.0, 0, 0.0}; }
  static NoiseModel rater_panel(int raters, double rater_sd) { return {Kind::rater_panel, 0.0, raters, rater_sd}; }
};

struct GenConfig {
  int num_systems = 20;
  int samples_per_system = 250;
  int feature_dim = 16;
  // Std of the per-system cluster centers around the origin.
  double center_spread = 1.0;
  NoiseModel noise;
  // Fixes the world: cluster centers, score and noise functions, shift direction.
  std::uint64_t seed = 0;
  // Selects an independent draw of samples from the same world.
  std::uint64_t sample_stream = 0;
  bool clip_labels = false;

  void validate() const;
};

// Everything about the data-generating process that does not vary per sample.
struct World {
  Eigen::MatrixXd centers;  // num_systems x feature_dim
  Eigen::VectorXd score_w;
  double score_b = 0.0;
  Eigen::VectorXd noise_v;
  double noise_c = 0.0;
  Eigen::VectorXd shift_dir;  // unit length

  // 3 + 2 tanh(w.x + b), always inside (1, 5).
  double clean_score(const Eigen::VectorXd& x) const;
  // 0.05 + 0.5 sigmoid(v.x + c); the heteroscedastic label noise std.
  double noise_sd(const Eigen::VectorXd& x) const;
  World shifted(double shift) const;
};

World make_world(const GenConfig& cfg);

Dataset gen_synthetic(const GenConfig& cfg);

// Same samples as gen_synthetic, with every cluster center moved `shift` units
// (within-cluster feature std) along the world's shift direction. Tagged ood.
Dataset gen_ood_shift(const GenConfig& cfg, double shift);

// Pooled population std over every feature entry of the dataset.
double global_feature_std(const Dataset& data);

// Adds N(0, (level * global_feature_std)^2) to every feature entry. Labels are
// untouched; samples become ood when level > 0.
Dataset add_feature_noise(const Dataset& data, double level, std::uint64_t seed);

// Maps a waveform-amplitude noise level onto the feature-noise scale used by
// add_feature_noise: a waveform level of 0.02 corresponds to noise as large as
// the feature spread itself.
inline constexpr double kWaveformToFeatureNoise = 50.0;
inline double feature_noise_analogue(double waveform_level) { return waveform_level * kWaveformToFeatureNoise; }

struct DatasetSplit {
  Dataset train;
  Dataset val;
  Dataset test;
};

// Random partition; val and test get floor(n * fraction), train the rest.
DatasetSplit split_dataset(const Dataset& data, const std::array<double, 3>& fractions, std::uint64_t seed);

}  // namespace hetmos
