#include "hetmos/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "hetmos/errors.hpp"
#include "hetmos/rng.hpp"

namespace hetmos {

std::string to_string(DomainTag tag) { return tag == DomainTag::in_domain ? "in_domain" : "ood"; }

DomainTag domain_tag_from_string(const std::string& name) {
  if (name == "in_domain") return DomainTag::in_domain;
  if (name == "ood") return DomainTag::ood;
  throw InputError("unknown domain tag '" + name + "'");
}

void GenConfig::validate() const {
  if (num_systems < 1 || samples_per_system < 1 || feature_dim < 1)
    throw ConfigError("num_systems, samples_per_system and feature_dim must be positive");
  if (!(center_spread >= 0.0)) throw ConfigError("center_spread must be >= 0");
  switch (noise.kind) {
    case NoiseModel::Kind::homoscedastic:
      if (!(noise.sigma >= 0.0)) throw ConfigError("homoscedastic sigma must be >= 0");
      break;
    case NoiseModel::Kind::rater_panel:
      if (noise.raters < 1) throw ConfigError("rater panel needs at least one rater");
      if (!(noise.rater_sd > 0.0)) throw ConfigError("rater_sd must be > 0");
      break;
    case NoiseModel::Kind::heteroscedastic:
      break;
  }
}

double World::clean_score(const Eigen::VectorXd& x) const { return 3.0 + 2.0 * std::tanh(score_w.dot(x) + score_b); }

double World::noise_sd(const Eigen::VectorXd& x) const {
  return 0.05 + 0.5 / (1.0 + std::exp(-(noise_v.dot(x) + noise_c)));
}

World World::shifted(double shift) const {
  World w = *this;
  w.centers.rowwise() += (shift * shift_dir).transpose();
  return w;
}

World make_world(const GenConfig& cfg) {
  cfg.validate();
  Rng rng = substream(cfg.seed, {stream::kWorld});
  std::normal_distribution<double> unit(0.0, 1.0);
  const int d = cfg.feature_dim;
  const double proj_sd = 1.0 / std::sqrt(static_cast<double>(d));
  World w;
  w.centers.resize(cfg.num_systems, d);
  for (int k = 0; k < cfg.num_systems; ++k)
    for (int j = 0; j < d; ++j) w.centers(k, j) = cfg.center_spread * unit(rng);
  w.score_w.resize(d);
  for (int j = 0; j < d; ++j) w.score_w(j) = proj_sd * unit(rng);
  w.score_b = 0.25 * unit(rng);
  w.noise_v.resize(d);
  for (int j = 0; j < d; ++j) w.noise_v(j) = proj_sd * unit(rng);
  w.noise_c = 0.25 * unit(rng);
  w.shift_dir.resize(d);
  do {
    for (int j = 0; j < d; ++j) w.shift_dir(j) = unit(rng);
  } while (w.shift_dir.norm() == 0.0);
  w.shift_dir.normalize();
  return w;
}

namespace {

std::string system_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sys%03d", k);
  return buf;
}

Dataset generate(const GenConfig& cfg, const World& world, DomainTag tag, const std::string& id_prefix) {
  std::normal_distribution<double> unit(0.0, 1.0);
  const int d = cfg.feature_dim;
  Dataset out;
  out.reserve(static_cast<std::size_t>(cfg.num_systems) * cfg.samples_per_system);
  for (int k = 0; k < cfg.num_systems; ++k) {
    Rng rng = substream(cfg.seed, {stream::kSamples, cfg.sample_stream, static_cast<std::uint64_t>(k)});
    const std::string sys = system_name(k);
    for (int i = 0; i < cfg.samples_per_system; ++i) {
      Sample s;
      char id[64];
      std::snprintf(id, sizeof id, "%s%s_%05d", id_prefix.c_str(), sys.c_str(), i);
      s.id = id;
      s.system_id = sys;
      s.domain_tag = tag;
      s.features.resize(d);
      for (int j = 0; j < d; ++j) s.features(j) = world.centers(k, j) + unit(rng);
      const double g = world.clean_score(s.features);
      switch (cfg.noise.kind) {
        case NoiseModel::Kind::homoscedastic:
          s.y = g + cfg.noise.sigma * unit(rng);
          s.true_noise_var = cfg.noise.sigma * cfg.noise.sigma;
          break;
        case NoiseModel::Kind::heteroscedastic: {
          const double sd = world.noise_sd(s.features);
          s.y = g + sd * unit(rng);
          s.true_noise_var = sd * sd;
          break;
        }
        case NoiseModel::Kind::rater_panel: {
          double acc = 0.0;
          for (int r = 0; r < cfg.noise.raters; ++r) acc += g + cfg.noise.rater_sd * unit(rng);
          s.y = acc / cfg.noise.raters;
          s.true_noise_var = cfg.noise.rater_sd * cfg.noise.rater_sd / cfg.noise.raters;
          break;
        }
      }
      if (cfg.clip_labels) s.y = std::clamp(s.y, 1.0, 5.0);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Dataset gen_synthetic(const GenConfig& cfg) { return generate(cfg, make_world(cfg), DomainTag::in_domain, ""); }

Dataset gen_ood_shift(const GenConfig& cfg, double shift) {
  if (!(shift >= 0.0)) throw ConfigError("OOD shift must be >= 0");
  return generate(cfg, make_world(cfg).shifted(shift), DomainTag::ood, "ood_");
}

double global_feature_std(const Dataset& data) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : data) {
    sum += s.features.sum();
    n += static_cast<std::size_t>(s.features.size());
  }
  if (n == 0) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double acc = 0.0;
  for (const auto& s : data) acc += (s.features.array() - mean).square().sum();
  return std::sqrt(acc / static_cast<double>(n));
}

Dataset add_feature_noise(const Dataset& data, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw ConfigError("feature noise level must be >= 0");
  if (level == 0.0) return data;
  const double sd = level * global_feature_std(data);
  Rng rng = substream(seed, {stream::kFeatureNoise});
  std::normal_distribution<double> noise(0.0, sd);
  Dataset out = data;
  for (auto& s : out) {
    for (Eigen::Index j = 0; j < s.features.size(); ++j) s.features(j) += noise(rng);
    s.domain_tag = DomainTag::ood;
  }
  return out;
}

DatasetSplit split_dataset(const Dataset& data, const std::array<double, 3>& fractions, std::uint64_t seed) {
  for (double f : fractions)
    if (!(f >= 0.0)) throw ConfigError("split fractions must be non-negative");
  const double total = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");

  const std::size_t n = data.size();
  // small epsilon so that e.g. 0.15 * 1000 is not floored to 149
  const auto n_val = static_cast<std::size_t>(std::floor(n * fractions[1] + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * fractions[2] + 1e-9));
  const std::size_t n_train = n - n_val - n_test;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = substream(seed, {stream::kSplit});
  std::shuffle(order.begin(), order.end(), rng);

  DatasetSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    Dataset& dst = i < n_train ? split.train : (i < n_train + n_val ? split.val : split.test);
    dst.push_back(data[order[i]]);
  }
  // keep generation order inside each split
  auto by_id = [](const Sample& a, const Sample& b) { return a.id < b.id; };
  std::sort(split.train.begin(), split.train.end(), by_id);
  std::sort(split.val.begin(), split.val.end(), by_id);
  std::sort(split.test.begin(), split.test.end(), by_id);
  return split;
}

}  // namespace hetmos
