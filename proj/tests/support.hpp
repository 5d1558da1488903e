#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hetmos/datagen.hpp"
#include "hetmos/metrics.hpp"
#include "hetmos/net.hpp"

namespace testsupport {

inline hetmos::ArchConfig small_arch(hetmos::Activation act = hetmos::Activation::tanh, double p = 0.5) {
  hetmos::ArchConfig a;
  a.input_dim = 3;
  a.trunk_dims = {4};
  a.head_hidden_dim = 4;
  a.dropout_p = p;
  a.activation = act;
  return a;
}

// Pointers to every scalar parameter, in canonical order.
inline std::vector<double*> flat_params(hetmos::ParamSet<double>& p) {
  std::vector<double*> out;
  hetmos::for_each_dense(p, [&out](hetmos::Dense<double>& d) {
    for (Eigen::Index i = 0; i < d.weight.size(); ++i) out.push_back(d.weight.data() + i);
    for (Eigen::Index i = 0; i < d.bias.size(); ++i) out.push_back(d.bias.data() + i);
  });
  return out;
}

inline std::vector<double> flat_values(hetmos::ParamSet<double> p) {
  std::vector<double> out;
  for (double* v : flat_params(p)) out.push_back(*v);
  return out;
}

inline hetmos::EvalRecord rec(double y_true, double y_pred, double var, std::string system = "s0",
                              std::optional<int> label = std::nullopt) {
  static int counter = 0;
  return {"r" + std::to_string(counter++), std::move(system), y_true, y_pred, var, label};
}

// P(positive outranks negative), ties count half, by enumerating every pair.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

// Pearson correlation of average ranks, written out longhand.
inline double spearman_longhand(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0.0, equal = 0.0;
      for (double w : v) {
        if (w < v[i]) less += 1.0;
        else if (w == v[i]) equal += 1.0;
      }
      r[i] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += ra[i] / n, mb += rb[i] / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline hetmos::Dataset tiny_dataset(int systems = 4, int per_system = 20, std::uint64_t seed = 3,
                                    hetmos::NoiseModel noise = hetmos::NoiseModel::heteroscedastic()) {
  hetmos::GenConfig cfg;
  cfg.num_systems = systems;
  cfg.samples_per_system = per_system;
  cfg.feature_dim = 3;
  cfg.noise = noise;
  cfg.seed = seed;
  return hetmos::gen_synthetic(cfg);
}

}  // namespace testsupport
