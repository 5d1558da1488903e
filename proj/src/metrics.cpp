#include "hetmos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "hetmos/errors.hpp"

namespace hetmos {
namespace {

void require_non_empty(std::span<const EvalRecord> records, const char* what) {
  if (records.empty()) throw InputError(std::string(what) + ": no records");
}

}  // namespace

double mse(std::span<const EvalRecord> records) {
  require_non_empty(records, "mse");
  double acc = 0.0;
  for (const auto& r : records) acc += r.squared_error();
  return acc / static_cast<double>(records.size());
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw InputError("spearman: need two equal-length lists of size >= 2");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - ma;
    const double db = rb[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double srcc_system(std::span<const EvalRecord> records) {
  struct Acc {
    double y_true = 0.0;
    double y_pred = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> systems;
  for (const auto& r : records) {
    auto& s = systems[r.system_id];
    s.y_true += r.y_true;
    s.y_pred += r.y_pred;
    ++s.n;
  }
  if (systems.size() < 2) throw InputError("srcc_system: need at least 2 distinct systems");
  std::vector<double> t, p;
  for (const auto& [id, s] : systems) {
    t.push_back(s.y_true / static_cast<double>(s.n));
    p.push_back(s.y_pred / static_cast<double>(s.n));
  }
  return spearman(t, p);
}

double nll_metric(std::span<const EvalRecord> records, bool include_const) {
  require_non_empty(records, "nll");
  double acc = 0.0;
  for (const auto& r : records) {
    if (!(r.var_pred > 0.0)) throw InputError("nll: var_pred must be positive (record '" + r.id + "')");
    acc += 0.5 * std::log(r.var_pred) + r.squared_error() / (2.0 * r.var_pred);
  }
  acc /= static_cast<double>(records.size());
  return include_const ? acc + kHalfLog2Pi : acc;
}

double uce(std::span<const EvalRecord> records, int bins) {
  require_non_empty(records, "uce");
  if (bins < 1) throw InputError("uce: bin count must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(
      records.begin(), records.end(), [](const auto& a, const auto& b) { return a.var_pred < b.var_pred; });
  const double lo = lo_it->var_pred;
  const double width = (hi_it->var_pred - lo) / bins;

  std::vector<double> err(bins, 0.0), unc(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (const auto& r : records) {
    int m = 0;
    if (width > 0.0) {
      m = static_cast<int>(std::ceil((r.var_pred - lo) / width)) - 1;
      m = std::clamp(m, 0, bins - 1);
    }
    err[m] += r.squared_error();
    unc[m] += r.var_pred;
    ++count[m];
  }
  const double n = static_cast<double>(records.size());
  double total = 0.0;
  for (int m = 0; m < bins; ++m) {
    if (count[m] == 0) continue;
    const double c = static_cast<double>(count[m]);
    total += (c / n) * std::abs(err[m] / c - unc[m] / c);
  }
  return total;
}

double sharpness(std::span<const EvalRecord> records) {
  require_non_empty(records, "sharpness");
  double acc = 0.0;
  for (const auto& r : records) acc += r.var_pred;
  return acc / static_cast<double>(records.size());
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw InputError("roc_auc: scores and labels differ in length");
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw InputError("roc_auc: labels must be 0 or 1");
    pos += static_cast<std::size_t>(l);
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw InputError("roc_auc: both classes must be present");
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1) rank_sum += ranks[i];
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

std::vector<CurvePoint> error_uncertainty_curve(std::span<const EvalRecord> records, int num_bins) {
  require_non_empty(records, "error_uncertainty_curve");
  if (num_bins < 1 || static_cast<std::size_t>(num_bins) > records.size())
    throw InputError("error_uncertainty_curve: bin count must lie in [1, number of records]");
  std::vector<const EvalRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->var_pred < b->var_pred; });

  const std::size_t per_bin = records.size() / static_cast<std::size_t>(num_bins);
  std::vector<CurvePoint> curve;
  for (int b = 0; b < num_bins; ++b) {
    const std::size_t begin = b * per_bin;
    const std::size_t end = b + 1 == num_bins ? sorted.size() : begin + per_bin;
    double u = 0.0, e = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      u += sorted[i]->var_pred;
      e += sorted[i]->squared_error();
    }
    const double c = static_cast<double>(end - begin);
    curve.push_back({u / c, e / c});
  }
  return curve;
}

std::vector<SweepPoint> selective_sweep(std::span<const EvalRecord> records, std::span<const double> thresholds) {
  require_non_empty(records, "selective_sweep");
  std::vector<SweepPoint> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    double acc = 0.0;
    std::size_t kept = 0;
    for (const auto& r : records) {
      if (r.var_pred <= t) {
        acc += r.squared_error();
        ++kept;
      }
    }
    SweepPoint p{t, static_cast<double>(kept) / static_cast<double>(records.size()), std::nullopt};
    if (kept > 0) p.subset_mse = acc / static_cast<double>(kept);
    out.push_back(p);
  }
  return out;
}

std::vector<double> quantile_thresholds(std::span<const EvalRecord> records, int count) {
  require_non_empty(records, "quantile_thresholds");
  if (count < 1) throw InputError("quantile_thresholds: count must be >= 1");
  std::vector<double> vars;
  vars.reserve(records.size());
  for (const auto& r : records) vars.push_back(r.var_pred);
  std::sort(vars.begin(), vars.end());
  std::vector<double> out;
  const double n = static_cast<double>(vars.size());
  for (int k = 1; k <= count; ++k) {
    auto idx = static_cast<std::size_t>(std::ceil(n * k / count));
    idx = std::clamp<std::size_t>(idx, 1, vars.size());
    out.push_back(vars[idx - 1]);
  }
  return out;
}

MetricsReport compute_report(std::span<const EvalRecord> records, int uce_bins, bool nll_include_const) {
  MetricsReport rep;
  rep.mse = mse(records);
  rep.srcc_system = srcc_system(records);
  const bool all_positive =
      std::all_of(records.begin(), records.end(), [](const auto& r) { return r.var_pred > 0.0; });
  if (all_positive) rep.nll = nll_metric(records, nll_include_const);
  rep.uce = uce(records, uce_bins);
  rep.sharpness = sharpness(records);

  std::vector<double> scores;
  std::vector<int> labels;
  bool has_pos = false, has_neg = false, complete = true;
  for (const auto& r : records) {
    if (!r.domain_label) {
      complete = false;
      break;
    }
    scores.push_back(r.var_pred);
    labels.push_back(*r.domain_label);
    (*r.domain_label == 1 ? has_pos : has_neg) = true;
  }
  if (complete && has_pos && has_neg) rep.auc = roc_auc(scores, labels);
  return rep;
}

}  // namespace hetmos
