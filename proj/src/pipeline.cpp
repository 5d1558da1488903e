#include "hetmos/pipeline.hpp"

#include <json.hpp>

#include "hetmos/errors.hpp"
#include "hetmos/io_util.hpp"
#include "hetmos/rng.hpp"

namespace hetmos {

UncertaintyKind uncertainty_from_string(const std::string& name) {
  if (name == "aleatoric") return UncertaintyKind::aleatoric;
  if (name == "epi-pred") return UncertaintyKind::epi_pred;
  if (name == "epi-dist") return UncertaintyKind::epi_dist;
  if (name == "oracle") return UncertaintyKind::oracle;
  throw ConfigError("unknown uncertainty '" + name + "' (expected aleatoric, epi-pred, epi-dist or oracle)");
}

std::string to_string(UncertaintyKind kind) {
  switch (kind) {
    case UncertaintyKind::aleatoric: return "aleatoric";
    case UncertaintyKind::epi_pred: return "epi-pred";
    case UncertaintyKind::epi_dist: return "epi-dist";
    case UncertaintyKind::oracle: return "oracle";
  }
  return "";
}

PointPrediction point_prediction_from_string(const std::string& name) {
  if (name == "det") return PointPrediction::deterministic;
  if (name == "mc-mean") return PointPrediction::mc_mean;
  throw ConfigError("unknown point prediction '" + name + "' (expected det or mc-mean)");
}

MCConfig mc_config_for_sample(const MCConfig& cfg, std::size_t index) {
  MCConfig out = cfg;
  out.seed = substream(cfg.seed, {stream::kMcSample, static_cast<std::uint64_t>(index)})();
  return out;
}

std::vector<SamplePrediction> predict_dataset(const ModelParams<double>& model, const Dataset& data,
                                              const std::optional<CalibrationScale>& scale,
                                              const std::optional<MCConfig>& mc) {
  if (mc) mc->validate();
  std::vector<SamplePrediction> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    SamplePrediction p;
    p.det = predict(model, data[i].features);
    if (scale) p.det = apply_scale(p.det, *scale);
    if (mc) p.mc = mc_forward(model, data[i].features, mc_config_for_sample(*mc, i), scale);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<HeteroPrediction<double>> deterministic_predictions(const ModelParams<double>& model, const Dataset& data) {
  std::vector<HeteroPrediction<double>> out;
  out.reserve(data.size());
  for (const auto& s : data) out.push_back(predict(model, s.features));
  return out;
}

std::vector<double> labels_of(const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size());
  for (const auto& s : data) out.push_back(s.y);
  return out;
}

std::vector<EvalRecord> make_records(const Dataset& data, const std::vector<SamplePrediction>& preds,
                                     UncertaintyKind kind, PointPrediction point) {
  if (data.size() != preds.size()) throw InputError("dataset and predictions differ in length");
  std::vector<EvalRecord> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = data[i];
    const auto& p = preds[i];
    const bool need_mc = point == PointPrediction::mc_mean || kind == UncertaintyKind::epi_pred ||
                         kind == UncertaintyKind::epi_dist;
    if (need_mc && !p.mc) throw ConfigError("requested quantity needs MC dropout samples (enable MC)");
    EvalRecord r;
    r.id = s.id;
    r.system_id = s.system_id;
    r.y_true = s.y;
    r.y_pred = point == PointPrediction::mc_mean ? p.mc->y_mean : p.det.y_hat;
    switch (kind) {
      case UncertaintyKind::aleatoric:
        r.var_pred = point == PointPrediction::mc_mean ? p.mc->aleatoric_var : p.det.sigma2;
        break;
      case UncertaintyKind::epi_pred: r.var_pred = p.mc->epi_pred_var; break;
      case UncertaintyKind::epi_dist: r.var_pred = p.mc->epi_dist_var; break;
      case UncertaintyKind::oracle:
        if (!s.true_noise_var) throw ConfigError("sample '" + s.id + "' has no true_noise_var for oracle uncertainty");
        r.var_pred = *s.true_noise_var;
        break;
    }
    r.domain_label = s.domain_tag == DomainTag::ood ? 1 : 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::string report_to_json(const MetricsReport& report) {
  using json = nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json doc{{"mse", report.mse},
           {"srcc_system", report.srcc_system},
           {"nll", opt(report.nll)},
           {"uce", report.uce},
           {"sharpness", report.sharpness},
           {"auc", opt(report.auc)}};
  return doc.dump(2) + "\n";
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "mean_uncert,mean_sq_err\n";
  for (const auto& p : curve) out += format_double(p.mean_uncert) + ',' + format_double(p.mean_sq_err) + '\n';
  return out;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
  std::string out = "threshold,retained_fraction,subset_mse\n";
  for (const auto& p : sweep) {
    out += format_double(p.threshold) + ',' + format_double(p.retained_fraction) + ',';
    if (p.subset_mse) out += format_double(*p.subset_mse);
    out += '\n';
  }
  return out;
}

std::string mc_rows_to_csv(const Dataset& data, const std::vector<SamplePrediction>& preds) {
  std::string out = "id,y_mean,y_det,aleatoric_var,epi_pred_var,epi_dist_var\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& p = preds[i];
    if (!p.mc) throw ConfigError("MC rows requested without MC samples");
    out += data[i].id + ',' + format_double(p.mc->y_mean) + ',' + format_double(p.det.y_hat) + ',' +
           format_double(p.mc->aleatoric_var) + ',' + format_double(p.mc->epi_pred_var) + ',' +
           format_double(p.mc->epi_dist_var) + '\n';
  }
  return out;
}

}  // namespace hetmos
