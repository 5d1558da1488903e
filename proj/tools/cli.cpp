#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "hetmos/checkpoint.hpp"
#include "hetmos/dataset_io.hpp"
#include "hetmos/errors.hpp"
#include "hetmos/io_util.hpp"
#include "hetmos/pipeline.hpp"
#include "hetmos/trainer.hpp"

namespace hetmos::cli {
namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"gen-data", "train", "calibrate", "evaluate", "ood-detect"};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_integral_v<T>) {
        out.push_back(static_cast<T>(std::stol(item)));
      } else {
        out.push_back(static_cast<T>(parse_double(item, what)));
      }
    } catch (const std::logic_error&) {
      throw ConfigError(std::string("cannot parse '") + item + "' in " + what);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

// Inserts `--key value` pairs from a JSON config file right after the
// subcommand name, so that explicit command-line flags (which come later and
// win under the take-last policy) override file values. The file may be flat
// or hold one object per subcommand.
std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::size_t sub_pos = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (sub_pos == args.size() && std::find(kCommands.begin(), kCommands.end(), args[i]) != kCommands.end())
      sub_pos = i;
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty() || sub_pos == args.size()) return args;

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(config_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

  std::vector<std::string> injected;
  auto add = [&injected](const std::string& key, const nlohmann::json& v) {
    if (v.is_boolean()) {
      if (v.get<bool>()) injected.push_back("--" + key);
      return;
    }
    injected.push_back("--" + key);
    if (v.is_string()) {
      injected.push_back(v.get<std::string>());
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      injected.push_back(joined);
    } else {
      injected.push_back(v.dump());
    }
  };
  const std::string& sub = args[sub_pos];
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kCommands.begin(), kCommands.end(), key) != kCommands.end()) continue;
    add(key, value);
  }
  if (doc.contains(sub) && doc[sub].is_object())
    for (const auto& [key, value] : doc[sub].items()) add(key, value);

  std::vector<std::string> out(args.begin(), args.begin() + static_cast<long>(sub_pos) + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + static_cast<long>(sub_pos) + 1, args.end());
  return out;
}

// Every option of the subcommand with its effective value.
void write_resolved_config(const CLI::App& sub, const std::string& main_output) {
  ojson opts = ojson::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    const auto& results = opt->results();
    if (!results.empty()) {
      opts[name] = results.back();
    } else if (opt->get_type_size() == 0) {
      opts[name] = false;
    } else {
      opts[name] = opt->get_default_str();
    }
  }
  ojson doc{{"command", sub.get_name()}, {"options", std::move(opts)}};
  write_file_atomic(main_output + ".config.json", doc.dump(2) + "\n");
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

std::optional<CalibrationScale> scale_from(const Checkpoint& ckpt, bool ignore) {
  if (!ckpt.calibration_r || ignore) return std::nullopt;
  CalibrationScale s;
  s.r = *ckpt.calibration_r;
  s.mean_normalized_residual_sq = s.r * s.r;
  return s;
}

void check_input_dim(const Dataset& data, const ModelParams<double>& model, const std::string& path) {
  if (data.empty()) throw InputError("dataset '" + path + "' has no samples");
  if (data.front().features.size() != model.arch.input_dim)
    throw ShapeError("dataset '" + path + "' has " + std::to_string(data.front().features.size()) +
                     " features, model expects " + std::to_string(model.arch.input_dim));
}

// ---------------------------------------------------------------- gen-data

struct GenOptions {
  std::string preset = "heteroscedastic";
  std::uint64_t seed = 0;
  std::uint64_t sample_stream = 0;
  int num_systems = 20;
  int samples_per_system = 250;
  int feature_dim = 16;
  double center_spread = 1.0;
  double sigma = 0.1;
  int raters = 4;
  double rater_sd = 0.8;
  double ood_shift = 0.0;
  double noise_level = 0.0;
  double noise_analogue = 0.0;
  std::optional<std::uint64_t> noise_seed;
  bool clip_labels = false;
  std::string split;
  std::optional<std::uint64_t> split_seed;
  std::string out;
};

void setup_gen(CLI::App& sub, GenOptions& o) {
  sub.add_option("--preset", o.preset, "Noise model")
      ->check(CLI::IsMember({"heteroscedastic", "homoscedastic", "rater-panel"}));
  sub.add_option("--seed", o.seed, "World seed (centers, score and noise functions)");
  sub.add_option("--sample-stream", o.sample_stream, "Independent sample draw from the same world");
  sub.add_option("--num-systems", o.num_systems);
  sub.add_option("--samples-per-system", o.samples_per_system);
  sub.add_option("--feature-dim", o.feature_dim);
  sub.add_option("--center-spread", o.center_spread, "Std of system cluster centers");
  sub.add_option("--sigma", o.sigma, "Label noise std (homoscedastic)");
  sub.add_option("--raters", o.raters, "Raters per sample (rater-panel)");
  sub.add_option("--rater-sd", o.rater_sd, "Per-rater noise std (rater-panel)");
  sub.add_option("--ood-shift", o.ood_shift, "Translate cluster centers by this many units; tags samples ood");
  auto* lvl = sub.add_option("--noise-level", o.noise_level, "Additive feature noise, multiple of global feature std");
  auto* ana = sub.add_option("--noise-analogue", o.noise_analogue, "Feature noise given as a waveform-level analogue");
  lvl->excludes(ana);
  sub.add_option("--noise-seed", o.noise_seed, "Seed for feature noise (default: --seed)");
  sub.add_flag("--clip-labels", o.clip_labels, "Clip labels to [1, 5]");
  sub.add_option("--split", o.split, "train,val,test fractions, e.g. 0.7,0.15,0.15");
  sub.add_option("--split-seed", o.split_seed, "Seed for the split permutation (default: --seed)");
  sub.add_option("--out", o.out, "Output CSV; with --split, the stem of <stem>_{train,val,test}.csv")->required();
}

int cmd_gen_data(const CLI::App& sub, const GenOptions& o) {
  GenConfig cfg;
  cfg.num_systems = o.num_systems;
  cfg.samples_per_system = o.samples_per_system;
  cfg.feature_dim = o.feature_dim;
  cfg.center_spread = o.center_spread;
  cfg.seed = o.seed;
  cfg.sample_stream = o.sample_stream;
  cfg.clip_labels = o.clip_labels;
  if (o.preset == "homoscedastic") cfg.noise = NoiseModel::homoscedastic(o.sigma);
  else if (o.preset == "rater-panel") cfg.noise = NoiseModel::rater_panel(o.raters, o.rater_sd);
  else cfg.noise = NoiseModel::heteroscedastic();
  cfg.validate();

  Dataset data = o.ood_shift > 0.0 ? gen_ood_shift(cfg, o.ood_shift) : gen_synthetic(cfg);
  const double level = o.noise_analogue > 0.0 ? feature_noise_analogue(o.noise_analogue) : o.noise_level;
  data = add_feature_noise(data, level, o.noise_seed.value_or(o.seed));

  ojson summary{{"samples", data.size()}};
  if (o.split.empty()) {
    write_dataset_csv(o.out, data);
    summary["files"] = {o.out};
  } else {
    const auto f = parse_list<double>(o.split, "--split");
    if (f.size() != 3) throw ConfigError("--split needs exactly three fractions");
    const auto parts = split_dataset(data, {f[0], f[1], f[2]}, o.split_seed.value_or(o.seed));
    const std::string train = sibling_path(o.out, "_train.csv");
    const std::string val = sibling_path(o.out, "_val.csv");
    const std::string test = sibling_path(o.out, "_test.csv");
    write_dataset_csv(train, parts.train);
    write_dataset_csv(val, parts.val);
    write_dataset_csv(test, parts.test);
    summary["files"] = {train, val, test};
    summary["sizes"] = {parts.train.size(), parts.val.size(), parts.test.size()};
  }
  write_resolved_config(sub, o.out);
  std::cout << summary.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  std::string data;
  std::string val;
  std::string out;
  std::string history;
  std::string preset;
  int epochs = 50;
  int batch_size = 8;
  double lr = 3e-4;
  std::string loss = "nll";
  std::string optimizer = "adam";
  std::uint64_t seed = 0;
  std::string trunk = "32";
  int head_hidden = 16;
  double dropout = 0.5;
  std::string activation = "tanh";
};

void setup_train(CLI::App& sub, TrainOptions& o) {
  sub.add_option("--data", o.data, "Training CSV")->required();
  sub.add_option("--val", o.val, "Validation CSV (reported per epoch)");
  sub.add_option("--out", o.out, "Checkpoint JSON to write")->required();
  sub.add_option("--history", o.history, "History CSV (default: <out stem>_history.csv)");
  sub.add_option("--preset", o.preset, "'paper': batch 8, lr 0.0003, dropout 0.5")->check(CLI::IsMember({"paper"}));
  sub.add_option("--epochs", o.epochs);
  sub.add_option("--batch-size", o.batch_size);
  sub.add_option("--lr", o.lr);
  sub.add_option("--loss", o.loss)->check(CLI::IsMember({"nll", "mse"}));
  sub.add_option("--optimizer", o.optimizer)->check(CLI::IsMember({"adam", "sgd"}));
  sub.add_option("--seed", o.seed);
  sub.add_option("--trunk", o.trunk, "Comma-separated trunk widths");
  sub.add_option("--head-hidden", o.head_hidden);
  sub.add_option("--dropout", o.dropout, "Head dropout rate during training");
  sub.add_option("--activation", o.activation)->check(CLI::IsMember({"tanh", "relu"}));
}

int cmd_train(const CLI::App& sub, TrainOptions o) {
  if (o.preset == "paper") {
    if (sub.count("--batch-size") == 0) o.batch_size = 8;
    if (sub.count("--lr") == 0) o.lr = 3e-4;
    if (sub.count("--dropout") == 0) o.dropout = 0.5;
  }
  const Dataset data = read_dataset_csv(o.data);
  if (data.empty()) throw InputError("training dataset '" + o.data + "' has no samples");
  std::optional<Dataset> val;
  if (!o.val.empty()) val = read_dataset_csv(o.val);

  ArchConfig arch;
  arch.input_dim = static_cast<int>(data.front().features.size());
  arch.trunk_dims = parse_list<int>(o.trunk, "--trunk");
  arch.head_hidden_dim = o.head_hidden;
  arch.dropout_p = o.dropout;
  arch.activation = activation_from_string(o.activation);

  TrainConfig cfg;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch_size;
  cfg.learning_rate = o.lr;
  cfg.loss = loss_from_string(o.loss);
  cfg.optimizer = optimizer_from_string(o.optimizer);
  cfg.seed = o.seed;

  const auto result = train(data, arch, cfg, val ? &*val : nullptr);
  save_checkpoint(Checkpoint{result.params, std::nullopt}, o.out);
  const std::string history = o.history.empty() ? sibling_path(o.out, "_history.csv") : o.history;
  write_file_atomic(history, history_to_csv(result.history));
  write_resolved_config(sub, o.out);

  ojson summary{{"checkpoint", o.out},
                {"history", history},
                {"final_train_loss", result.history.train_loss.back()}};
  if (!result.history.val_loss.empty()) summary["final_val_loss"] = result.history.val_loss.back();
  std::cout << summary.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateOptions {
  std::string checkpoint;
  std::string data;
  std::string out;
};

void setup_calibrate(CLI::App& sub, CalibrateOptions& o) {
  sub.add_option("--checkpoint", o.checkpoint, "Trained checkpoint")->required();
  sub.add_option("--data", o.data, "Calibration CSV (the validation split)")->required();
  sub.add_option("--out", o.out, "Checkpoint to write with calibration_r set")->required();
}

// An already-calibrated checkpoint is refitted on its calibrated outputs and
// the factors compose, so the stored r stays the total scale.
int cmd_calibrate(const CLI::App& sub, const CalibrateOptions& o) {
  Checkpoint ckpt = load_checkpoint(o.checkpoint);
  const Dataset data = read_dataset_csv(o.data);
  check_input_dim(data, ckpt.model, o.data);

  auto preds = deterministic_predictions(ckpt.model, data);
  if (auto existing = scale_from(ckpt, false))
    for (auto& p : preds) p = apply_scale(p, *existing);
  const auto labels = labels_of(data);
  const CalibrationScale fitted = fit_scale<double>(preds, labels);
  if (fitted.degenerate()) std::cerr << "warning: " << fitted.warning << "\n";

  const double total = ckpt.calibration_r.value_or(1.0) * fitted.r;
  ckpt.calibration_r = total;
  save_checkpoint(ckpt, o.out);
  write_resolved_config(sub, o.out);

  ojson summary{{"fitted_r", fitted.r},
                {"calibration_r", total},
                {"num_samples_used", fitted.num_samples_used},
                {"degenerate", fitted.degenerate()}};
  std::cout << summary.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct McOptions {
  bool enabled = false;
  int samples = 25;
  double p = 0.5;
  std::uint64_t seed = 0;
};

void setup_mc(CLI::App& sub, McOptions& o) {
  sub.add_flag("--mc", o.enabled, "Run MC dropout (implied by epistemic uncertainties)");
  sub.add_option("--mc-samples", o.samples, "MC passes T");
  sub.add_option("--mc-p", o.p, "MC dropout rate");
  sub.add_option("--mc-seed", o.seed, "MC mask seed");
}

struct EvaluateOptions {
  std::string checkpoint;
  std::string data;
  std::string report;
  std::string preset;
  int bins = 10;
  int curve_bins = 10;
  std::string uncertainty = "aleatoric";
  std::string point = "det";
  std::vector<double> thresholds;
  bool no_nll_const = false;
  bool ignore_calibration = false;
  McOptions mc;
};

void setup_evaluate(CLI::App& sub, EvaluateOptions& o) {
  sub.add_option("--checkpoint", o.checkpoint)->required();
  sub.add_option("--data", o.data, "Test CSV")->required();
  sub.add_option("--report", o.report, "Metrics report JSON; curve CSVs are written next to it")->required();
  sub.add_option("--preset", o.preset, "'paper': MC T=25, p=0.5, UCE bins 10")->check(CLI::IsMember({"paper"}));
  sub.add_option("--bins", o.bins, "UCE bins M");
  sub.add_option("--curve-bins", o.curve_bins, "Equal-count bins of the error-uncertainty curve");
  sub.add_option("--uncertainty", o.uncertainty, "Variance placed in var_pred")
      ->check(CLI::IsMember({"aleatoric", "epi-pred", "epi-dist", "oracle"}));
  sub.add_option("--point", o.point, "Point prediction: deterministic pass or MC mean")
      ->check(CLI::IsMember({"det", "mc-mean"}));
  sub.add_option("--thresholds", o.thresholds, "Selective-prediction thresholds (default: deciles of var_pred)")
      ->delimiter(',');
  sub.add_flag("--no-nll-const", o.no_nll_const, "Exclude 0.5*ln(2*pi) from the NLL metric");
  sub.add_flag("--ignore-calibration", o.ignore_calibration, "Evaluate without the checkpoint's calibration_r");
  setup_mc(sub, o.mc);
}

std::optional<MCConfig> mc_config(const CLI::App& sub, McOptions o, const std::string& preset, bool required) {
  if (preset == "paper") {
    o.enabled = true;
    if (sub.count("--mc-samples") == 0) o.samples = 25;
    if (sub.count("--mc-p") == 0) o.p = 0.5;
  }
  if (!o.enabled && !required) return std::nullopt;
  MCConfig cfg{o.samples, o.p, o.seed};
  cfg.validate();
  return cfg;
}

int cmd_evaluate(const CLI::App& sub, EvaluateOptions o) {
  if (o.preset == "paper" && sub.count("--bins") == 0) o.bins = 10;
  const Checkpoint ckpt = load_checkpoint(o.checkpoint);
  const Dataset data = read_dataset_csv(o.data);
  check_input_dim(data, ckpt.model, o.data);

  const auto kind = uncertainty_from_string(o.uncertainty);
  const auto point = point_prediction_from_string(o.point);
  const bool need_mc =
      kind == UncertaintyKind::epi_pred || kind == UncertaintyKind::epi_dist || point == PointPrediction::mc_mean;
  const auto mc = mc_config(sub, o.mc, o.preset, need_mc);

  const auto preds = predict_dataset(ckpt.model, data, scale_from(ckpt, o.ignore_calibration), mc);
  const auto records = make_records(data, preds, kind, point);
  const auto report = compute_report(records, o.bins, !o.no_nll_const);
  const auto curve = error_uncertainty_curve(records, std::min<int>(o.curve_bins, static_cast<int>(records.size())));
  const auto thresholds = o.thresholds.empty() ? quantile_thresholds(records, 10) : o.thresholds;
  const auto sweep = selective_sweep(records, thresholds);

  write_file_atomic(o.report, report_to_json(report));
  write_file_atomic(sibling_path(o.report, "_error_uncertainty.csv"), curve_to_csv(curve));
  write_file_atomic(sibling_path(o.report, "_selective.csv"), sweep_to_csv(sweep));
  if (mc) write_file_atomic(sibling_path(o.report, "_mc.csv"), mc_rows_to_csv(data, preds));
  write_resolved_config(sub, o.report);
  std::cout << report_to_json(report);
  return kOk;
}

// ---------------------------------------------------------------- ood-detect

struct OodOptions {
  std::string checkpoint;
  std::string in_domain;
  std::string ood;
  std::string report;
  std::string scores;
  std::string preset;
  std::string uncertainty = "epi-dist";
  McOptions mc;
};

void setup_ood(CLI::App& sub, OodOptions& o) {
  sub.add_option("--checkpoint", o.checkpoint)->required();
  sub.add_option("--in-domain", o.in_domain, "In-domain CSV (label 0)")->required();
  sub.add_option("--ood", o.ood, "OOD CSV (label 1)")->required();
  sub.add_option("--report", o.report, "AUC report JSON")->required();
  sub.add_option("--scores", o.scores, "Per-sample scores CSV (default: <report stem>_scores.csv)");
  sub.add_option("--preset", o.preset, "'paper': MC T=25, p=0.5")->check(CLI::IsMember({"paper"}));
  sub.add_option("--uncertainty", o.uncertainty, "Score used to rank samples")
      ->check(CLI::IsMember({"aleatoric", "epi-pred", "epi-dist", "oracle"}));
  setup_mc(sub, o.mc);
}

int cmd_ood_detect(const CLI::App& sub, const OodOptions& o) {
  const Checkpoint ckpt = load_checkpoint(o.checkpoint);
  const Dataset in = read_dataset_csv(o.in_domain);
  const Dataset ood = read_dataset_csv(o.ood);
  check_input_dim(in, ckpt.model, o.in_domain);
  check_input_dim(ood, ckpt.model, o.ood);

  const auto kind = uncertainty_from_string(o.uncertainty);
  const bool need_mc = kind == UncertaintyKind::epi_pred || kind == UncertaintyKind::epi_dist;
  const auto mc = mc_config(sub, o.mc, o.preset, need_mc);
  const auto scale = scale_from(ckpt, false);

  std::vector<double> scores;
  std::vector<int> labels;
  std::string rows = "id,domain_label,score\n";
  double sum_in = 0.0, sum_ood = 0.0;
  for (int label : {0, 1}) {
    const Dataset& d = label == 0 ? in : ood;
    const auto records = make_records(d, predict_dataset(ckpt.model, d, scale, mc), kind);
    for (const auto& r : records) {
      scores.push_back(r.var_pred);
      labels.push_back(label);
      (label == 0 ? sum_in : sum_ood) += r.var_pred;
      rows += r.id + ',' + std::to_string(label) + ',' + format_double(r.var_pred) + '\n';
    }
  }
  const double auc = roc_auc(scores, labels);
  ojson doc{{"auc", auc},
            {"uncertainty", to_string(kind)},
            {"n_in_domain", in.size()},
            {"n_ood", ood.size()},
            {"mean_score_in_domain", sum_in / static_cast<double>(in.size())},
            {"mean_score_ood", sum_ood / static_cast<double>(ood.size())}};
  write_file_atomic(o.report, doc.dump(2) + "\n");
  write_file_atomic(o.scores.empty() ? sibling_path(o.report, "_scores.csv") : o.scores, rows);
  write_resolved_config(sub, o.report);
  std::cout << doc.dump() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"Uncertainty-aware MOS-style regression: data, training, calibration, evaluation", "hetmos"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of option values; command-line flags take precedence");

  GenOptions gen;
  TrainOptions tr;
  CalibrateOptions cal;
  EvaluateOptions ev;
  OodOptions ood;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
  auto* train_cmd = app.add_subcommand("train", "Train the two-head network");
  auto* cal_cmd = app.add_subcommand("calibrate", "Fit the aleatoric scale factor on a calibration set");
  auto* eval_cmd = app.add_subcommand("evaluate", "Metrics report and curves on a test set");
  auto* ood_cmd = app.add_subcommand("ood-detect", "AUC of separating in-domain from OOD samples by uncertainty");
  for (auto* sub : {gen_cmd, train_cmd, cal_cmd, eval_cmd, ood_cmd})
    sub->add_option("--config", config_path, "JSON file of option values; command-line flags take precedence");
  setup_gen(*gen_cmd, gen);
  setup_train(*train_cmd, tr);
  setup_calibrate(*cal_cmd, cal);
  setup_evaluate(*eval_cmd, ev);
  setup_ood(*ood_cmd, ood);

  try {
    const auto args = inject_config(raw_args);
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? kOk : kUsageError;
    }
    if (*gen_cmd) return cmd_gen_data(*gen_cmd, gen);
    if (*train_cmd) return cmd_train(*train_cmd, tr);
    if (*cal_cmd) return cmd_calibrate(*cal_cmd, cal);
    if (*eval_cmd) return cmd_evaluate(*eval_cmd, ev);
    if (*ood_cmd) return cmd_ood_detect(*ood_cmd, ood);
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.usage_class() ? kUsageError : kRuntimeFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

}  // namespace hetmos::cli
