#include <gtest/gtest.h>

#include <filesystem>

#include <json.hpp>

#include "cli.hpp"
#include "hetmos/checkpoint.hpp"
#include "hetmos/dataset_io.hpp"
#include "hetmos/io_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hetmos_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "hetmos");
    ::testing::internal::CaptureStdout();
    ::testing::internal::CaptureStderr();
    const int rc = hetmos::cli::run(args);
    out_ = ::testing::internal::GetCapturedStdout();
    err_ = ::testing::internal::GetCapturedStderr();
    return rc;
  }

  // small world: 6 systems x 40 samples, 4 features
  void make_data(const std::string& stem, std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"gen-data", "--seed", "3", "--num-systems", "6", "--samples-per-system", "40",
                                     "--feature-dim", "4", "--out", path(stem)};
    args.insert(args.end(), extra.begin(), extra.end());
    ASSERT_EQ(run(args), 0) << err_;
  }

  void make_model(const std::string& name, const std::string& data) {
    ASSERT_EQ(run({"train", "--data", data, "--out", path(name), "--epochs", "3"}), 0) << err_;
  }

  fs::path dir_;
  std::string out_, err_;
};

}  // namespace

TEST_F(Cli, GenDataIsDeterministic) {
  make_data("a.csv");
  make_data("b.csv");
  EXPECT_EQ(hetmos::read_file(path("a.csv")), hetmos::read_file(path("b.csv")));
  EXPECT_TRUE(fs::exists(path("a.csv.config.json")));
}

TEST_F(Cli, MissingOutIsUsageError) {
  EXPECT_EQ(run({"gen-data", "--seed", "1"}), hetmos::cli::kUsageError);
  EXPECT_EQ(run({}), hetmos::cli::kUsageError);
  EXPECT_EQ(run({"gen-data", "--out", path("x.csv"), "--preset", "bogus"}), hetmos::cli::kUsageError);
}

TEST_F(Cli, SplitWritesThreeFilesInProportion) {
  make_data("d.csv", {"--split", "0.7,0.15,0.15"});
  EXPECT_EQ(hetmos::read_dataset_csv(path("d_train.csv")).size(), 168u);
  EXPECT_EQ(hetmos::read_dataset_csv(path("d_val.csv")).size(), 36u);
  EXPECT_EQ(hetmos::read_dataset_csv(path("d_test.csv")).size(), 36u);
  EXPECT_FALSE(fs::exists(path("d.csv")));
}

TEST_F(Cli, GenDataPresetsAndOod) {
  make_data("r.csv", {"--preset", "rater-panel", "--raters", "4", "--rater-sd", "0.8"});
  EXPECT_DOUBLE_EQ(*hetmos::read_dataset_csv(path("r.csv"))[0].true_noise_var, 0.16);
  make_data("o.csv", {"--ood-shift", "3"});
  const auto ood = hetmos::read_dataset_csv(path("o.csv"));
  EXPECT_EQ(ood[0].domain_tag, hetmos::DomainTag::ood);
  make_data("n.csv", {"--noise-analogue", "0.01"});
  EXPECT_EQ(hetmos::read_dataset_csv(path("n.csv"))[0].domain_tag, hetmos::DomainTag::ood);
}

TEST_F(Cli, TrainDefaultsBatchEightLearningRate3e4) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  const auto resolved = json::parse(hetmos::read_file(path("m.json.config.json")));
  EXPECT_EQ(resolved["options"]["batch-size"], "8");
  EXPECT_EQ(resolved["options"]["lr"], "0.0003");
  EXPECT_EQ(resolved["options"]["dropout"], "0.5");
  const auto history = hetmos::read_file(path("m_history.csv"));
  EXPECT_EQ(history.substr(0, history.find('\n')), "epoch,train_loss,val_loss");
  EXPECT_FALSE(hetmos::load_checkpoint(path("m.json")).calibration_r.has_value());
}

TEST_F(Cli, TrainMseBaseline) {
  make_data("d.csv");
  EXPECT_EQ(run({"train", "--data", path("d.csv"), "--out", path("m.json"), "--epochs", "2", "--loss", "mse"}), 0);
}

TEST_F(Cli, TrainMissingDatasetIsUsageError) {
  EXPECT_EQ(run({"train", "--data", path("nope.csv"), "--out", path("m.json")}), hetmos::cli::kUsageError);
  EXPECT_NE(err_.find("nope.csv"), std::string::npos);
}

TEST_F(Cli, DivergenceIsRuntimeFailure) {
  make_data("d.csv");
  EXPECT_EQ(run({"train", "--data", path("d.csv"), "--out", path("m.json"), "--epochs", "20", "--optimizer", "sgd",
                 "--lr", "1e6"}),
            hetmos::cli::kRuntimeFailure);
  EXPECT_NE(err_.find("diverged"), std::string::npos);
}

TEST_F(Cli, ConfigFileValuesYieldToFlags) {
  make_data("d.csv");
  hetmos::write_file_atomic(path("cfg.json"), R"({"epochs": 2, "train": {"lr": 0.001, "seed": 4}})");
  ASSERT_EQ(run({"train", "--config", path("cfg.json"), "--data", path("d.csv"), "--out", path("m.json"), "--seed",
                 "9"}),
            0)
      << err_;
  const auto resolved = json::parse(hetmos::read_file(path("m.json.config.json")))["options"];
  EXPECT_EQ(resolved["epochs"], "2");
  EXPECT_EQ(resolved["lr"], "0.001");
  EXPECT_EQ(resolved["seed"], "9");
  EXPECT_EQ(hetmos::load_checkpoint(path("m.json")).model.rng_seed_used, 9u);
}

TEST_F(Cli, CalibrateChangesOnlyScaleAndRefitIsIdentity) {
  make_data("d.csv", {"--split", "0.6,0.4,0.0"});
  make_model("m.json", path("d_train.csv"));
  ASSERT_EQ(run({"calibrate", "--checkpoint", path("m.json"), "--data", path("d_val.csv"), "--out", path("c1.json")}), 0);
  ASSERT_EQ(run({"calibrate", "--checkpoint", path("c1.json"), "--data", path("d_val.csv"), "--out", path("c2.json")}), 0);
  EXPECT_NEAR(json::parse(out_)["fitted_r"].get<double>(), 1.0, 0.02);

  auto before = json::parse(hetmos::read_file(path("m.json")));
  auto after = json::parse(hetmos::read_file(path("c1.json")));
  ASSERT_TRUE(after.contains("calibration_r"));
  after.erase("calibration_r");
  EXPECT_EQ(before, after);
  const double r1 = *hetmos::load_checkpoint(path("c1.json")).calibration_r;
  EXPECT_NEAR(*hetmos::load_checkpoint(path("c2.json")).calibration_r / r1, 1.0, 0.02);
}

TEST_F(Cli, CalibrateRejectsUntrainedCheckpoint) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  auto doc = json::parse(hetmos::read_file(path("m.json")));
  doc.erase("weights");
  doc.erase("biases");
  hetmos::write_file_atomic(path("empty.json"), doc.dump());
  EXPECT_EQ(run({"calibrate", "--checkpoint", path("empty.json"), "--data", path("d.csv"), "--out", path("c.json")}),
            hetmos::cli::kUsageError);
  EXPECT_NE(err_.find("trained weights"), std::string::npos);
}

TEST_F(Cli, EvaluateWritesReportAndCurves) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  ASSERT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("d.csv"), "--report", path("rep.json")}), 0)
      << err_;
  const auto rep = json::parse(hetmos::read_file(path("rep.json")));
  EXPECT_EQ(rep.size(), 6u);
  EXPECT_TRUE(rep["auc"].is_null());
  EXPECT_TRUE(rep["nll"].is_number());
  EXPECT_EQ(hetmos::read_file(path("rep_error_uncertainty.csv")).substr(0, 24), "mean_uncert,mean_sq_err\n");
  EXPECT_EQ(hetmos::read_file(path("rep_selective.csv")).substr(0, 38), "threshold,retained_fraction,subset_mse");
  EXPECT_FALSE(fs::exists(path("rep_mc.csv")));
}

TEST_F(Cli, EvaluateUncertaintyRoutingAndAuc) {
  make_data("d.csv");
  make_data("o.csv", {"--ood-shift", "3"});
  make_model("m.json", path("d.csv"));
  // mixed pool carries both domain labels
  auto mixed = hetmos::read_dataset_csv(path("d.csv"));
  for (const auto& s : hetmos::read_dataset_csv(path("o.csv"))) mixed.push_back(s);
  hetmos::write_dataset_csv(path("mix.csv"), mixed);

  std::map<std::string, double> sharp;
  for (const std::string kind : {"aleatoric", "epi-pred", "epi-dist", "oracle"}) {
    ASSERT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("mix.csv"), "--report",
                   path(kind + ".json"), "--uncertainty", kind, "--mc-samples", "5"}),
              0)
        << err_;
    const auto rep = json::parse(hetmos::read_file(path(kind + ".json")));
    EXPECT_TRUE(rep["auc"].is_number()) << kind;
    sharp[kind] = rep["sharpness"];
  }
  EXPECT_NE(sharp["aleatoric"], sharp["epi-pred"]);
  EXPECT_NE(sharp["epi-pred"], sharp["epi-dist"]);
  EXPECT_TRUE(fs::exists(path("epi-dist_mc.csv")));
  EXPECT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("mix.csv"), "--report", path("x.json"),
                 "--uncertainty", "total"}),
            hetmos::cli::kUsageError);
}

TEST_F(Cli, EvaluatePresetSetsMcAndBins) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  ASSERT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("d.csv"), "--report", path("rep.json"),
                 "--preset", "paper"}),
            0);
  const auto resolved = json::parse(hetmos::read_file(path("rep.json.config.json")))["options"];
  EXPECT_EQ(resolved["bins"], "10");
  const auto mc = hetmos::read_file(path("rep_mc.csv"));
  EXPECT_EQ(std::count(mc.begin(), mc.end(), '\n'), 241);
}

TEST_F(Cli, EvaluateShapeMismatchIsRuntimeFailure) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  ASSERT_EQ(run({"gen-data", "--feature-dim", "5", "--num-systems", "2", "--samples-per-system", "5", "--out",
                 path("wide.csv")}),
            0);
  EXPECT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("wide.csv"), "--report", path("r.json")}),
            hetmos::cli::kRuntimeFailure);
}

TEST_F(Cli, OodDetectSameFileIsChance) {
  ASSERT_EQ(run({"gen-data", "--seed", "3", "--num-systems", "10", "--samples-per-system", "60", "--feature-dim", "4",
                 "--out", path("d.csv")}),
            0);
  make_model("m.json", path("d.csv"));
  ASSERT_EQ(run({"ood-detect", "--checkpoint", path("m.json"), "--in-domain", path("d.csv"), "--ood", path("d.csv"),
                 "--report", path("ood.json"), "--mc-samples", "5"}),
            0)
      << err_;
  const auto rep = json::parse(hetmos::read_file(path("ood.json")));
  EXPECT_NEAR(rep["auc"].get<double>(), 0.5, 0.05);
  EXPECT_EQ(rep["n_in_domain"], 600);
  EXPECT_EQ(rep["uncertainty"], "epi-dist");
  const auto scores = hetmos::read_file(path("ood_scores.csv"));
  EXPECT_EQ(scores.substr(0, scores.find('\n')), "id,domain_label,score");
  EXPECT_EQ(std::count(scores.begin(), scores.end(), '\n'), 1201);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}), 0); }

TEST_F(Cli, EvaluateExplicitThresholds) {
  make_data("d.csv");
  make_model("m.json", path("d.csv"));
  ASSERT_EQ(run({"evaluate", "--checkpoint", path("m.json"), "--data", path("d.csv"), "--report", path("rep.json"),
                 "--thresholds", "0.0,0.5,1e9"}),
            0);
  const auto sweep = hetmos::read_file(path("rep_selective.csv"));
  EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 4);
  EXPECT_NE(sweep.find("\n0,0,\n"), std::string::npos);
  EXPECT_NE(sweep.find("\n1e+09,1,"), std::string::npos);
}
