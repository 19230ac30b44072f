/*
 * Copyright 2026 The icurisk Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "icurisk/common/error.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/dataio/schema.h"
#include "icurisk/dataio/split.h"
#include "icurisk/dataio/synthetic.h"
#include "icurisk/pipeline/config.h"
#include "icurisk/pipeline/report.h"
#include "icurisk/pipeline/run.h"

namespace icurisk::pipeline {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("icurisk_pipeline_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

dataio::Frame LoadCohort(const fs::path& dir) {
  std::vector<dataio::ColumnSpec> specs;
  for (const auto& f : dataio::DefaultIcuCohortStats().features) specs.push_back(f.spec);
  specs.push_back({"died_28d", dataio::ColumnKind::kBinary});
  return dataio::LoadCsv(dir / "cohort.csv", specs, {"", std::string("died_28d")});
}

RunConfig SmallConfig(const fs::path& dir) {
  Json doc = {
      {"input", {{"kind", "synthetic"}, {"n", 400}}},
      {"seed", 11},
      {"preprocess", {{"imputer", "median_mode"}}},
      {"selection", {{"k1", 12}, {"k2", 8}, {"gini_trees", 20}}},
      {"models",
       {{"logistic", {{"c", {0.1, 1.0}}}},
        {"gnb", nullptr},
        {"forest", {{"n_trees", {20}}, {"max_depth", {6}}}},
        {"gbdt", {{"learning_rate", {0.1}}, {"max_depth", {3}}, {"n_iters", {40}}}},
        {"mlp", {{"hidden_units", {4}}}}}},
      {"bootstrap", {{"replicates", 200}}},
      {"ale", {{"n_bins", 8}}},
      {"posterior", {{"samples", 2000}}},
      {"output_dir", dir.string()},
  };
  return RunConfig::FromJson(doc);
}

class SmallRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(TempDir("small"));
    result_ = new RunResult(RunPipeline(SmallConfig(*dir_)));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete dir_;
  }
  static fs::path* dir_;
  static RunResult* result_;
};

fs::path* SmallRun::dir_ = nullptr;
RunResult* SmallRun::result_ = nullptr;

TEST_F(SmallRun, ReportHasOneRowPerFamily) {
  const Json& models = result_->report["models"];
  ASSERT_EQ(models.size(), 5u);
  const char* names[] = {"logistic", "gnb", "forest", "gbdt", "mlp"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(models[i]["family"], names[i]);
    for (const char* split : {"train", "test"}) {
      const Json& m = models[i][split];
      EXPECT_GE(m["auroc"].get<double>(), 0.0);
      EXPECT_LE(m["ci_low"].get<double>(), m["auroc"].get<double>());
      EXPECT_GE(m["ci_high"].get<double>(), m["auroc"].get<double>());
      EXPECT_TRUE(m.contains("sensitivity"));
      EXPECT_TRUE(m.contains("specificity"));
    }
  }
  const Table metrics = ReadTable(*dir_ / "metrics.csv");
  EXPECT_EQ(metrics.rows.size(), 10u);
  EXPECT_FALSE(fs::exists(*dir_ / "FAILED"));
}

TEST_F(SmallRun, ArtifactsListedInReportExist) {
  for (const Json& name : result_->report["artifacts"]) {
    EXPECT_TRUE(fs::exists(*dir_ / name.get<std::string>())) << name;
  }
}

TEST_F(SmallRun, SplitAndSelectionShapes) {
  const Json& split = result_->report["split"];
  EXPECT_EQ(split["train_rows"].get<int>() + split["test_rows"].get<int>(), 400);
  EXPECT_EQ(result_->report["selection"]["mode"], "two_stage");
  EXPECT_EQ(result_->selected.size(), 8u);
  for (const FamilyResult& f : result_->families) {
    EXPECT_EQ(f.model.feature_order, result_->selected);
  }
}

TEST_F(SmallRun, TestThresholdMeetsSensitivityFloor) {
  for (const FamilyResult& f : result_->families) {
    EXPECT_GE(f.test.sensitivity, 0.8) << models::FamilyName(f.family);
    EXPECT_DOUBLE_EQ(f.test.threshold, f.model.threshold);
  }
}

TEST_F(SmallRun, SavedModelReproducesPredictions) {
  const FamilyResult* gbdt = result_->Find(models::Family::kGbdt);
  ASSERT_NE(gbdt, nullptr);
  const models::ModelArtifact loaded = models::LoadArtifact((*dir_ / "models/gbdt.json").string());
  const dataio::Frame cohort = LoadCohort(*dir_);
  EXPECT_EQ(models::PredictProba(loaded, cohort), models::PredictProba(gbdt->model, cohort));
  EXPECT_EQ(loaded.threshold, gbdt->model.threshold);
}

TEST_F(SmallRun, PosteriorSummaryMatchesCsv) {
  const Table t = ReadTable(*dir_ / "posterior_summary.csv");
  bool found = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.Cell(r, "statistic") == "mean") {
      EXPECT_EQ(t.Number(r, "value"), result_->posterior.mean);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(result_->posterior.n_samples, 2000u);
}

TEST_F(SmallRun, EmittedRocStartsAtOriginAndEndsAtOne) {
  EmitReport(*dir_);
  for (const char* family : {"logistic", "gnb", "forest", "gbdt", "mlp"}) {
    const Series s =
        RocSeries(ReadTable(*dir_ / (std::string("roc_") + family + ".csv")), family);
    ASSERT_GE(s.points.size(), 2u);
    EXPECT_EQ(s.points.front().x, 0.0);
    EXPECT_EQ(s.points.front().y, 0.0);
    EXPECT_EQ(s.points.back().x, 1.0);
    EXPECT_EQ(s.points.back().y, 1.0);
  }
}

TEST_F(SmallRun, EmittedAblationBarsSortedByDelta) {
  const std::vector<Bar> bars = AblationBars(ReadTable(*dir_ / "ablation.csv"));
  ASSERT_EQ(bars.size(), 8u);
  for (std::size_t i = 1; i < bars.size(); ++i) EXPECT_GE(bars[i - 1].height, bars[i].height);
}

TEST_F(SmallRun, EmittedHistogramAreasSumToOne) {
  const std::vector<Bar> bars = HistogramBars(ReadTable(*dir_ / "posterior_histogram.csv"));
  ASSERT_EQ(bars.size(), 40u);
  double area = 0.0;
  for (const Bar& b : bars) area += (b.x1 - b.x0) * b.height;
  EXPECT_NEAR(area, 1.0, 1e-9);
}

TEST_F(SmallRun, EmitReportWritesPlotsAndTraceableSummary) {
  const ReportFiles files = EmitReport(*dir_);
  for (const std::string& f : files.written) {
    const std::string text = Slurp(*dir_ / f);
    EXPECT_FALSE(text.empty()) << f;
    if (f.ends_with(".svg")) {
      EXPECT_EQ(text.rfind("<svg", 0), 0u) << f;
      EXPECT_NE(text.find("</svg>"), std::string::npos) << f;
    }
  }
  for (const char* f : {"roc.svg", "ablation.svg", "posterior_histogram.svg", "summary.txt"}) {
    EXPECT_TRUE(fs::exists(*dir_ / f)) << f;
  }
  const std::string summary = Slurp(*dir_ / "summary.txt");
  const Table post = ReadTable(*dir_ / "posterior_summary.csv");
  for (std::size_t r = 0; r < post.rows.size(); ++r) {
    EXPECT_NE(summary.find(post.Cell(r, "value")), std::string::npos) << post.Cell(r, "statistic");
  }
}

TEST(Pipeline, SameSeedGivesByteIdenticalReport) {
  const fs::path a = TempDir("det_a");
  const fs::path b = TempDir("det_b");
  RunPipeline(SmallConfig(a));
  RunPipeline(SmallConfig(b));
  const std::string ra = Slurp(a / "run_report.json");
  ASSERT_FALSE(ra.empty());
  EXPECT_EQ(ra, Slurp(b / "run_report.json"));
  EXPECT_EQ(Slurp(a / "metrics.csv"), Slurp(b / "metrics.csv"));
  EXPECT_EQ(Slurp(a / "models/gbdt.json"), Slurp(b / "models/gbdt.json"));
}

TEST(Pipeline, DifferentSeedChangesReport) {
  const fs::path a = TempDir("seed_a");
  const fs::path b = TempDir("seed_b");
  RunConfig ca = SmallConfig(a);
  RunConfig cb = SmallConfig(b);
  cb.seed = 12;
  RunPipeline(ca);
  RunPipeline(cb);
  EXPECT_NE(Slurp(a / "run_report.json"), Slurp(b / "run_report.json"));
}

TEST(Pipeline, ExplicitFeatureListSkipsSelection) {
  const fs::path dir = TempDir("explicit");
  RunConfig c = SmallConfig(dir);
  c.selection.features = {"gcs_eye_opening", "apsiii", "vasopressin", "age"};
  c.grids.resize(1);
  c.ablation_family = c.grids[0].family;
  c.posterior.family = c.grids[0].family;
  const RunResult r = RunPipeline(c);
  EXPECT_EQ(r.selected, c.selection.features);
  EXPECT_EQ(r.report["selection"]["mode"], "explicit");
  EXPECT_FALSE(fs::exists(dir / "rankings.csv"));
  EXPECT_EQ(r.families.at(0).model.feature_order, c.selection.features);
}

TEST(Pipeline, UnknownSelectedFeatureFailsSelectStage) {
  const fs::path dir = TempDir("bad_feature");
  RunConfig c = SmallConfig(dir);
  c.selection.features = {"apsiii", "not_a_feature"};
  try {
    RunPipeline(c);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "select");
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
  const std::string marker = Slurp(dir / "FAILED");
  EXPECT_EQ(marker.rfind("select: ", 0), 0u) << marker;
  EXPECT_NE(marker.find("not_a_feature"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "run_report.json"));
  // Outputs of completed stages stay on disk.
  EXPECT_TRUE(fs::exists(dir / "cohort_comparison.csv"));
  EXPECT_THROW(EmitReport(dir), IoError);
}

TEST(Pipeline, MissingCsvFailsLoadStage) {
  const fs::path dir = TempDir("missing_csv");
  RunConfig c = SmallConfig(dir);
  c.input.kind = InputKind::kCsv;
  c.input.csv = dir / "absent.csv";
  c.input.schema = dir / "absent.schema.json";
  try {
    RunPipeline(c);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
  }
  EXPECT_EQ(Slurp(dir / "FAILED").rfind("load: ", 0), 0u);
}

TEST(Pipeline, SuccessfulRunClearsStaleFailedMarker) {
  const fs::path dir = TempDir("stale");
  fs::create_directories(dir);
  std::ofstream(dir / "FAILED") << "select: old\n";
  RunConfig c = SmallConfig(dir);
  c.grids.resize(1);
  c.ablation_family = c.posterior.family = c.grids[0].family;
  RunPipeline(c);
  EXPECT_FALSE(fs::exists(dir / "FAILED"));
}

TEST(Pipeline, CsvInputMatchesSchema) {
  const fs::path dir = TempDir("csv_input");
  fs::create_directories(dir);
  const dataio::Frame frame =
      dataio::GenerateSyntheticCohort(dataio::DefaultIcuCohortStats(), 300, 5);
  dataio::WriteCsv(frame, dir / "cohort_in.csv", "NA");
  std::ofstream(dir / "schema.json")
      << dataio::CsvSchemaToJson({frame.schema(), frame.label_name()}).dump(2);
  Json doc = SmallConfig(dir / "out").ToJson();
  doc["input"] = {{"kind", "csv"},
                  {"csv", "cohort_in.csv"},
                  {"schema", "schema.json"},
                  {"missing_token", "NA"}};
  doc["models"] = {{"logistic", {{"c", {1.0}}}}};
  doc["ablation"] = {{"family", "logistic"}};
  doc["posterior"]["family"] = "logistic";
  const RunResult r = RunPipeline(RunConfig::FromJson(doc, dir));
  EXPECT_EQ(r.report["cohort"]["n_rows"], 300);
  EXPECT_EQ(r.report["config"]["input"]["csv"], "cohort_in.csv");
  EXPECT_FALSE(fs::exists(dir / "out" / "cohort.csv"));
}

TEST(Pipeline, SmotePlacementControlsFinalFit) {
  for (const auto& [placement, expect_synthetic] :
       {std::pair{SmotePlacement::kFoldsAndFinal, true},
        std::pair{SmotePlacement::kFoldsOnly, false}, std::pair{SmotePlacement::kNone, false}}) {
    const fs::path dir = TempDir("smote_" + std::string(SmotePlacementName(placement)));
    RunConfig c = SmallConfig(dir);
    c.smote = placement;
    c.grids.resize(1);
    c.ablation_family = c.posterior.family = c.grids[0].family;
    const RunResult r = RunPipeline(c);
    EXPECT_EQ(r.families[0].synthetic_rows > 0, expect_synthetic)
        << SmotePlacementName(placement);
  }
}

TEST(Pipeline, OofThresholdSource) {
  const fs::path dir = TempDir("oof");
  RunConfig c = SmallConfig(dir);
  c.threshold.source = ThresholdSource::kOof;
  c.grids.resize(1);
  c.ablation_family = c.posterior.family = c.grids[0].family;
  const RunResult r = RunPipeline(c);
  EXPECT_EQ(r.report["threshold"]["source"], "oof");
  const FamilyResult& f = r.families[0];
  const std::vector<double>& oof = f.grid.table[f.grid.best_index].oof;
  ASSERT_FALSE(oof.empty());
  const dataio::FrameSplit split =
      dataio::StratifiedSplit(LoadCohort(dir), c.test_fraction, StageSeed(c.seed, "split"));
  const std::vector<int> labels = split.train.Labels();
  ASSERT_EQ(labels.size(), oof.size());
  double positives = 0.0, caught = 0.0;
  for (std::size_t i = 0; i < oof.size(); ++i) {
    if (labels[i] != 1) continue;
    positives += 1.0;
    caught += oof[i] >= f.model.threshold ? 1.0 : 0.0;
  }
  EXPECT_GE(caught / positives, 0.8);
}

TEST(Pipeline, MissingnessIsImputed) {
  const fs::path dir = TempDir("missing");
  RunConfig c = SmallConfig(dir);
  c.input.missing_fraction = 0.1;
  c.preprocess.imputer = preprocess::ImputerKind::kIterativeForest;
  c.preprocess.iterative.num_trees = 5;
  c.preprocess.iterative.max_iter = 2;
  c.grids.resize(1);
  c.ablation_family = c.posterior.family = c.grids[0].family;
  const RunResult r = RunPipeline(c);
  EXPECT_TRUE(fs::exists(dir / "preprocess.json"));
  const std::string cohort = Slurp(dir / "cohort.csv");
  EXPECT_NE(cohort.find(",,"), std::string::npos);
  EXPECT_GT(r.families[0].test.auroc, 0.7);
}

TEST(RunConfigJson, DefaultsMirrorPipelineConstants) {
  const RunConfig c = DefaultRunConfig();
  EXPECT_EQ(c.selection.k1, 30u);
  EXPECT_EQ(c.selection.k2, 19u);
  EXPECT_EQ(c.cv_folds, 5);
  EXPECT_DOUBLE_EQ(c.test_fraction, 0.3);
  EXPECT_EQ(c.bootstrap, 2000);
  EXPECT_DOUBLE_EQ(c.threshold.floor, 0.8);
  EXPECT_EQ(c.grids.size(), 5u);
  EXPECT_EQ(c.input.n, 1478u);
}

TEST(RunConfigJson, RoundTrip) {
  RunConfig c = DefaultRunConfig();
  c.seed = 99;
  c.smote = SmotePlacement::kFoldsOnly;
  c.threshold.source = ThresholdSource::kOof;
  c.selection.features = {"apsiii", "age"};
  const Json doc = c.ToJson();
  EXPECT_EQ(RunConfig::FromJson(doc).ToJson(), doc);
}

TEST(RunConfigJson, RejectsUnknownKeys) {
  EXPECT_THROW(RunConfig::FromJson({{"seeds", 1}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"selection", {{"k3", 1}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"models", {{"catboost", nullptr}}}}), ConfigError);
}

TEST(RunConfigJson, RejectsInvalidValues) {
  EXPECT_THROW(RunConfig::FromJson({{"selection", {{"k1", 5}, {"k2", 6}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"threshold", {{"floor", 0.0}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"threshold", {{"floor", 1.5}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"test_fraction", 1.0}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"cv_folds", 1}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"seed", "abc"}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"smote", {{"placement", "everywhere"}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"input", {{"kind", "csv"}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"models", {{"gnb", nullptr}}}}), ConfigError);
  EXPECT_THROW(RunConfig::FromJson({{"models", {{"logistic", {{"c", {-1.0}}}}}}}),
               ConfigError);
}

TEST(RunConfigJson, OverridesUseDottedPaths) {
  Json doc = DefaultRunConfig().ToJson();
  ApplyOverride(doc, "selection.k1=25");
  ApplyOverride(doc, "threshold.source=oof");
  ApplyOverride(doc, "seed=7");
  ApplyOverride(doc, "models={\"gbdt\":null}");
  ApplyOverride(doc, "ablation.family=gbdt");
  const RunConfig c = RunConfig::FromJson(doc);
  EXPECT_EQ(c.selection.k1, 25u);
  EXPECT_EQ(c.threshold.source, ThresholdSource::kOof);
  EXPECT_EQ(c.seed, 7u);
  ASSERT_EQ(c.grids.size(), 1u);
  EXPECT_EQ(c.grids[0].family, models::Family::kGbdt);
  EXPECT_THROW(ApplyOverride(doc, "novalue"), ConfigError);
  EXPECT_THROW(ApplyOverride(doc, "seed.inner=1"), ConfigError);
}

TEST(RunConfigJson, RelativePathsResolveAgainstConfigDirectory) {
  const Json doc = {{"input", {{"kind", "synthetic"}, {"stats", "stats.json"}}}};
  EXPECT_EQ(RunConfig::FromJson(doc, "/cfg").input.stats, fs::path("/cfg/stats.json"));
  const Json abs = {{"input", {{"kind", "synthetic"}, {"stats", "/x/stats.json"}}}};
  EXPECT_EQ(RunConfig::FromJson(abs, "/cfg").input.stats, fs::path("/x/stats.json"));
}

TEST(RunConfigJson, ShippedConfigLoads) {
  const RunConfig c =
      LoadRunConfig(fs::path(ICURISK_SOURCE_DIR) / "configs/default_run.json");
  EXPECT_TRUE(fs::exists(c.input.stats));
  EXPECT_EQ(c.ToJson()["models"], DefaultRunConfig().ToJson()["models"]);
  const dataio::StratumStats stats = dataio::LoadStratumStats(c.input.stats);
  EXPECT_EQ(dataio::StratumStatsToJson(stats),
            dataio::StratumStatsToJson(dataio::DefaultIcuCohortStats()));
  EXPECT_THROW(LoadRunConfig(fs::path(ICURISK_SOURCE_DIR) / "configs/absent.json"),
               ConfigError);
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(ICURISK_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = TempDir("cli");
  fs::create_directories(dir);
  EXPECT_EQ(RunCli("--help"), 0);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  std::ofstream(dir / "bad.json") << "{\"selection\": {\"k1\": 2, \"k2\": 3}}";
  EXPECT_EQ(RunCli("run -q -c " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(RunCli("run -q --set seed=x -o " + (dir / "o").string()), 2);

  // A label with one class is a data error.
  std::ofstream(dir / "one_class.csv") << "x,y\n1,0\n2,0\n3,0\n";
  std::ofstream(dir / "schema.json")
      << R"({"label":"y","columns":[{"name":"x","kind":"continuous"},)"
         R"({"name":"y","kind":"binary"}]})";
  std::ofstream(dir / "data.json")
      << R"({"input":{"kind":"csv","csv":"one_class.csv","schema":"schema.json"},)"
         R"("models":{"logistic":null},"ablation":{"family":"logistic"},)"
         R"("posterior":{"family":"logistic"},"output_dir":")"
      << (dir / "data_out").string() << "\"}";
  EXPECT_EQ(RunCli("run -q -c " + (dir / "data.json").string()), 3);
  EXPECT_TRUE(fs::exists(dir / "data_out" / "FAILED"));

  EXPECT_EQ(RunCli("report " + (dir / "absent").string()), 4);
  EXPECT_EQ(RunCli("generate -n 60 --seed 3 -o " + (dir / "gen.csv").string() +
                   " --schema-out " + (dir / "gen.schema.json").string()),
            0);
  const dataio::CsvSchema schema = dataio::LoadCsvSchema(dir / "gen.schema.json");
  dataio::CsvOptions options;
  options.label = schema.label;
  EXPECT_EQ(dataio::LoadCsv(dir / "gen.csv", schema.columns, options).n_rows(), 60u);
}

}  // namespace
}  // namespace icurisk::pipeline
