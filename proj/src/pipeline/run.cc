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


#include "icurisk/pipeline/run.h"

#include <fstream>
#include <functional>
#include <sstream>

#include "icurisk/balance/folds.h"
#include "icurisk/balance/recipe.h"
#include "icurisk/common/random.h"
#include "icurisk/common/stats.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/dataio/schema.h"
#include "icurisk/dataio/split.h"
#include "icurisk/dataio/synthetic.h"
#include "icurisk/evalstats/ablation.h"
#include "icurisk/featselect/selection.h"
#include "icurisk/interpret/ale.h"
#include "icurisk/models/threshold.h"
#include "icurisk/posterior/priors.h"
#include "icurisk/preprocess/prepare.h"

namespace icurisk::pipeline {
namespace fs = std::filesystem;
namespace {

template <typename F>
auto Stage(const std::string& name, std::ostream* log, F&& body) -> decltype(body()) {
  if (log) *log << "stage " << name << '\n' << std::flush;
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.code(), e.what());
  } catch (const std::exception& e) {
    throw StageError(name, ErrorCode::kInvalidArgument, e.what());
  }
}

void WriteFile(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Json ReportToJson(const evalstats::EvalReport& r) {
  return {{"auroc", r.auroc},       {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},   {"accuracy", r.accuracy},
          {"f1", r.f1},             {"sensitivity", r.sensitivity},
          {"specificity", r.specificity}, {"ppv", r.ppv},
          {"npv", r.npv},           {"threshold", r.threshold},
          {"n", r.n},               {"prevalence", r.prevalence},
          {"tp", r.tp},             {"fp", r.fp},
          {"tn", r.tn},             {"fn", r.fn},
          {"undefined", r.undefined}};
}

dataio::Frame InjectMissing(const dataio::Frame& frame, double fraction, uint64_t seed) {
  Rng rng(seed);
  dataio::Frame out = frame;
  for (const dataio::Column& c : frame.columns()) {
    if (frame.has_label() && c.spec.name == frame.label_name()) continue;
    if (c.spec.kind == dataio::ColumnKind::kBinary) continue;
    dataio::Column col = c;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (rng.Bernoulli(fraction)) {
        col.missing[r] = 1;
        col.values[r] = 0.0;
      }
    }
    out = out.WithColumn(std::move(col));
  }
  return out;
}

dataio::Frame LoadInput(const InputConfig& in, uint64_t seed) {
  if (in.kind == InputKind::kCsv) {
    const dataio::CsvSchema schema = dataio::LoadCsvSchema(in.schema);
    dataio::CsvOptions options;
    options.missing_token = in.missing_token;
    options.label = schema.label;
    return dataio::LoadCsv(in.csv, schema.columns, options);
  }
  const dataio::StratumStats stats = in.stats.empty() ? dataio::DefaultIcuCohortStats()
                                                      : dataio::LoadStratumStats(in.stats);
  dataio::Frame frame =
      dataio::GenerateSyntheticCohort(stats, in.n, StageSeed(seed, "generate"));
  if (in.missing_fraction > 0.0) {
    frame = InjectMissing(frame, in.missing_fraction, StageSeed(seed, "missing"));
  }
  return frame;
}

Json CompareCohorts(const dataio::Frame& frame, std::ostream& csv) {
  using dataio::FormatDouble;
  const std::vector<int> labels = frame.Labels();
  csv << "feature,survivor_n,survivor_mean,survivor_sd,nonsurvivor_n,nonsurvivor_mean,"
         "nonsurvivor_sd,t,df,p\n";
  Json rows = Json::array();
  for (const std::string& name : frame.FeatureNames()) {
    const dataio::Column& c = frame.column(name);
    if (c.spec.kind == dataio::ColumnKind::kCategorical) continue;
    std::vector<double> group[2];
    for (std::size_t r = 0; r < c.size(); ++r) {
      if (!c.is_missing(r)) group[labels[r]].push_back(c.values[r]);
    }
    if (group[0].size() < 2 || group[1].size() < 2) continue;
    const evalstats::TTestResult t = evalstats::WelchTTest(group[0], group[1]);
    double mean[2], sd[2];
    for (int g = 0; g < 2; ++g) {
      mean[g] = Mean(group[g]);
      sd[g] = SampleSd(group[g]);
    }
    csv << dataio::CsvEscape(name) << ',' << group[0].size() << ',' << FormatDouble(mean[0])
        << ',' << FormatDouble(sd[0]) << ',' << group[1].size() << ','
        << FormatDouble(mean[1]) << ',' << FormatDouble(sd[1]) << ',' << FormatDouble(t.t)
        << ',' << FormatDouble(t.df) << ',' << FormatDouble(t.p) << '\n';
    rows.push_back({{"feature", name},
                    {"survivor_mean", mean[0]},
                    {"survivor_sd", sd[0]},
                    {"nonsurvivor_mean", mean[1]},
                    {"nonsurvivor_sd", sd[1]},
                    {"t", t.t},
                    {"df", t.df},
                    {"p", t.p}});
  }
  return rows;
}

std::vector<std::string> AleFeatures(const RunConfig& config, const dataio::Frame& prepared,
                                     const std::vector<std::string>& selected) {
  if (!config.ale.features.empty()) {
    for (const std::string& f : config.ale.features) {
      if (std::find(selected.begin(), selected.end(), f) == selected.end()) {
        throw ConfigError("ALE feature '" + f + "' is not a model feature");
      }
    }
    return config.ale.features;
  }
  std::vector<std::string> out;
  for (const std::string& f : selected) {
    if (prepared.column(f).spec.is_numeric_scale()) out.push_back(f);
  }
  return out;
}

RunResult Execute(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  const uint64_t seed = config.seed;
  RunResult result;
  result.output_dir = dir;
  Json& report = result.report;
  report["format_version"] = kRunReportVersion;
  report["seed"] = seed;
  Json config_doc = config.ToJson();
  config_doc.erase("output_dir");
  for (const char* key : {"stats", "csv", "schema"}) {
    Json& in = config_doc["input"];
    if (in.contains(key) && in[key].is_string()) {
      in[key] = fs::path(in[key].get<std::string>()).filename().string();
    }
  }
  report["config"] = config_doc;
  Json artifacts = Json::array();

  const dataio::Frame cohort = Stage("load", log, [&] {
    dataio::Frame frame = LoadInput(config.input, seed);
    if (!frame.has_label()) throw DataError("input has no label column");
    if (config.input.kind == InputKind::kSynthetic) {
      dataio::WriteCsv(frame, dir / "cohort.csv");
      artifacts.push_back("cohort.csv");
    }
    return frame;
  });
  report["cohort"] = {{"n_rows", cohort.n_rows()},
                      {"n_positive", cohort.CountPositive()},
                      {"prevalence", static_cast<double>(cohort.CountPositive()) /
                                         static_cast<double>(cohort.n_rows())},
                      {"n_features", cohort.FeatureNames().size()},
                      {"label", cohort.label_name()}};

  report["cohort_comparison"] = Stage("compare", log, [&] {
    Json rows;
    WriteFile(dir / "cohort_comparison.csv",
              [&](std::ostream& out) { rows = CompareCohorts(cohort, out); });
    artifacts.push_back("cohort_comparison.csv");
    return rows;
  });

  const dataio::FrameSplit split = Stage("split", log, [&] {
    return dataio::StratifiedSplit(cohort, config.test_fraction, StageSeed(seed, "split"));
  });
  report["split"] = {{"train_rows", split.train.n_rows()},
                     {"test_rows", split.test.n_rows()},
                     {"train_positive", split.train.CountPositive()},
                     {"test_positive", split.test.CountPositive()}};

  balance::Recipe base;
  base.preprocess = config.preprocess;
  base.scaler = config.scaler;
  base.smote_k = config.smote_k;
  base.smote = config.smote != SmotePlacement::kNone;

  const preprocess::FittedPreprocessor pre = Stage("preprocess", log, [&] {
    auto fitted = preprocess::FittedPreprocessor::Fit(split.train, config.preprocess,
                                                      StageSeed(seed, "preprocess"));
    WriteFile(dir / "preprocess.json",
              [&](std::ostream& out) { out << fitted.ToJson().dump(2) << '\n'; });
    artifacts.push_back("preprocess.json");
    return fitted;
  });
  const dataio::Frame& prepared_train = pre.prepared_train();
  const dataio::Frame prepared_test = pre.Prepare(split.test);

  result.selected = Stage("select", log, [&] {
    Json selection;
    std::vector<std::string> selected;
    if (!config.selection.features.empty()) {
      for (const std::string& f : config.selection.features) {
        if (!cohort.FindColumn(f) || f == cohort.label_name()) {
          throw ConfigError("selection feature '" + f + "' is not a cohort feature");
        }
      }
      selected = config.selection.features;
      selection = {{"mode", "explicit"}};
    } else {
      const std::size_t available = prepared_train.FeatureNames().size();
      const std::size_t k1 = std::min(config.selection.k1, available);
      const std::size_t k2 = std::min(config.selection.k2, k1);
      featselect::GiniOptions gini;
      gini.num_trees = config.selection.gini_trees;
      const featselect::TwoStageResult two =
          featselect::TwoStageSelect(prepared_train, k1, k2, StageSeed(seed, "select"), {},
                                     gini);
      WriteFile(dir / "rankings.csv", [&](std::ostream& out) {
        const featselect::FeatureRanking rankings[] = {two.anova, two.gini};
        featselect::WriteRankingCsv(out, rankings);
      });
      artifacts.push_back("rankings.csv");
      selected = two.selected;
      selection = {{"mode", "two_stage"}, {"k1", k1}, {"k2", k2}};
    }
    selection["features"] = selected;
    report["selection"] = selection;
    return selected;
  });
  base.features = result.selected;

  const balance::FoldPlan plan = Stage("folds", log, [&] {
    const std::vector<int> labels = split.train.Labels();
    balance::FoldPlan p =
        balance::StratifiedKFold(labels, config.cv_folds, StageSeed(seed, "folds"));
    WriteFile(dir / "fold_plan.txt", [&](std::ostream& out) { balance::WriteFoldPlan(out, p); });
    artifacts.push_back("fold_plan.txt");
    return p;
  });
  const std::vector<balance::PreparedFold> folds = Stage("folds", log, [&] {
    return balance::PrepareFolds(split.train, plan, base, StageSeed(seed, "folds/prepare"));
  });

  fs::create_directories(dir / "models");
  std::vector<evalstats::ReportRow> metric_rows;
  Json model_docs = Json::array();
  const std::vector<int> train_labels = prepared_train.Labels();
  const std::vector<int> test_labels = prepared_test.Labels();
  evalstats::EvaluateOptions eval;
  eval.bootstrap = config.bootstrap;
  eval.alpha = config.alpha;
  for (const models::HyperGrid& grid : config.grids) {
    const std::string name(models::FamilyName(grid.family));
    FamilyResult fr;
    fr.family = grid.family;
    Stage("train/" + name, log, [&] {
      fr.grid = models::GridSearch(folds, grid, plan, base, StageSeed(seed, "grid/" + name));
      balance::Recipe recipe = base;
      recipe.family = grid.family;
      recipe.hyperparams = fr.grid.best;
      recipe.smote = config.smote == SmotePlacement::kFoldsAndFinal;
      fr.model = balance::FitModelStage(prepared_train, recipe,
                                        StageSeed(seed, "final/" + name), &fr.synthetic_rows);
    });
    Stage("evaluate/" + name, log, [&] {
      const std::vector<double> train_probs = models::PredictProba(fr.model, prepared_train);
      const std::vector<double> test_probs = models::PredictProba(fr.model, prepared_test);
      const bool oof = config.threshold.source == ThresholdSource::kOof;
      const std::vector<double>& oof_probs = fr.grid.table[fr.grid.best_index].oof;
      fr.model.threshold =
          oof ? models::ChooseThreshold(oof_probs, train_labels, config.threshold.floor)
              : models::ChooseThreshold(test_probs, test_labels, config.threshold.floor);
      fr.train = evalstats::Evaluate(train_probs, train_labels, fr.model.threshold, eval,
                                     StageSeed(seed, "bootstrap/train/" + name));
      fr.test = evalstats::Evaluate(test_probs, test_labels, fr.model.threshold, eval,
                                    StageSeed(seed, "bootstrap/test/" + name));
      metric_rows.push_back({name, "train", fr.train});
      metric_rows.push_back({name, "test", fr.test});
      const auto roc = evalstats::RocCurve(test_probs, test_labels);
      WriteFile(dir / ("roc_" + name + ".csv"),
                [&](std::ostream& out) { evalstats::WriteRocCsv(out, roc); });
      models::SaveArtifact(fr.model, (dir / "models" / (name + ".json")).string());
      artifacts.push_back("roc_" + name + ".csv");
      artifacts.push_back("models/" + name + ".json");
    });
    Json grid_rows = Json::array();
    for (const models::GridRow& row : fr.grid.table) {
      grid_rows.push_back({{"hyperparams", row.hyperparams},
                           {"fold_auroc", row.fold_auroc},
                           {"mean_auroc", row.mean_auroc}});
    }
    model_docs.push_back({{"family", name},
                          {"best_hyperparams", fr.grid.best},
                          {"cv_mean_auroc", fr.grid.table[fr.grid.best_index].mean_auroc},
                          {"grid", grid_rows},
                          {"threshold", fr.model.threshold},
                          {"synthetic_rows", fr.synthetic_rows},
                          {"converged", fr.model.meta.converged},
                          {"train_fingerprint", fr.model.meta.train_fingerprint},
                          {"train", ReportToJson(fr.train)},
                          {"test", ReportToJson(fr.test)}});
    result.families.push_back(std::move(fr));
  }
  report["threshold"] = {
      {"floor", config.threshold.floor},
      {"source", config.threshold.source == ThresholdSource::kTest ? "test" : "oof"}};
  report["models"] = model_docs;
  WriteFile(dir / "metrics.csv",
            [&](std::ostream& out) { evalstats::WriteMetricsCsv(out, metric_rows); });
  artifacts.push_back("metrics.csv");

  report["ablation"] = Stage("ablation", log, [&] {
    const FamilyResult* fr = result.Find(config.ablation_family);
    balance::Recipe recipe = base;
    recipe.family = config.ablation_family;
    recipe.hyperparams = fr->grid.best;
    recipe.smote = config.smote == SmotePlacement::kFoldsAndFinal;
    const evalstats::AblationReport ab =
        evalstats::Ablation(split.train, split.test, recipe, StageSeed(seed, "ablation"));
    WriteFile(dir / "ablation.csv",
              [&](std::ostream& out) { evalstats::WriteAblationCsv(out, ab); });
    artifacts.push_back("ablation.csv");
    Json entries = Json::array();
    for (const auto& e : ab.entries) {
      entries.push_back(
          {{"feature", e.feature}, {"auroc_without", e.auroc_without}, {"delta", e.delta}});
    }
    return Json{{"family", std::string(models::FamilyName(config.ablation_family))},
                {"baseline_auroc", ab.baseline_auroc},
                {"entries", entries}};
  });

  const FamilyResult* post_family = result.Find(config.posterior.family);
  report["ale"] = Stage("ale", log, [&] {
    interpret::AleOptions options;
    options.n_bins = config.ale.n_bins;
    options.max_rows = config.ale.max_rows;
    Json curves = Json::array();
    for (const std::string& f : AleFeatures(config, prepared_train, result.selected)) {
      const interpret::AleCurve curve = interpret::AleFirstOrder(
          post_family->model, prepared_train, f, options, StageSeed(seed, "ale/" + f));
      const std::string file = "ale_" + f + ".csv";
      WriteFile(dir / file, [&](std::ostream& out) { interpret::WriteAleCsv(out, curve); });
      artifacts.push_back(file);
      curves.push_back({{"feature", f}, {"bins", curve.ale.size()}, {"file", file}});
    }
    return Json{{"family", std::string(models::FamilyName(config.posterior.family))},
                {"curves", curves}};
  });

  report["posterior"] = Stage("posterior", log, [&] {
    const posterior::PriorSpec priors =
        posterior::NonsurvivorPriors(prepared_train, result.selected);
    priors.Save((dir / "priors.json").string());
    result.posterior = posterior::PosteriorRisk(post_family->model, priors,
                                                config.posterior.samples,
                                                StageSeed(seed, "posterior"));
    WriteFile(dir / "posterior_histogram.csv",
              [&](std::ostream& out) { posterior::WriteHistogramCsv(out, result.posterior); });
    const auto& s = result.posterior;
    WriteFile(dir / "posterior_summary.csv", [&](std::ostream& out) {
      out << "statistic,value\n";
      out << "family," << models::FamilyName(config.posterior.family) << '\n';
      out << "n_samples," << s.n_samples << '\n';
      out << "seed," << s.seed << '\n';
      out << "mean," << dataio::FormatDouble(s.mean) << '\n';
      out << "sd," << dataio::FormatDouble(s.sd) << '\n';
      out << "median," << dataio::FormatDouble(s.median) << '\n';
      out << "q025," << dataio::FormatDouble(s.q025) << '\n';
      out << "q975," << dataio::FormatDouble(s.q975) << '\n';
      out << "prevalence,"
          << dataio::FormatDouble(static_cast<double>(cohort.CountPositive()) /
                                  static_cast<double>(cohort.n_rows()))
          << '\n';
    });
    artifacts.push_back("priors.json");
    artifacts.push_back("posterior_histogram.csv");
    artifacts.push_back("posterior_summary.csv");
    Json doc = s.ToJson();
    doc["family"] = std::string(models::FamilyName(config.posterior.family));
    return doc;
  });

  artifacts.push_back("run_report.json");
  report["artifacts"] = artifacts;
  Stage("report", log, [&] {
    WriteFile(dir / "run_report.json",
              [&](std::ostream& out) { out << report.dump(2) << '\n'; });
  });
  return result;
}

}  // namespace

const FamilyResult* RunResult::Find(models::Family family) const {
  for (const FamilyResult& f : families) {
    if (f.family == family) return &f;
  }
  return nullptr;
}

uint64_t StageSeed(uint64_t master, std::string_view stage) {
  return DeriveSeed(master, stage);
}

RunResult RunPipeline(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw StageError("setup", ErrorCode::kIo,
                     "cannot create '" + dir.string() + "': " + ec.message());
  }
  fs::remove(dir / "FAILED", ec);
  fs::remove(dir / "run_report.json", ec);
  try {
    return Execute(config, log);
  } catch (const StageError& e) {
    std::ofstream marker(dir / "FAILED");
    marker << e.what() << '\n';
    throw;
  }
}

}  // namespace icurisk::pipeline
