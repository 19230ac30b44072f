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


#include <csignal>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icurisk/common/error.h"
#include "icurisk/dataio/csv.h"
#include "icurisk/dataio/schema.h"
#include "icurisk/dataio/synthetic.h"
#include "icurisk/pipeline/config.h"
#include "icurisk/pipeline/report.h"
#include "icurisk/pipeline/run.h"
#include "icurisk/posterior/risk.h"
#include "icurisk/serve/server.h"

namespace {

namespace fs = std::filesystem;
using namespace icurisk;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitStage = 4;

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
      return kExitConfig;
    case ErrorCode::kData:
      return kExitData;
    default:
      return kExitStage;
  }
}

serve::Server* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

int Run(const std::string& config_path, const std::vector<std::string>& overrides,
        const std::string& output, bool quiet, bool report) {
  pipeline::RunConfig config =
      config_path.empty() ? pipeline::DefaultRunConfig()
                          : pipeline::LoadRunConfig(config_path, overrides);
  if (config_path.empty() && !overrides.empty()) {
    pipeline::Json doc = config.ToJson();
    for (const std::string& o : overrides) pipeline::ApplyOverride(doc, o);
    config = pipeline::RunConfig::FromJson(doc, fs::current_path());
  }
  if (!output.empty()) config.output_dir = output;
  const pipeline::RunResult result = pipeline::RunPipeline(config, quiet ? nullptr : &std::cerr);
  if (report) pipeline::EmitReport(result.output_dir);
  for (const auto& f : result.families) {
    std::cout << models::FamilyName(f.family) << ": test AUROC " << f.test.auroc << " ["
              << f.test.ci_low << ", " << f.test.ci_high << "], sensitivity "
              << f.test.sensitivity << '\n';
  }
  std::cout << "posterior mean " << result.posterior.mean << ", 95% interval ["
            << result.posterior.q025 << ", " << result.posterior.q975 << "]\n";
  std::cout << "artifacts in " << result.output_dir.string() << '\n';
  return kExitOk;
}

int Generate(const std::string& stats_path, std::size_t n, uint64_t seed,
             const std::string& out, const std::string& schema_out) {
  const dataio::StratumStats stats =
      stats_path.empty() ? dataio::DefaultIcuCohortStats() : dataio::LoadStratumStats(stats_path);
  const dataio::Frame frame = dataio::GenerateSyntheticCohort(stats, n, seed);
  dataio::WriteCsv(frame, fs::path(out));
  if (!schema_out.empty()) {
    std::ofstream s(schema_out);
    if (!s) throw IoError("cannot write '" + schema_out + "'");
    s << dataio::CsvSchemaToJson({frame.schema(), frame.label_name()}).dump(2) << '\n';
  }
  std::cout << "wrote " << frame.n_rows() << " rows (" << frame.CountPositive()
            << " positive) to " << out << '\n';
  return kExitOk;
}

int Posterior(const std::string& model_path, const std::string& priors_path, std::size_t n,
              uint64_t seed, const std::string& out) {
  const models::ModelArtifact model = models::LoadArtifact(model_path);
  const posterior::PriorSpec priors = posterior::PriorSpec::Load(priors_path);
  const posterior::PosteriorSummary summary = posterior::PosteriorRisk(model, priors, n, seed);
  const std::string text = summary.ToJson().dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream o(out);
    if (!o) throw IoError("cannot write '" + out + "'");
    o << text << '\n';
  }
  return kExitOk;
}

int Serve(std::string model, std::string priors, std::string ale_dir, const std::string& run_dir,
          const std::string& host, int port, const serve::ServeOptions& options) {
  if (!run_dir.empty()) {
    std::string family = "gbdt";
    std::ifstream in(fs::path(run_dir) / "run_report.json");
    if (in) {
      const auto report = models::Json::parse(in);
      family = report.at("posterior").at("family").get<std::string>();
    }
    if (model.empty()) model = (fs::path(run_dir) / "models" / (family + ".json")).string();
    if (priors.empty()) priors = (fs::path(run_dir) / "priors.json").string();
    if (ale_dir.empty()) ale_dir = run_dir;
  }
  if (model.empty() || priors.empty()) {
    throw ConfigError("serve needs --model and --priors, or --run");
  }
  const serve::ServeState state = serve::LoadServeState(model, priors, ale_dir, options);
  serve::Server server(state);
  const int bound = server.Bind(host, port);
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cerr << "serving " << models::FamilyName(state.model.family) << " model on http://"
            << host << ':' << bound << '\n';
  server.ListenAfterBind();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"icurisk: ICU mortality risk pipeline"};
  app.require_subcommand(1);

  std::string config_path, output;
  std::vector<std::string> overrides;
  bool quiet = false, no_report = false;
  auto* run = app.add_subcommand("run", "Run the full pipeline from a config file");
  run->add_option("-c,--config", config_path, "Run config JSON (defaults when omitted)");
  run->add_option("--set", overrides, "Override one config key, e.g. --set seed=7");
  run->add_option("-o,--output", output, "Output directory (overrides output_dir)");
  run->add_flag("-q,--quiet", quiet, "Do not log stages");
  run->add_flag("--no-report", no_report, "Skip summary and plots");

  std::string run_dir;
  auto* report = app.add_subcommand("report", "Render summary and SVG plots for a run");
  report->add_option("run_dir", run_dir, "Completed run directory")->required();

  std::string stats_path, out, schema_out;
  std::size_t n = 1478;
  uint64_t seed = 2024;
  auto* generate = app.add_subcommand("generate", "Write a synthetic cohort CSV");
  generate->add_option("--stats", stats_path, "Stratum statistics JSON (built-in when omitted)");
  generate->add_option("-n,--rows", n, "Number of rows")->check(CLI::Range(50, 100000000));
  generate->add_option("--seed", seed, "Seed");
  generate->add_option("-o,--out", out, "Output CSV")->required();
  generate->add_option("--schema-out", schema_out, "Also write the CSV schema JSON");

  std::string model_path, priors_path, post_out;
  std::size_t samples = 20000;
  uint64_t post_seed = 2024;
  auto* post = app.add_subcommand("posterior", "Posterior risk for a prior specification");
  post->add_option("-m,--model", model_path, "Model artifact JSON")->required();
  post->add_option("-p,--priors", priors_path, "Prior specification JSON")->required();
  post->add_option("-n,--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  post->add_option("--seed", post_seed, "Seed");
  post->add_option("-o,--out", post_out, "Write the summary here instead of stdout");

  std::string serve_model, serve_priors, serve_ale, serve_run, host = "127.0.0.1";
  int port = 8080;
  serve::ServeOptions serve_options;
  auto* srv = app.add_subcommand("serve", "Serve a model over HTTP");
  srv->add_option("--model", serve_model, "Model artifact JSON");
  srv->add_option("--priors", serve_priors, "Cohort prior specification JSON");
  srv->add_option("--ale-dir", serve_ale, "Directory holding ale_<feature>.csv files");
  srv->add_option("--run", serve_run, "Run directory supplying model, priors and ALE curves");
  srv->add_option("--host", host, "Bind address");
  srv->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  srv->add_option("--max-samples", serve_options.max_samples, "Posterior sample cap");
  srv->add_option("--seed", serve_options.default_seed, "Default posterior seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return Run(config_path, overrides, output, quiet, !no_report);
    if (*report) {
      for (const std::string& f : pipeline::EmitReport(run_dir).written) {
        std::cout << (fs::path(run_dir) / f).string() << '\n';
      }
      return kExitOk;
    }
    if (*generate) return Generate(stats_path, n, seed, out, schema_out);
    if (*post) return Posterior(model_path, priors_path, samples, post_seed, post_out);
    if (*srv) {
      return Serve(serve_model, serve_priors, serve_ale, serve_run, host, port, serve_options);
    }
  } catch (const pipeline::StageError& e) {
    std::cerr << "error in stage " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return kExitOk;
}
