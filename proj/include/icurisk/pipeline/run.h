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


#ifndef ICURISK_PIPELINE_RUN_H_
#define ICURISK_PIPELINE_RUN_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "icurisk/common/error.h"
#include "icurisk/evalstats/metrics.h"
#include "icurisk/models/artifact.h"
#include "icurisk/models/grid_search.h"
#include "icurisk/pipeline/config.h"
#include "icurisk/posterior/risk.h"

namespace icurisk::pipeline {

// A failure inside one pipeline stage. Keeps the original error code.
class StageError : public Error {
 public:
  StageError(std::string stage, ErrorCode code, const std::string& message)
      : Error(code, stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct FamilyResult {
  models::Family family = models::Family::kLogistic;
  models::GridResult grid;
  models::ModelArtifact model;
  std::size_t synthetic_rows = 0;
  evalstats::EvalReport train;
  evalstats::EvalReport test;
};

struct RunResult {
  std::filesystem::path output_dir;
  Json report;
  std::vector<std::string> selected;
  std::vector<FamilyResult> families;
  posterior::PosteriorSummary posterior;

  const FamilyResult* Find(models::Family family) const;
};

inline constexpr int kRunReportVersion = 1;

// Seed for one named stage; every stochastic stage draws from this.
uint64_t StageSeed(uint64_t master, std::string_view stage);

// Runs every stage in order and writes artifacts under config.output_dir.
// On failure a FAILED marker holding "stage: message" is written and a
// StageError is thrown. `log` receives one line per stage when non-null.
RunResult RunPipeline(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace icurisk::pipeline

#endif  // ICURISK_PIPELINE_RUN_H_
