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


#ifndef ICURISK_PREPROCESS_PREPARE_H_
#define ICURISK_PREPROCESS_PREPARE_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "icurisk/dataio/frame.h"
#include "icurisk/preprocess/impute.h"
#include "icurisk/preprocess/target_encoding.h"
#include "json.hpp"

namespace icurisk::preprocess {

enum class ImputerKind { kMedianMode, kIterativeForest };

std::string_view ImputerKindName(ImputerKind kind);
ImputerKind ParseImputerKind(std::string_view name);

struct PreprocessOptions {
  ImputerKind imputer = ImputerKind::kIterativeForest;
  IterativeImputeOptions iterative;
  double target_smoothing = 10.0;
};

// Imputation and categorical encoding fitted on one labeled frame and
// replayable on others. The fitted frame is imputed with the configured
// imputer; any other frame has its missing cells filled with the fitted
// frame's medians/modes. Categorical columns become target-encoded
// continuous columns in both cases.
class FittedPreprocessor {
 public:
  static FittedPreprocessor Fit(const dataio::Frame& train,
                                const PreprocessOptions& options, uint64_t seed);

  // The fitted frame after imputation and encoding.
  const dataio::Frame& prepared_train() const { return prepared_train_; }
  dataio::Frame Prepare(const dataio::Frame& frame) const;

  // Row ids of the frame the preprocessor was fitted on.
  const std::vector<std::size_t>& fit_row_ids() const { return fit_row_ids_; }
  const std::vector<ColumnFill>& fills() const { return fills_; }
  const std::vector<TargetEncoder>& encoders() const { return encoders_; }
  const IterativeImputeTrace& impute_trace() const { return trace_; }

  nlohmann::ordered_json ToJson() const;

 private:
  PreprocessOptions options_;
  dataio::Frame prepared_train_;
  std::vector<std::size_t> fit_row_ids_;
  std::vector<ColumnFill> fills_;
  std::vector<TargetEncoder> encoders_;
  IterativeImputeTrace trace_;
};

}  // namespace icurisk::preprocess

#endif  // ICURISK_PREPROCESS_PREPARE_H_
