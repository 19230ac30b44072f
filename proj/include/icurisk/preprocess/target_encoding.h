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


#ifndef ICURISK_PREPROCESS_TARGET_ENCODING_H_
#define ICURISK_PREPROCESS_TARGET_ENCODING_H_

#include <map>
#include <span>
#include <string>

#include "icurisk/dataio/frame.h"
#include "json.hpp"

namespace icurisk::preprocess {

// Smoothed target encoding of one categorical column:
//   level -> (n_c * mean_c + m * global_mean) / (n_c + m).
// Levels not seen during fitting, and missing cells, map to the global mean.
class TargetEncoder {
 public:
  TargetEncoder() = default;

  // Fits on `fit_rows` of `column` against binary `labels` (same length as the
  // column). Labels must be 0/1 on every fit row.
  static TargetEncoder Fit(const dataio::Column& column,
                           std::span<const int> labels,
                           std::span<const std::size_t> fit_rows,
                           double m = 10.0);

  double Encode(const std::string& level) const;
  // Returns a continuous column with the same name and no missing cells.
  dataio::Column Transform(const dataio::Column& column) const;

  const std::string& column() const { return column_; }
  double global_mean() const { return global_mean_; }
  double smoothing() const { return m_; }
  const std::map<std::string, double>& encoding() const { return encoding_; }

  nlohmann::ordered_json ToJson() const;
  static TargetEncoder FromJson(const nlohmann::ordered_json& j);

 private:
  std::string column_;
  double m_ = 10.0;
  double global_mean_ = 0.0;
  std::map<std::string, double> encoding_;
};

}  // namespace icurisk::preprocess

#endif  // ICURISK_PREPROCESS_TARGET_ENCODING_H_
