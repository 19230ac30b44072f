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


#ifndef ICURISK_DATAIO_FRAME_H_
#define ICURISK_DATAIO_FRAME_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icurisk/common/matrix.h"

namespace icurisk::dataio {

enum class ColumnKind { kContinuous, kBinary, kScore, kCategorical };

std::string_view ColumnKindName(ColumnKind kind);
ColumnKind ParseColumnKind(std::string_view name);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  std::string unit;
  // Declared integer range, only meaningful for score columns.
  int score_min = 0;
  int score_max = 0;

  bool is_numeric_scale() const {
    return kind == ColumnKind::kContinuous || kind == ColumnKind::kScore;
  }
};

// One typed column. Categorical cells hold an index into `levels`; missing
// cells hold 0 and are flagged in `missing`.
struct Column {
  ColumnSpec spec;
  std::vector<double> values;
  std::vector<uint8_t> missing;
  std::vector<std::string> levels;

  std::size_t size() const { return values.size(); }
  bool is_missing(std::size_t row) const { return missing[row] != 0; }
  std::size_t CountMissing() const;
  // Values of the non-missing cells, in row order.
  std::vector<double> Observed() const;
};

// Builds a fully observed column.
Column MakeColumn(ColumnSpec spec, std::vector<double> values);

// Immutable column-typed table with per-cell missingness and an optional
// binary label column. Each row remembers the id it had in the frame it was
// originally loaded or generated as, so that row subsets can be audited.
class Frame {
 public:
  Frame() = default;
  Frame(std::vector<Column> columns,
        std::optional<std::string> label = std::nullopt);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_[index]; }
  const Column& column(std::string_view name) const;
  std::optional<std::size_t> FindColumn(std::string_view name) const;
  std::vector<ColumnSpec> schema() const;

  bool has_label() const { return label_index_.has_value(); }
  const std::string& label_name() const;
  std::vector<int> Labels() const;
  std::size_t CountPositive() const;

  // Names of all non-label columns in schema order.
  std::vector<std::string> FeatureNames() const;

  double MissingFraction(std::string_view name) const;
  bool HasMissing() const;

  std::span<const std::size_t> row_ids() const { return row_ids_; }

  Frame SelectRows(std::span<const std::size_t> rows) const;
  // Keeps the named columns (in the given order) plus the label, if any.
  Frame SelectColumns(std::span<const std::string> names) const;
  // Returns a copy with the same-named column replaced.
  Frame WithColumn(Column replacement) const;
  Frame WithRowIds(std::vector<std::size_t> ids) const;

  // Dense matrix of the named columns; fails on missing cells.
  Matrix ToMatrix(std::span<const std::string> names) const;

 private:
  std::vector<Column> columns_;
  std::optional<std::size_t> label_index_;
  std::size_t n_rows_ = 0;
  std::vector<std::size_t> row_ids_;
};

}  // namespace icurisk::dataio

#endif  // ICURISK_DATAIO_FRAME_H_
