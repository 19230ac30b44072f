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


#include "icurisk/dataio/frame.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "icurisk/common/error.h"

namespace icurisk::dataio {

std::string_view ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kContinuous:
      return "continuous";
    case ColumnKind::kBinary:
      return "binary";
    case ColumnKind::kScore:
      return "score";
    case ColumnKind::kCategorical:
      return "categorical";
  }
  return "continuous";
}

ColumnKind ParseColumnKind(std::string_view name) {
  if (name == "continuous") return ColumnKind::kContinuous;
  if (name == "binary") return ColumnKind::kBinary;
  if (name == "score") return ColumnKind::kScore;
  if (name == "categorical") return ColumnKind::kCategorical;
  throw ConfigError("unknown column kind '" + std::string(name) + "'");
}

std::size_t Column::CountMissing() const {
  return static_cast<std::size_t>(
      std::count(missing.begin(), missing.end(), uint8_t{1}));
}

std::vector<double> Column::Observed() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!missing[i]) out.push_back(values[i]);
  }
  return out;
}

Column MakeColumn(ColumnSpec spec, std::vector<double> values) {
  Column c;
  c.spec = std::move(spec);
  c.missing.assign(values.size(), 0);
  c.values = std::move(values);
  return c;
}

Frame::Frame(std::vector<Column> columns, std::optional<std::string> label)
    : columns_(std::move(columns)) {
  n_rows_ = columns_.empty() ? 0 : columns_.front().values.size();
  std::set<std::string> names;
  for (const Column& c : columns_) {
    if (!names.insert(c.spec.name).second) {
      throw InvalidArgumentError("duplicate column name '" + c.spec.name + "'");
    }
    if (c.values.size() != n_rows_ || c.missing.size() != n_rows_) {
      throw InvalidArgumentError("column '" + c.spec.name +
                                 "' length differs from the frame");
    }
    if (c.spec.kind == ColumnKind::kScore && c.spec.score_min > c.spec.score_max) {
      throw InvalidArgumentError("score column '" + c.spec.name +
                                 "' has an empty declared range");
    }
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (c.missing[r]) continue;
      const double v = c.values[r];
      if (c.spec.kind == ColumnKind::kBinary && v != 0.0 && v != 1.0) {
        throw DataError("binary column '" + c.spec.name + "' holds " +
                        std::to_string(v) + " at row " + std::to_string(r));
      }
      if (c.spec.kind == ColumnKind::kCategorical &&
          (v < 0 || static_cast<std::size_t>(v) >= c.levels.size())) {
        throw InvalidArgumentError("categorical code out of range in '" +
                                   c.spec.name + "'");
      }
    }
  }
  if (label) {
    label_index_ = FindColumn(*label);
    if (!label_index_) {
      throw InvalidArgumentError("label column '" + *label + "' not in frame");
    }
    const Column& lc = columns_[*label_index_];
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (lc.missing[r]) {
        throw DataError("label '" + *label + "' missing at row " +
                        std::to_string(r));
      }
      if (lc.values[r] != 0.0 && lc.values[r] != 1.0) {
        throw DataError("label '" + *label + "' is not binary at row " +
                        std::to_string(r));
      }
    }
  }
  row_ids_.resize(n_rows_);
  std::iota(row_ids_.begin(), row_ids_.end(), std::size_t{0});
}

const Column& Frame::column(std::string_view name) const {
  const auto idx = FindColumn(name);
  if (!idx) throw NotFoundError("no column named '" + std::string(name) + "'");
  return columns_[*idx];
}

std::optional<std::size_t> Frame::FindColumn(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].spec.name == name) return i;
  }
  return std::nullopt;
}

std::vector<ColumnSpec> Frame::schema() const {
  std::vector<ColumnSpec> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.spec);
  return out;
}

const std::string& Frame::label_name() const {
  if (!label_index_) throw InvalidArgumentError("frame has no label column");
  return columns_[*label_index_].spec.name;
}

std::vector<int> Frame::Labels() const {
  if (!label_index_) throw InvalidArgumentError("frame has no label column");
  const Column& lc = columns_[*label_index_];
  std::vector<int> y(n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r) y[r] = lc.values[r] != 0.0 ? 1 : 0;
  return y;
}

std::size_t Frame::CountPositive() const {
  const auto y = Labels();
  return static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
}

std::vector<std::string> Frame::FeatureNames() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (label_index_ && *label_index_ == i) continue;
    out.push_back(columns_[i].spec.name);
  }
  return out;
}

double Frame::MissingFraction(std::string_view name) const {
  if (n_rows_ == 0) return 0.0;
  return static_cast<double>(column(name).CountMissing()) /
         static_cast<double>(n_rows_);
}

bool Frame::HasMissing() const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [](const Column& c) { return c.CountMissing() > 0; });
}

Frame Frame::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const Column& c : columns_) {
    Column out;
    out.spec = c.spec;
    out.levels = c.levels;
    out.values.reserve(rows.size());
    out.missing.reserve(rows.size());
    for (const std::size_t r : rows) {
      if (r >= n_rows_) throw InvalidArgumentError("row index out of range");
      out.values.push_back(c.values[r]);
      out.missing.push_back(c.missing[r]);
    }
    cols.push_back(std::move(out));
  }
  std::optional<std::string> label;
  if (label_index_) label = columns_[*label_index_].spec.name;
  Frame f(std::move(cols), label);
  for (std::size_t i = 0; i < rows.size(); ++i) f.row_ids_[i] = row_ids_[rows[i]];
  return f;
}

Frame Frame::SelectColumns(std::span<const std::string> names) const {
  std::vector<Column> cols;
  for (const std::string& name : names) {
    if (label_index_ && name == label_name()) continue;
    cols.push_back(column(name));
  }
  std::optional<std::string> label;
  if (label_index_) {
    cols.push_back(columns_[*label_index_]);
    label = columns_[*label_index_].spec.name;
  }
  Frame f(std::move(cols), label);
  f.row_ids_ = row_ids_;
  return f;
}

Frame Frame::WithColumn(Column replacement) const {
  const auto idx = FindColumn(replacement.spec.name);
  if (!idx) {
    throw NotFoundError("no column named '" + replacement.spec.name + "'");
  }
  std::vector<Column> cols = columns_;
  cols[*idx] = std::move(replacement);
  std::optional<std::string> label;
  if (label_index_) label = columns_[*label_index_].spec.name;
  Frame f(std::move(cols), label);
  f.row_ids_ = row_ids_;
  return f;
}

Frame Frame::WithRowIds(std::vector<std::size_t> ids) const {
  if (ids.size() != n_rows_) throw InvalidArgumentError("row id count mismatch");
  Frame f = *this;
  f.row_ids_ = std::move(ids);
  return f;
}

Matrix Frame::ToMatrix(std::span<const std::string> names) const {
  std::vector<const Column*> cols;
  cols.reserve(names.size());
  for (const std::string& name : names) cols.push_back(&column(name));
  Matrix m(n_rows_, names.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Column& c = *cols[j];
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (c.missing[r]) {
        throw DataError("missing cell in '" + c.spec.name + "' at row " +
                        std::to_string(r) + "; impute before modeling");
      }
      m(r, j) = c.values[r];
    }
  }
  return m;
}

}  // namespace icurisk::dataio
