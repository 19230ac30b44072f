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


#include "icurisk/common/matrix.h"

#include <algorithm>
#include <string>

#include "icurisk/common/error.h"

namespace icurisk {

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw InvalidArgumentError("ragged rows in Matrix::FromRows at row " +
                                 std::to_string(r));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.Row(r).begin());
  }
  return m;
}

std::vector<double> Matrix::Column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) {
    throw InvalidArgumentError("AppendRow: expected " + std::to_string(cols_) +
                               " values, got " + std::to_string(row.size()));
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = Row(rows[i]);
    std::copy(src.begin(), src.end(), out.Row(i).begin());
  }
  return out;
}

Matrix Matrix::SelectColumns(std::span<const std::size_t> cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(r, j) = (*this)(r, cols[j]);
    }
  }
  return out;
}

}  // namespace icurisk
