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


#ifndef ICURISK_DATAIO_CSV_H_
#define ICURISK_DATAIO_CSV_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icurisk/dataio/frame.h"

namespace icurisk::dataio {

struct CsvOptions {
  // Cells equal to this token are missing. Empty cells are always missing.
  std::string missing_token;
  std::optional<std::string> label;
};

// Parses one line of comma-separated fields; double quotes may wrap a field
// and a doubled quote inside a quoted field is a literal quote.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Reads a frame. The header must name exactly the schema's columns (any
// order); the resulting frame follows schema order.
Frame ReadCsv(std::istream& in, std::span<const ColumnSpec> schema,
              const CsvOptions& options = {},
              std::string_view source = "<stream>");
Frame LoadCsv(const std::filesystem::path& path,
              std::span<const ColumnSpec> schema,
              const CsvOptions& options = {});

// Reals are written in shortest round-trip form, so ReadCsv(WriteCsv(f))
// reproduces every finite value bit-exactly.
void WriteCsv(const Frame& frame, std::ostream& out,
              std::string_view missing_token = "");
void WriteCsv(const Frame& frame, const std::filesystem::path& path,
              std::string_view missing_token = "");

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);
std::string CsvEscape(std::string_view field);

}  // namespace icurisk::dataio

#endif  // ICURISK_DATAIO_CSV_H_
