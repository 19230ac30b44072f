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


#include "icurisk/dataio/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "icurisk/common/error.h"

namespace icurisk::dataio {
namespace {

std::string Where(std::string_view source, std::size_t line,
                  std::string_view column) {
  std::ostringstream os;
  os << source << ": line " << line << ", column '" << column << "'";
  return os.str();
}

bool ParseReal(std::string_view text, double* out) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), *out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() &&
         std::isfinite(*out);
}

}  // namespace

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

Frame ReadCsv(std::istream& in, std::span<const ColumnSpec> schema,
              const CsvOptions& options, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw DataError(std::string(source) + ": empty file");

  const std::vector<std::string> header = SplitCsvLine(line);
  std::map<std::string, std::size_t> schema_index;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    schema_index[schema[i].name] = i;
  }
  std::vector<std::size_t> field_to_schema(header.size());
  std::vector<bool> seen(schema.size(), false);
  for (std::size_t f = 0; f < header.size(); ++f) {
    const auto it = schema_index.find(header[f]);
    if (it == schema_index.end()) {
      throw DataError(std::string(source) + ": header mismatch, column '" +
                      header[f] + "' is not in the schema");
    }
    if (seen[it->second]) {
      throw DataError(std::string(source) + ": duplicate header column '" +
                      header[f] + "'");
    }
    seen[it->second] = true;
    field_to_schema[f] = it->second;
  }
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (!seen[i]) {
      throw DataError(std::string(source) + ": header mismatch, schema column '" +
                      schema[i].name + "' is absent");
    }
  }

  std::vector<Column> columns(schema.size());
  std::vector<std::map<std::string, std::size_t>> level_index(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) columns[i].spec = schema[i];

  while (next_line()) {
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw DataError(std::string(source) + ": line " + std::to_string(line_no) +
                      " has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(header.size()));
    }
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const std::size_t s = field_to_schema[f];
      Column& col = columns[s];
      const std::string& cell = fields[f];
      if (cell.empty() || cell == options.missing_token) {
        col.values.push_back(0.0);
        col.missing.push_back(1);
        continue;
      }
      double v = 0.0;
      if (col.spec.kind == ColumnKind::kCategorical) {
        auto [it, inserted] =
            level_index[s].try_emplace(cell, col.levels.size());
        if (inserted) col.levels.push_back(cell);
        v = static_cast<double>(it->second);
      } else {
        if (!ParseReal(cell, &v)) {
          throw DataError(Where(source, line_no, col.spec.name) +
                          ": cannot parse '" + cell + "' as a number");
        }
        if (col.spec.kind == ColumnKind::kBinary && v != 0.0 && v != 1.0) {
          throw DataError(Where(source, line_no, col.spec.name) +
                          ": binary cell must be 0 or 1, got '" + cell + "'");
        }
        if (col.spec.kind == ColumnKind::kScore &&
            (v < col.spec.score_min || v > col.spec.score_max)) {
          throw DataError(Where(source, line_no, col.spec.name) +
                          ": score outside declared range");
        }
      }
      col.values.push_back(v);
      col.missing.push_back(0);
    }
  }
  return Frame(std::move(columns), options.label);
}

Frame LoadCsv(const std::filesystem::path& path,
              std::span<const ColumnSpec> schema, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return ReadCsv(in, schema, options, path.string());
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteCsv(const Frame& frame, std::ostream& out,
              std::string_view missing_token) {
  const auto& cols = frame.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (j) out << ',';
    out << CsvEscape(cols[j].spec.name);
  }
  out << '\n';
  for (std::size_t r = 0; r < frame.n_rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (j) out << ',';
      const Column& c = cols[j];
      if (c.missing[r]) {
        out << missing_token;
      } else if (c.spec.kind == ColumnKind::kCategorical) {
        out << CsvEscape(c.levels[static_cast<std::size_t>(c.values[r])]);
      } else {
        out << FormatDouble(c.values[r]);
      }
    }
    out << '\n';
  }
}

void WriteCsv(const Frame& frame, const std::filesystem::path& path,
              std::string_view missing_token) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  WriteCsv(frame, out, missing_token);
}

}  // namespace icurisk::dataio
