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


#include "icurisk/dataio/schema.h"

#include <fstream>

#include "icurisk/common/error.h"

namespace icurisk::dataio {

using nlohmann::ordered_json;

ordered_json ColumnSpecToJson(const ColumnSpec& spec) {
  ordered_json j = {{"name", spec.name}, {"kind", std::string(ColumnKindName(spec.kind))}};
  if (!spec.unit.empty()) j["unit"] = spec.unit;
  if (spec.kind == ColumnKind::kScore) j["score_range"] = {spec.score_min, spec.score_max};
  return j;
}

ColumnSpec ColumnSpecFromJson(const ordered_json& j) {
  ColumnSpec spec;
  try {
    spec.name = j.at("name").get<std::string>();
    spec.kind = ParseColumnKind(j.value("kind", std::string("continuous")));
    spec.unit = j.value("unit", std::string());
    if (spec.kind == ColumnKind::kScore) {
      const auto& range = j.at("score_range");
      spec.score_min = range.at(0).get<int>();
      spec.score_max = range.at(1).get<int>();
      if (spec.score_min > spec.score_max) {
        throw ConfigError("column '" + spec.name + "': score_range is reversed");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed column spec: ") + e.what());
  }
  return spec;
}

ordered_json CsvSchemaToJson(const CsvSchema& schema) {
  ordered_json columns = ordered_json::array();
  for (const ColumnSpec& c : schema.columns) columns.push_back(ColumnSpecToJson(c));
  return {{"label", schema.label}, {"columns", columns}};
}

CsvSchema CsvSchemaFromJson(const ordered_json& j) {
  CsvSchema schema;
  try {
    schema.label = j.at("label").get<std::string>();
    for (const auto& c : j.at("columns")) schema.columns.push_back(ColumnSpecFromJson(c));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed schema: ") + e.what());
  }
  bool found = false;
  for (const ColumnSpec& c : schema.columns) {
    if (c.name != schema.label) continue;
    if (c.kind != ColumnKind::kBinary) {
      throw ConfigError("label column '" + schema.label + "' must be binary");
    }
    found = true;
  }
  if (!found) throw ConfigError("label column '" + schema.label + "' not in schema");
  return schema;
}

CsvSchema LoadCsvSchema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return CsvSchemaFromJson(ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace icurisk::dataio
