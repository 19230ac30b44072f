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


#ifndef ICURISK_DATAIO_SCHEMA_H_
#define ICURISK_DATAIO_SCHEMA_H_

#include <filesystem>
#include <string>
#include <vector>

#include "icurisk/dataio/frame.h"
#include "json.hpp"

namespace icurisk::dataio {

// Column layout of an external CSV cohort.
struct CsvSchema {
  std::vector<ColumnSpec> columns;
  std::string label;
};

nlohmann::ordered_json ColumnSpecToJson(const ColumnSpec& spec);
ColumnSpec ColumnSpecFromJson(const nlohmann::ordered_json& j);

nlohmann::ordered_json CsvSchemaToJson(const CsvSchema& schema);
// Throws ConfigError when the document is malformed or the label is not a
// binary column of the schema.
CsvSchema CsvSchemaFromJson(const nlohmann::ordered_json& j);
CsvSchema LoadCsvSchema(const std::filesystem::path& path);

}  // namespace icurisk::dataio

#endif  // ICURISK_DATAIO_SCHEMA_H_
