//
// Copyright 2026 The AnonForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include "anonforge/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "anonforge/csv.h"
#include "anonforge/error.h"
#include "anonforge/random.h"
#include "json.hpp"

namespace anonforge {
namespace {

using nlohmann::json;

AttributeKind ParseKind(const std::string& text) {
  if (text == "numeric") return AttributeKind::kNumeric;
  if (text == "categorical") return AttributeKind::kCategorical;
  throw SchemaError("unknown attribute kind '" + text + "'");
}

AttributeRole ParseRole(const std::string& text) {
  if (text == "quasi_identifier") return AttributeRole::kQuasiIdentifier;
  if (text == "sensitive") return AttributeRole::kSensitive;
  if (text == "excluded") return AttributeRole::kExcluded;
  throw SchemaError("unknown attribute role '" + text + "'");
}

bool IsMissingToken(std::string_view text) {
  return text.empty() || text == kMissingToken;
}

}  // namespace

std::string_view AttributeKindName(AttributeKind kind) {
  return kind == AttributeKind::kNumeric ? "numeric" : "categorical";
}

std::string_view AttributeRoleName(AttributeRole role) {
  switch (role) {
    case AttributeRole::kQuasiIdentifier: return "quasi_identifier";
    case AttributeRole::kSensitive: return "sensitive";
    case AttributeRole::kExcluded: return "excluded";
  }
  return "excluded";
}

Schema::Schema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  std::set<std::string_view> seen;
  for (const auto& a : attributes_) {
    if (a.name.empty()) throw SchemaError("attribute with empty name");
    if (!seen.insert(a.name).second) {
      throw SchemaError("duplicate attribute '" + a.name + "'");
    }
  }
}

Schema Schema::FromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc["attributes"].is_array()) {
    throw SchemaError("schema must be an object with an 'attributes' array");
  }
  std::vector<Attribute> attributes;
  for (const auto& item : doc["attributes"]) {
    try {
      attributes.push_back({item.at("name").get<std::string>(),
                            ParseKind(item.at("kind").get<std::string>()),
                            ParseRole(item.at("role").get<std::string>())});
    } catch (const json::exception& e) {
      throw SchemaError(std::string("malformed schema attribute: ") + e.what());
    }
  }
  return Schema(std::move(attributes));
}

Schema Schema::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::string Schema::ToJson() const {
  json attrs = json::array();
  for (const auto& a : attributes_) {
    attrs.push_back({{"name", a.name},
                     {"kind", AttributeKindName(a.kind)},
                     {"role", AttributeRoleName(a.role)}});
  }
  return json{{"attributes", attrs}}.dump(2);
}

std::optional<std::size_t> Schema::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Schema::RequireIndex(std::string_view name) const {
  auto index = IndexOf(name);
  if (!index) throw SchemaError("unknown attribute '" + std::string(name) + "'");
  return *index;
}

std::vector<std::size_t> Schema::QuasiIdentifiers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].role == AttributeRole::kQuasiIdentifier) out.push_back(i);
  }
  return out;
}

std::vector<std::string> Schema::QuasiIdentifierNames() const {
  std::vector<std::string> out;
  for (std::size_t i : QuasiIdentifiers()) out.push_back(attributes_[i].name);
  return out;
}

std::size_t Schema::Sensitive() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].role != AttributeRole::kSensitive) continue;
    if (found) throw SchemaError("schema has more than one sensitive attribute");
    found = i;
  }
  if (!found) throw SchemaError("schema has no sensitive attribute");
  return *found;
}

void Schema::ValidateForAnonymization() const {
  if (QuasiIdentifiers().empty()) {
    throw SchemaError("schema has no quasi-identifier");
  }
  Sensitive();
}

std::string CellText(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return csv::FormatNumber(*d);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return std::string(kMissingToken);
}

Dataset::Dataset(Schema schema, std::vector<Record> records)
    : schema_(std::move(schema)),
      records_(std::move(records)),
      ranges_(schema_.size()) {
  for (std::size_t r = 0; r < records_.size(); ++r) {
    const auto& cells = records_[r].cells;
    if (cells.size() != schema_.size()) {
      throw SchemaError("record " + std::to_string(r) + " has " +
                        std::to_string(cells.size()) + " cells, schema has " +
                        std::to_string(schema_.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& cell = cells[c];
      if (IsMissing(cell)) continue;
      if (schema_[c].kind == AttributeKind::kNumeric) {
        const double* value = std::get_if<double>(&cell);
        if (value == nullptr || !std::isfinite(*value)) {
          throw SchemaError("record " + std::to_string(r) +
                            ": numeric attribute '" + schema_[c].name +
                            "' holds a non-numeric cell");
        }
        auto& range = ranges_[c];
        if (!range) {
          range = NumericRange{*value, *value};
        } else {
          range->min = std::min(range->min, *value);
          range->max = std::max(range->max, *value);
        }
      } else if (!std::holds_alternative<std::string>(cell)) {
        throw SchemaError("record " + std::to_string(r) +
                          ": categorical attribute '" + schema_[c].name +
                          "' holds a numeric cell");
      }
    }
  }
}

double Dataset::Number(std::size_t row, std::size_t column) const {
  const double* value = std::get_if<double>(&cell(row, column));
  if (value == nullptr) {
    throw SchemaError("record " + std::to_string(row) + ": attribute '" +
                      schema_[column].name + "' is missing or not numeric");
  }
  return *value;
}

const std::string& Dataset::Label(std::size_t row, std::size_t column) const {
  const std::string* value = std::get_if<std::string>(&cell(row, column));
  if (value == nullptr) {
    throw SchemaError("record " + std::to_string(row) + ": attribute '" +
                      schema_[column].name + "' is missing or not categorical");
  }
  return *value;
}

bool Dataset::HasMissing() const {
  return std::any_of(records_.begin(), records_.end(), [](const Record& r) {
    return std::any_of(r.cells.begin(), r.cells.end(), IsMissing);
  });
}

void Dataset::WriteCsv(std::ostream& out) const {
  std::vector<std::string> row;
  for (const auto& a : schema_.attributes()) row.push_back(a.name);
  csv::WriteRow(out, row);
  for (const auto& record : records_) {
    row.clear();
    for (const auto& cell : record.cells) row.push_back(CellText(cell));
    csv::WriteRow(out, row);
  }
}

Dataset LoadCsv(std::istream& source, const Schema& schema, bool complete_only) {
  auto rows = csv::Read(source);
  if (rows.empty()) throw SchemaError("CSV has no header row");

  const auto& header = rows.front();
  std::vector<std::size_t> column_of(schema.size());
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const auto& name = schema[a].name;
    auto it = std::find_if(header.begin(), header.end(), [&](const auto& h) {
      return csv::Trim(h) == name;
    });
    if (it == header.end()) {
      throw SchemaError("CSV header lacks schema column '" + name + "'");
    }
    column_of[a] = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<Record> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    Record record;
    record.cells.reserve(schema.size());
    bool complete = true;
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (column_of[a] >= row.size()) {
        throw ParseError(r, schema[a].name, "row is shorter than the header");
      }
      const auto text = csv::Trim(row[column_of[a]]);
      if (IsMissingToken(text)) {
        complete = false;
        record.cells.emplace_back(std::monostate{});
      } else if (schema[a].kind == AttributeKind::kNumeric) {
        auto value = csv::ParseNumber(text);
        if (!value) {
          throw ParseError(r, schema[a].name,
                           "cannot parse '" + std::string(text) + "' as a number");
        }
        record.cells.emplace_back(*value);
      } else {
        record.cells.emplace_back(std::string(text));
      }
    }
    if (complete_only && !complete) continue;
    records.push_back(std::move(record));
  }
  if (records.empty()) throw EmptyDatasetError("dataset is empty after loading");
  return Dataset(schema, std::move(records));
}

Dataset LoadCsvFile(const std::filesystem::path& path, const Schema& schema,
                    bool complete_only) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open data file " + path.string());
  return LoadCsv(in, schema, complete_only);
}

Schema AdultRawSchema() {
  using K = AttributeKind;
  using R = AttributeRole;
  return Schema({
      {"age", K::kNumeric, R::kQuasiIdentifier},
      {"workclass", K::kCategorical, R::kQuasiIdentifier},
      {"fnlwgt", K::kNumeric, R::kExcluded},
      {"education", K::kCategorical, R::kExcluded},
      {"education-num", K::kNumeric, R::kQuasiIdentifier},
      {"marital-status", K::kCategorical, R::kQuasiIdentifier},
      {"occupation", K::kCategorical, R::kQuasiIdentifier},
      {"relationship", K::kCategorical, R::kQuasiIdentifier},
      {"race", K::kCategorical, R::kQuasiIdentifier},
      {"sex", K::kCategorical, R::kQuasiIdentifier},
      {"capital-gain", K::kNumeric, R::kExcluded},
      {"capital-loss", K::kNumeric, R::kExcluded},
      {"hours-per-week", K::kNumeric, R::kQuasiIdentifier},
      {"native-country", K::kCategorical, R::kQuasiIdentifier},
      {"income", K::kCategorical, R::kSensitive},
  });
}

Schema AdultSchema() {
  using K = AttributeKind;
  using R = AttributeRole;
  return Schema({
      {"age", K::kNumeric, R::kQuasiIdentifier},
      {"workclass", K::kCategorical, R::kQuasiIdentifier},
      {"education_num", K::kNumeric, R::kQuasiIdentifier},
      {"marital-status", K::kCategorical, R::kQuasiIdentifier},
      {"occupation", K::kCategorical, R::kQuasiIdentifier},
      {"relationship", K::kCategorical, R::kQuasiIdentifier},
      {"race", K::kCategorical, R::kQuasiIdentifier},
      {"sex", K::kCategorical, R::kQuasiIdentifier},
      {"hours-per-week", K::kNumeric, R::kQuasiIdentifier},
      {"native-country", K::kCategorical, R::kQuasiIdentifier},
      {"income", K::kCategorical, R::kSensitive},
  });
}

Dataset AdultPreprocess(const Dataset& raw) {
  const Schema& in = raw.schema();
  for (std::string_view dropped :
       {"capital-gain", "capital-loss", "fnlwgt", "education"}) {
    if (!in.IndexOf(dropped)) {
      throw SchemaError("input lacks Adult column '" + std::string(dropped) + "'");
    }
  }
  const Schema out = AdultSchema();
  std::vector<std::size_t> source(out.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    auto index = in.IndexOf(out[a].name);
    if (!index && out[a].name == "education_num") index = in.IndexOf("education-num");
    if (!index) {
      throw SchemaError("input lacks Adult column '" + out[a].name + "'");
    }
    if (in[*index].kind != out[a].kind) {
      throw SchemaError("Adult column '" + out[a].name + "' must be " +
                        std::string(AttributeKindName(out[a].kind)));
    }
    source[a] = *index;
  }
  const std::size_t income = out.RequireIndex("income");

  std::vector<Record> records;
  records.reserve(raw.size());
  for (const auto& r : raw.records()) {
    Record record;
    record.cells.reserve(out.size());
    for (std::size_t a = 0; a < out.size(); ++a) {
      Cell cell = r.cells[source[a]];
      if (a == income) {
        if (auto* s = std::get_if<std::string>(&cell); s && s->ends_with('.')) {
          s->pop_back();
        }
      }
      record.cells.push_back(std::move(cell));
    }
    records.push_back(std::move(record));
  }
  return Dataset(out, std::move(records));
}

Dataset SampleRows(const Dataset& dataset, std::size_t n, std::uint64_t seed) {
  if (n > dataset.size()) {
    throw RangeError("cannot sample " + std::to_string(n) + " rows from " +
                     std::to_string(dataset.size()));
  }
  if (n == 0) throw EmptyDatasetError("sample of zero rows");
  std::vector<Record> records;
  records.reserve(n);
  if (seed == 0) {
    records.assign(dataset.records().begin(), dataset.records().begin() + n);
  } else {
    Rng rng(seed);
    std::size_t needed = n;
    const std::size_t total = dataset.size();
    for (std::size_t i = 0; i < total && needed > 0; ++i) {
      const double remaining = static_cast<double>(total - i);
      if (UniformUnit(rng) * remaining < static_cast<double>(needed)) {
        records.push_back(dataset.records()[i]);
        --needed;
      }
    }
  }
  return Dataset(dataset.schema(), std::move(records));
}

}  // namespace anonforge
