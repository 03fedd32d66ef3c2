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
#ifndef ANONFORGE_DATASET_H_
#define ANONFORGE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace anonforge {

enum class AttributeKind { kNumeric, kCategorical };
enum class AttributeRole { kQuasiIdentifier, kSensitive, kExcluded };

std::string_view AttributeKindName(AttributeKind kind);
std::string_view AttributeRoleName(AttributeRole role);

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kCategorical;
  AttributeRole role = AttributeRole::kQuasiIdentifier;

  bool operator==(const Attribute&) const = default;
};

// Ordered attribute list with unique names. Direct identifiers are modelled
// as AttributeRole::kExcluded.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<Attribute> attributes);

  // {"attributes": [{"name": ..., "kind": "numeric"|"categorical",
  //                  "role": "quasi_identifier"|"sensitive"|"excluded"}]}
  static Schema FromJson(std::string_view json);
  static Schema Load(const std::filesystem::path& path);
  std::string ToJson() const;

  std::span<const Attribute> attributes() const { return attributes_; }
  std::size_t size() const { return attributes_.size(); }
  const Attribute& operator[](std::size_t i) const { return attributes_[i]; }

  std::optional<std::size_t> IndexOf(std::string_view name) const;
  // Throws SchemaError when the attribute is absent.
  std::size_t RequireIndex(std::string_view name) const;

  std::vector<std::size_t> QuasiIdentifiers() const;
  std::vector<std::string> QuasiIdentifierNames() const;
  // Index of the single sensitive attribute; SchemaError unless exactly one.
  std::size_t Sensitive() const;

  // At least one quasi-identifier and exactly one sensitive attribute.
  void ValidateForAnonymization() const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Attribute> attributes_;
};

using Cell = std::variant<std::monostate, double, std::string>;

inline bool IsMissing(const Cell& cell) {
  return std::holds_alternative<std::monostate>(cell);
}
// Missing cells render as "?".
std::string CellText(const Cell& cell);

struct Record {
  std::vector<Cell> cells;

  bool operator==(const Record&) const = default;
};

struct NumericRange {
  double min = 0.0;
  double max = 0.0;

  double width() const { return max - min; }
  bool operator==(const NumericRange&) const = default;
};

// Immutable typed table. Construction validates every record against the
// schema and computes the per-attribute numeric ranges.
class Dataset {
 public:
  Dataset(Schema schema, std::vector<Record> records);

  const Schema& schema() const { return schema_; }
  std::span<const Record> records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  const Cell& cell(std::size_t row, std::size_t column) const {
    return records_[row].cells[column];
  }
  // Typed accessors; SchemaError when the cell is missing or of the other kind.
  double Number(std::size_t row, std::size_t column) const;
  const std::string& Label(std::size_t row, std::size_t column) const;

  // Empty for categorical attributes and for all-missing numeric columns.
  const std::optional<NumericRange>& range(std::size_t column) const {
    return ranges_[column];
  }

  bool HasMissing() const;
  void WriteCsv(std::ostream& out) const;

 private:
  Schema schema_;
  std::vector<Record> records_;
  std::vector<std::optional<NumericRange>> ranges_;
};

inline constexpr std::string_view kMissingToken = "?";

// Reads a CSV whose header covers every schema attribute (extra columns are
// ignored). Cells are whitespace-trimmed; "?" and empty cells are missing.
// With complete_only, rows with any missing schema cell are dropped.
Dataset LoadCsv(std::istream& source, const Schema& schema, bool complete_only);
Dataset LoadCsvFile(const std::filesystem::path& path, const Schema& schema,
                    bool complete_only);

// The 15-column UCI Adult layout, and the 11-column layout produced by
// AdultPreprocess (ten quasi-identifiers, income sensitive).
Schema AdultRawSchema();
Schema AdultSchema();

// Drops capital-gain, capital-loss, fnlwgt and education and renames
// education-num to education_num. The trailing "." of the Adult test-file
// income labels is stripped.
Dataset AdultPreprocess(const Dataset& raw);

// seed == 0 keeps the first n rows; any other seed draws n distinct rows
// uniformly (selection sampling), preserving file order.
Dataset SampleRows(const Dataset& dataset, std::size_t n, std::uint64_t seed);

}  // namespace anonforge

#endif  // ANONFORGE_DATASET_H_
