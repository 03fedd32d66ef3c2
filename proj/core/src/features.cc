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
#include "anonforge/features.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "anonforge/csv.h"
#include "anonforge/error.h"

namespace anonforge {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view TargetColumn(Target target) {
  switch (target) {
    case Target::kIncome: return "income";
    case Target::kEducation: return "education_num";
    case Target::kMaritalStatus: return "marital-status";
  }
  return "income";
}

std::size_t FindTargetColumn(const Schema& schema, Target target) {
  if (auto index = schema.IndexOf(TargetColumn(target))) return *index;
  if (target == Target::kMaritalStatus) {
    if (auto index = schema.IndexOf("marital_status")) return *index;
  }
  if (target == Target::kEducation) {
    if (auto index = schema.IndexOf("education-num")) return *index;
  }
  throw SchemaError("target attribute '" + std::string(TargetColumn(target)) +
                    "' is not in the schema");
}

// Fills labels and class names from the raw target cells.
void Label(const Dataset& source, std::size_t column, Target target,
           const EducationBins& bins, LabeledTable& out) {
  const std::size_t n = source.size();
  out.labels.resize(n);
  switch (target) {
    case Target::kIncome: {
      out.class_names = {"<=50K", ">50K"};
      for (std::size_t r = 0; r < n; ++r) {
        std::string value = source.Label(r, column);
        if (value.ends_with('.')) value.pop_back();
        if (value == ">50K") {
          out.labels[r] = 1;
        } else if (value == "<=50K") {
          out.labels[r] = 0;
        } else {
          throw SchemaError("unexpected income label '" + value + "'");
        }
      }
      break;
    }
    case Target::kEducation:
      out.class_names = bins.ClassNames();
      for (std::size_t r = 0; r < n; ++r) {
        out.labels[r] = bins.Classify(source.Number(r, column));
      }
      break;
    case Target::kMaritalStatus: {
      std::set<std::string> classes;
      for (std::size_t r = 0; r < n; ++r) classes.insert(source.Label(r, column));
      out.class_names.assign(classes.begin(), classes.end());
      for (std::size_t r = 0; r < n; ++r) {
        const auto& value = source.Label(r, column);
        out.labels[r] = static_cast<int>(
            std::lower_bound(out.class_names.begin(), out.class_names.end(), value) -
            out.class_names.begin());
      }
      break;
    }
  }
}

FeatureColumn RawColumn(const Dataset& dataset, std::size_t column) {
  FeatureColumn out;
  out.name = dataset.schema()[column].name;
  out.numeric = dataset.schema()[column].kind == AttributeKind::kNumeric;
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const Cell& cell = dataset.cell(r, column);
    if (out.numeric) {
      const double* v = std::get_if<double>(&cell);
      out.values.push_back(v ? *v : kNaN);
    } else {
      out.labels.push_back(CellText(cell));
    }
  }
  return out;
}

}  // namespace

std::string_view TargetName(Target target) {
  switch (target) {
    case Target::kIncome: return "income";
    case Target::kEducation: return "education";
    case Target::kMaritalStatus: return "marital_status";
  }
  return "income";
}

Target ParseTarget(std::string_view name) {
  if (name == "income") return Target::kIncome;
  if (name == "education") return Target::kEducation;
  if (name == "marital_status" || name == "marital-status") return Target::kMaritalStatus;
  throw SchemaError("unknown target '" + std::string(name) + "'");
}

int EducationBins::Classify(double education_num) const {
  for (std::size_t i = 0; i < upper_edges.size(); ++i) {
    if (education_num <= upper_edges[i]) return static_cast<int>(i);
  }
  return static_cast<int>(upper_edges.size());
}

std::vector<std::string> EducationBins::ClassNames() const {
  std::vector<std::string> names;
  double previous = -std::numeric_limits<double>::infinity();
  for (double edge : upper_edges) {
    if (std::isinf(previous)) {
      names.push_back("<=" + csv::FormatNumber(edge));
    } else {
      names.push_back(csv::FormatNumber(previous + 1) + "-" + csv::FormatNumber(edge));
    }
    previous = edge;
  }
  names.push_back(">=" + csv::FormatNumber(previous + 1));
  return names;
}

LabeledTable MakeTarget(const Dataset& dataset, Target target,
                        const EducationBins& bins) {
  const Schema& schema = dataset.schema();
  const std::size_t target_column = FindTargetColumn(schema, target);
  LabeledTable out;
  out.target = target;
  Label(dataset, target_column, target, bins, out);
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c == target_column || schema[c].role == AttributeRole::kExcluded) continue;
    out.columns.push_back(RawColumn(dataset, c));
  }
  return out;
}

LabeledTable MakeTarget(const AnonymizedDataset& anonymized, const Dataset& source,
                        Target target, const EducationBins& bins) {
  if (anonymized.size() != source.size() || anonymized.schema() != source.schema()) {
    throw SchemaError("anonymized dataset does not match its source");
  }
  const Schema& schema = source.schema();
  const std::size_t target_column = FindTargetColumn(schema, target);
  LabeledTable out;
  out.target = target;
  Label(source, target_column, target, bins, out);

  const auto qis = anonymized.quasi_identifiers();
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (c == target_column || schema[c].role == AttributeRole::kExcluded) continue;
    auto qi = std::find(qis.begin(), qis.end(), c);
    if (qi == qis.end()) {
      out.columns.push_back(RawColumn(source, c));
      continue;
    }
    const std::size_t j = static_cast<std::size_t>(qi - qis.begin());
    FeatureColumn column;
    column.name = schema[c].name;
    column.numeric = schema[c].kind == AttributeKind::kNumeric;
    for (std::size_t r = 0; r < anonymized.size(); ++r) {
      const auto& cell = anonymized.generalized_row(r)[j];
      if (column.numeric) {
        const auto& iv = std::get<Interval>(cell);
        column.values.push_back((iv.lo + iv.hi) / 2.0);
      } else {
        column.labels.push_back(std::get<std::string>(cell));
      }
    }
    out.columns.push_back(std::move(column));
  }
  return out;
}

void Encoder::Fit(const LabeledTable& table, std::span<const std::size_t> rows) {
  blocks_.clear();
  width_ = 0;
  for (const auto& column : table.columns) {
    Block block;
    block.name = column.name;
    block.numeric = column.numeric;
    block.offset = width_;
    if (column.numeric) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t r : rows) {
        if (!std::isnan(column.values[r])) {
          sum += column.values[r];
          ++count;
        }
      }
      block.fill = count > 0 ? sum / static_cast<double>(count) : 0.0;
      width_ += 1;
    } else {
      std::set<std::string> vocabulary;
      for (std::size_t r : rows) vocabulary.insert(column.labels[r]);
      block.vocabulary.assign(vocabulary.begin(), vocabulary.end());
      width_ += block.vocabulary.size();
    }
    blocks_.push_back(std::move(block));
  }
}

Matrix Encoder::Transform(const LabeledTable& table,
                          std::span<const std::size_t> rows) const {
  if (table.columns.size() != blocks_.size()) {
    throw EvalError("table does not match the fitted encoder");
  }
  Matrix out(rows.size(), width_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& block = blocks_[b];
    const FeatureColumn& column = table.columns[b];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t r = rows[i];
      if (block.numeric) {
        const double v = column.values[r];
        out.at(i, block.offset) = std::isnan(v) ? block.fill : v;
      } else {
        auto it = std::lower_bound(block.vocabulary.begin(), block.vocabulary.end(),
                                   column.labels[r]);
        if (it != block.vocabulary.end() && *it == column.labels[r]) {
          out.at(i, block.offset +
                        static_cast<std::size_t>(it - block.vocabulary.begin())) = 1.0;
        }
      }
    }
  }
  return out;
}

std::vector<std::string> Encoder::FeatureNames() const {
  std::vector<std::string> names;
  for (const auto& block : blocks_) {
    if (block.numeric) {
      names.push_back(block.name);
    } else {
      for (const auto& label : block.vocabulary) names.push_back(block.name + "=" + label);
    }
  }
  return names;
}

}  // namespace anonforge
