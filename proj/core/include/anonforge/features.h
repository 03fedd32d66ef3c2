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
#ifndef ANONFORGE_FEATURES_H_
#define ANONFORGE_FEATURES_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonforge/dataset.h"
#include "anonforge/sangreea.h"

namespace anonforge {

enum class Target { kIncome, kEducation, kMaritalStatus };

std::string_view TargetName(Target target);
// Accepts income, education, marital_status; SchemaError otherwise.
Target ParseTarget(std::string_view name);

// education_num -> ordinal class: value <= upper_edges[i] is class i, anything
// above the last edge is the final class. Default {<=8, 9-10, 11-12, >=13}.
struct EducationBins {
  std::vector<double> upper_edges = {8.0, 10.0, 12.0};

  int Classify(double education_num) const;
  std::vector<std::string> ClassNames() const;
};

// A feature column holds either numbers (NaN = missing) or labels.
struct FeatureColumn {
  std::string name;
  bool numeric = true;
  std::vector<double> values;
  std::vector<std::string> labels;
};

struct LabeledTable {
  Target target = Target::kIncome;
  std::vector<FeatureColumn> columns;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t rows() const { return labels.size(); }
  int class_count() const { return static_cast<int>(class_names.size()); }
};

// Splits off the target attribute. income: "<=50K" -> 0, ">50K" -> 1;
// education: binned education_num; marital_status: categories in sorted order.
// Features are every non-excluded attribute except the target.
LabeledTable MakeTarget(const Dataset& dataset, Target target,
                        const EducationBins& bins = {});

// Labels come from the source records; features are the generalized rows
// (intervals become midpoints, nodes their labels) plus the sensitive column.
LabeledTable MakeTarget(const AnonymizedDataset& anonymized, const Dataset& source,
                        Target target, const EducationBins& bins = {});

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
};

// Numeric columns pass through (missing -> training mean). Categorical
// columns become one-hot blocks over the labels seen in the training rows,
// sorted; an unseen label encodes as all zeros.
class Encoder {
 public:
  void Fit(const LabeledTable& table, std::span<const std::size_t> rows);
  Matrix Transform(const LabeledTable& table, std::span<const std::size_t> rows) const;
  std::size_t width() const { return width_; }
  std::vector<std::string> FeatureNames() const;

 private:
  struct Block {
    std::string name;
    bool numeric = true;
    double fill = 0.0;
    std::vector<std::string> vocabulary;
    std::size_t offset = 0;
  };
  std::vector<Block> blocks_;
  std::size_t width_ = 0;
};

}  // namespace anonforge

#endif  // ANONFORGE_FEATURES_H_
