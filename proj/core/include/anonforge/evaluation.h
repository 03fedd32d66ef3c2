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
#ifndef ANONFORGE_EVALUATION_H_
#define ANONFORGE_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anonforge/classifiers.h"
#include "anonforge/features.h"
#include "anonforge/metrics.h"

namespace anonforge {

struct EvalReport {
  std::string target;
  std::string classifier;
  std::vector<std::string> class_names;
  std::vector<ClassMetrics> per_class;  // averaged over folds
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::size_t folds = 0;
  bool stratified = true;
  // Some fold trained on a single class.
  bool degenerate = false;
  bool zero_division = false;

  std::string ToJson() const;
};

struct FoldAssignment {
  std::vector<std::size_t> fold_of;
  bool stratified = true;
};

// Stratified round-robin over a seeded shuffle of each class. Falls back to a
// plain shuffle when a class has fewer than `folds` members.
FoldAssignment AssignFolds(std::span<const int> labels, int class_count,
                           std::size_t folds, std::uint64_t seed);

// Per-fold metrics averaged over folds. EvalError unless 2 <= folds <= rows.
EvalReport CrossValidate(const ClassifierSpec& spec, const LabeledTable& table,
                         std::size_t folds, std::uint64_t seed);

// Fits and scores on the full table.
EvalReport TrainingSetEvaluate(const ClassifierSpec& spec, const LabeledTable& table);

}  // namespace anonforge

#endif  // ANONFORGE_EVALUATION_H_
