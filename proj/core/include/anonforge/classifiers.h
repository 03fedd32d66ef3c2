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
#ifndef ANONFORGE_CLASSIFIERS_H_
#define ANONFORGE_CLASSIFIERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonforge/features.h"

namespace anonforge {

enum class ClassifierKind {
  kLogisticRegression,
  kLinearSvc,
  kRandomForest,
  kGradientBoosting,
};

std::string_view ClassifierKindName(ClassifierKind kind);
// EvalError for unknown names.
ClassifierKind ParseClassifierKind(std::string_view name);

struct Hyperparams {
  // logistic regression and linear SVC
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-3;
  // random forest
  int trees = 50;
  int max_depth = 8;
  double bootstrap_fraction = 1.0;
  // gradient boosting
  int stumps = 100;
  double shrinkage = 0.1;
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kLogisticRegression;
  Hyperparams hyperparams;
  std::uint64_t seed = 7;

  std::string name() const { return std::string(ClassifierKindName(kind)); }
};

struct Predictions {
  std::vector<int> labels;
  // Training labels held a single class; every prediction is that class.
  bool degenerate = false;
};

// Fits on (train, labels) and predicts test rows. Deterministic for a fixed
// spec.seed. Linear models standardize features with training statistics and
// run one-vs-rest for more than two classes; the forest is multiclass; the
// boosted stumps are one-vs-rest on logistic loss.
// EvalError on an empty training set or mismatched widths.
Predictions TrainPredict(const ClassifierSpec& spec, const Matrix& train,
                         std::span<const int> labels, int class_count,
                         const Matrix& test);

}  // namespace anonforge

#endif  // ANONFORGE_CLASSIFIERS_H_
