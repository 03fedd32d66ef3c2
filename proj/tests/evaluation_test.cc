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
#include "anonforge/evaluation.h"

#include <gtest/gtest.h>

#include <array>
#include <set>

#include "anonforge/error.h"
#include "json.hpp"
#include "test_support.h"

namespace anonforge {
namespace {

TEST(AssignFolds, StratifiedAndDeterministic) {
  std::vector<int> labels;
  for (int i = 0; i < 100; ++i) labels.push_back(i % 4 == 0 ? 1 : 0);
  const FoldAssignment a = AssignFolds(labels, 2, 5, 7);
  const FoldAssignment b = AssignFolds(labels, 2, 5, 7);
  EXPECT_EQ(a.fold_of, b.fold_of);
  EXPECT_TRUE(a.stratified);
  std::vector<std::array<int, 2>> counts(5, {0, 0});
  for (std::size_t i = 0; i < labels.size(); ++i) ++counts[a.fold_of[i]][labels[i]];
  for (const auto& c : counts) {
    EXPECT_EQ(c[0], 15);
    EXPECT_EQ(c[1], 5);
  }
  EXPECT_NE(AssignFolds(labels, 2, 5, 8).fold_of, a.fold_of);
}

TEST(AssignFolds, SmallClassFallsBack) {
  std::vector<int> labels(20, 0);
  labels[3] = 1;
  const FoldAssignment a = AssignFolds(labels, 2, 5, 7);
  EXPECT_FALSE(a.stratified);
  std::set<std::size_t> used(a.fold_of.begin(), a.fold_of.end());
  EXPECT_EQ(used.size(), 5u);
  EXPECT_THROW(AssignFolds(labels, 2, 1, 7), EvalError);
  EXPECT_THROW(AssignFolds(labels, 2, 21, 7), EvalError);
}

TEST(CrossValidate, ReproducibleAndBounded) {
  const LabeledTable t = MakeTarget(testing::AdultRows(300), Target::kIncome);
  const ClassifierSpec spec{ClassifierKind::kGradientBoosting, {}, 7};
  const EvalReport a = CrossValidate(spec, t, 5, 7);
  const EvalReport b = CrossValidate(spec, t, 5, 7);
  EXPECT_EQ(a.ToJson(), b.ToJson());
  EXPECT_EQ(a.folds, 5u);
  EXPECT_EQ(a.target, "income");
  EXPECT_EQ(a.classifier, "gradient_boosting");
  for (double v : {a.accuracy, a.macro_precision, a.macro_recall, a.macro_f1}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  const auto doc = nlohmann::json::parse(a.ToJson());
  EXPECT_EQ(doc.at("folds"), 5);
  EXPECT_TRUE(doc.contains("macro_f1"));
}

TEST(CrossValidate, TrainingSetAccuracyOfDeepForestIsAtLeastCv) {
  const LabeledTable t = MakeTarget(testing::AdultRows(400), Target::kIncome);
  ClassifierSpec spec{ClassifierKind::kRandomForest, {}, 7};
  spec.hyperparams.max_depth = 16;
  spec.hyperparams.trees = 30;
  EXPECT_GE(TrainingSetEvaluate(spec, t).accuracy, CrossValidate(spec, t, 5, 7).accuracy);
}

TEST(CrossValidate, OneClassDataIsDegenerate) {
  LabeledTable t = MakeTarget(testing::AdultRows(50), Target::kIncome);
  std::fill(t.labels.begin(), t.labels.end(), 0);
  const EvalReport r = CrossValidate({}, t, 5, 7);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_TRUE(r.degenerate);
}

TEST(CrossValidate, TooManyFoldsIsError) {
  const LabeledTable t = MakeTarget(testing::AdultRows(4), Target::kIncome);
  EXPECT_THROW(CrossValidate({}, t, 5, 7), EvalError);
}

}  // namespace
}  // namespace anonforge
