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
#include "anonforge/classifiers.h"

#include <gtest/gtest.h>

#include <random>

#include "anonforge/error.h"

namespace anonforge {
namespace {

constexpr ClassifierKind kAll[] = {ClassifierKind::kLogisticRegression, ClassifierKind::kLinearSvc,
                                   ClassifierKind::kRandomForest,
                                   ClassifierKind::kGradientBoosting};

// Two Gaussian blobs far apart, or three for the multiclass case.
void Blobs(std::mt19937_64& rng, std::size_t n, int classes, Matrix& x, std::vector<int>& y) {
  std::normal_distribution<double> noise(0.0, 0.5);
  x = Matrix(n, 2);
  y.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % static_cast<std::size_t>(classes));
    y[i] = c;
    x.at(i, 0) = 4.0 * c + noise(rng);
    x.at(i, 1) = (c == 1 ? 5.0 : -2.0 * c) + noise(rng);
  }
}

double Accuracy(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < a.size(); ++i) hit += a[i] == b[i];
  return static_cast<double>(hit) / static_cast<double>(a.size());
}

TEST(Classifiers, LogisticRegressionSeparatesBlobs) {
  std::mt19937_64 rng(1);
  Matrix x;
  std::vector<int> y;
  Blobs(rng, 200, 2, x, y);
  const auto p = TrainPredict({ClassifierKind::kLogisticRegression, {}, 7}, x, y, 2, x);
  EXPECT_EQ(Accuracy(p.labels, y), 1.0);
  EXPECT_FALSE(p.degenerate);
}

TEST(Classifiers, EveryKindLearnsSeparableMulticlass) {
  std::mt19937_64 rng(2);
  Matrix x;
  std::vector<int> y;
  Blobs(rng, 300, 3, x, y);
  for (ClassifierKind kind : kAll) {
    const auto p = TrainPredict({kind, {}, 7}, x, y, 3, x);
    EXPECT_GE(Accuracy(p.labels, y), 0.97) << ClassifierKindName(kind);
  }
}

TEST(Classifiers, ConstantLabelsAreDegenerate) {
  std::mt19937_64 rng(3);
  Matrix x;
  std::vector<int> y;
  Blobs(rng, 20, 2, x, y);
  std::fill(y.begin(), y.end(), 1);
  for (ClassifierKind kind : kAll) {
    const auto p = TrainPredict({kind, {}, 7}, x, y, 2, x);
    EXPECT_TRUE(p.degenerate);
    for (int label : p.labels) EXPECT_EQ(label, 1);
  }
}

TEST(Classifiers, DeterministicForFixedSeed) {
  std::mt19937_64 rng(4);
  Matrix x;
  std::vector<int> y;
  Blobs(rng, 150, 3, x, y);
  for (ClassifierKind kind : kAll) {
    const ClassifierSpec spec{kind, {}, 11};
    EXPECT_EQ(TrainPredict(spec, x, y, 3, x).labels, TrainPredict(spec, x, y, 3, x).labels);
  }
}

TEST(Classifiers, ContractViolations) {
  Matrix empty(0, 2);
  Matrix test(1, 2);
  EXPECT_THROW(TrainPredict({}, empty, {}, 2, test), EvalError);
  Matrix train(2, 2);
  const std::vector<int> y = {0, 1};
  EXPECT_THROW(TrainPredict({}, train, y, 2, Matrix(1, 3)), EvalError);
  EXPECT_THROW(ParseClassifierKind("knn"), EvalError);
  for (ClassifierKind kind : kAll) {
    EXPECT_EQ(ParseClassifierKind(ClassifierKindName(kind)), kind);
  }
}

}  // namespace
}  // namespace anonforge
