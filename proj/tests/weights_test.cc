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
#include "anonforge/weights.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "anonforge/error.h"
#include "oracles.h"

namespace anonforge {
namespace {

std::vector<std::string> Names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return names;
}

void ExpectValid(const WeightVector& w) {
  double sum = 0.0;
  bool positive = false;
  for (double v : w.values()) {
    EXPECT_GE(v, 0.0);
    positive = positive || v > 0.0;
    sum += v;
  }
  EXPECT_TRUE(positive);
  EXPECT_NEAR(sum, static_cast<double>(w.size()), 1e-9 * static_cast<double>(w.size()));
  EXPECT_NO_THROW(w.Validate());
}

TEST(EqualWeights, AllOnes) {
  const WeightVector nine = EqualWeights(Names(9));
  ASSERT_EQ(nine.size(), 9u);
  for (double v : nine.values()) EXPECT_EQ(v, 1.0);
  ExpectValid(nine);
  const WeightVector one = EqualWeights(Names(1));
  EXPECT_EQ(one.values()[0], 1.0);
  EXPECT_THROW(EqualWeights(std::vector<std::string>{}), WeightError);
}

TEST(BiasWeights, SpecExamples) {
  const WeightVector w = BiasWeights({{"a", 0.8}, {"b", 0.2}});
  EXPECT_NEAR(w.Require("a"), 1.6, 1e-12);
  EXPECT_NEAR(w.Require("b"), 0.4, 1e-12);
  EXPECT_THROW(BiasWeights({{"a", 1.2}, {"b", 0.2}}), RangeError);
  EXPECT_THROW(BiasWeights({{"a", -0.1}, {"b", 0.2}}), RangeError);
  EXPECT_THROW(BiasWeights({{"a", 0.0}, {"b", 0.0}}), WeightError);
  const WeightVector zero_one = BiasWeights({{"a", 0.0}, {"b", 0.5}});
  EXPECT_EQ(zero_one.Require("a"), 0.0);
  EXPECT_EQ(zero_one.Require("b"), 2.0);
}

TEST(BiasWeights, EqualSlidersGiveEqualWeights) {
  for (double c : {0.01, 0.3, 0.5, 1.0}) {
    Sliders sliders;
    for (const auto& n : Names(10)) sliders.emplace_back(n, c);
    EXPECT_EQ(BiasWeights(sliders), EqualWeights(Names(10))) << c;
  }
}

TEST(BiasWeights, CommonScalingIsInvariant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (int t = 0; t < 200; ++t) {
    Sliders a, b;
    const double scale = 1.0 + u(rng);
    for (const auto& n : Names(5)) {
      const double v = u(rng);
      a.emplace_back(n, v);
      b.emplace_back(n, v * scale);
    }
    const auto wa = BiasWeights(a);
    const auto wb = BiasWeights(b);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(wa.values()[j], wb.values()[j], 1e-12);
  }
}

TEST(WeightVector, NormalizeAndJson) {
  const WeightVector w = WeightVector::Normalize({"x", "y"}, {3.0, 1.0});
  EXPECT_DOUBLE_EQ(w.Require("x"), 1.5);
  EXPECT_FALSE(w.Get("z"));
  EXPECT_THROW(w.Require("z"), WeightError);
  EXPECT_EQ(WeightVector::FromJson(w.ToJson()), w);
  EXPECT_THROW(WeightVector::Normalize({"x", "x"}, {1.0, 1.0}), WeightError);
  EXPECT_THROW(WeightVector::Normalize({"x"}, {-1.0}), WeightError);
  EXPECT_THROW(WeightVector::Normalize({"x"}, {std::nan("")}), WeightError);
  EXPECT_THROW(WeightVector::FromJson("{\"x\": \"heavy\"}"), WeightError);
  EXPECT_THROW(WeightVector::FromJson("[1]"), WeightError);
}

TEST(ImlUpdate, ConstantColumnsAreNoOp) {
  const WeightVector w = WeightVector::Normalize(Names(3), {1.0, 2.0, 3.0});
  const CostMatrix costs = {{0.5, 0.0, 2.0}, {0.5, 0.0, 2.0}, {0.5, 0.0, 2.0}};
  const WeightVector out = ImlUpdate(w, costs, 1, {});
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(out.values()[j], w.values()[j], 1e-12);
}

TEST(ImlUpdate, TwoByTwoExample) {
  const WeightVector w = EqualWeights(Names(2));
  const WeightVector out = ImlUpdate(w, {{0.0, 1.0}, {1.0, 0.0}}, 0, {0.3, 1e-9, 0.01});
  EXPECT_GT(out.values()[0], 1.0);
  EXPECT_LT(out.values()[1], 1.0);
  EXPECT_NEAR(out.values()[0] + out.values()[1], 2.0, 1e-12);
  // Hand evaluation: multipliers exp(0.15) and exp(-0.15), renormalized.
  const double up = std::exp(0.15), down = std::exp(-0.15);
  EXPECT_NEAR(out.values()[0], 2.0 * up / (up + down), 1e-12);
}

TEST(ImlUpdate, SymmetricCostsAroundEnginePickKeepWeights) {
  // The chosen row sits at the column mean of every column.
  const WeightVector w = WeightVector::Normalize(Names(2), {0.7, 1.3});
  const CostMatrix costs = {{0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}};
  const WeightVector out = ImlUpdate(w, costs, 0, {});
  for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(out.values()[j], w.values()[j], 1e-12);
}

TEST(ImlUpdate, ContractViolations) {
  const WeightVector w = EqualWeights(Names(2));
  EXPECT_THROW(ImlUpdate(w, {{0.0, 1.0}}, 0, {}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0, 1.0}, {1.0, 0.0}}, 2, {}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0}, {1.0}}, 0, {}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0, -1.0}, {1.0, 0.0}}, 0, {}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0, 1.0}, {1.0, 0.0}}, 0, {0.0, 1e-9, 0.01}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0, 1.0}, {1.0, 0.0}}, 0, {0.3, 0.0, 0.01}), UpdateError);
  EXPECT_THROW(ImlUpdate(w, {{0.0, 1.0}, {1.0, 0.0}}, 0, {0.3, 1e-9, -1.0}), UpdateError);
}

struct Instance {
  WeightVector w;
  CostMatrix costs;
  std::size_t chosen;
};

Instance RandomInstance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t q = 1 + rng() % 10;
  const std::size_t m = 2 + rng() % 9;
  std::vector<double> raw(q);
  for (auto& v : raw) v = 0.05 + u(rng);
  Instance inst{WeightVector::Normalize(Names(q), raw), CostMatrix(m, std::vector<double>(q)),
                static_cast<std::size_t>(rng() % m)};
  for (auto& row : inst.costs) {
    for (auto& c : row) c = rng() % 5 == 0 ? 0.0 : 3.0 * u(rng);
  }
  return inst;
}

TEST(ImlUpdateProperty, PositivityNormalizationScaleInvariance) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const Instance inst = RandomInstance(rng);
    const WeightVector out = ImlUpdate(inst.w, inst.costs, inst.chosen, {});
    ExpectValid(out);
    for (double scale : {1e-3, 7.5, 1e4}) {
      CostMatrix scaled = inst.costs;
      for (auto& row : scaled) {
        for (auto& c : row) c *= scale;
      }
      const WeightVector again = ImlUpdate(inst.w, scaled, inst.chosen, {});
      for (std::size_t j = 0; j < out.size(); ++j) {
        EXPECT_NEAR(again.values()[j], out.values()[j], 1e-9);
      }
    }
  }
}

TEST(ImlUpdateProperty, MatchesDirectFormulaAwayFromFloor) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 500; ++t) {
    const Instance inst = RandomInstance(rng);
    const std::vector<double> w(inst.w.values().begin(), inst.w.values().end());
    const auto expected = oracle::LiteralUpdate(w, inst.costs, inst.chosen, 0.3, 1e-9, 0.01);
    const WeightVector out = ImlUpdate(inst.w, inst.costs, inst.chosen, {});
    for (std::size_t j = 0; j < w.size(); ++j) {
      EXPECT_NEAR(out.values()[j], expected[j], 1e-6);
    }
  }
}

TEST(ImlUpdateProperty, ChosenCheapAttributeGainsRelativeWeight) {
  // Attribute 0 is cheapest for the chosen row, attribute 1 most expensive.
  const WeightVector w = EqualWeights(Names(2));
  const CostMatrix costs = {{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}};
  const WeightVector out = ImlUpdate(w, costs, 0, {});
  EXPECT_GT(out.values()[0], out.values()[1]);
}

}  // namespace
}  // namespace anonforge
