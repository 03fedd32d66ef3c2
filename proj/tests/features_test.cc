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

#include <gtest/gtest.h>

#include <numeric>

#include "anonforge/error.h"
#include "anonforge/sangreea.h"
#include "test_support.h"

namespace anonforge {
namespace {

std::vector<std::size_t> AllRows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

const FeatureColumn& ColumnNamed(const LabeledTable& t, const std::string& name) {
  for (const auto& c : t.columns) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no column " + name);
}

TEST(MakeTarget, IncomeIsBinary) {
  const Dataset& d = testing::AdultRows(200);
  const LabeledTable t = MakeTarget(d, Target::kIncome);
  ASSERT_EQ(t.class_count(), 2);
  EXPECT_EQ(t.class_names[0], "<=50K");
  EXPECT_EQ(t.class_names[1], ">50K");
  const std::size_t income = d.schema().RequireIndex("income");
  for (std::size_t r = 0; r < d.size(); ++r) {
    EXPECT_EQ(t.labels[r], d.Label(r, income) == ">50K" ? 1 : 0);
  }
  EXPECT_EQ(t.columns.size(), 10u);
  for (const auto& c : t.columns) EXPECT_NE(c.name, "income");
}

TEST(MakeTarget, EducationBins) {
  const EducationBins bins;
  EXPECT_EQ(bins.Classify(13), 3);
  EXPECT_EQ(bins.Classify(8), 0);
  EXPECT_EQ(bins.Classify(9), 1);
  EXPECT_EQ(bins.Classify(10), 1);
  EXPECT_EQ(bins.Classify(12), 2);
  EXPECT_EQ(bins.Classify(16), 3);
  EXPECT_EQ(bins.ClassNames(), (std::vector<std::string>{"<=8", "9-10", "11-12", ">=13"}));
  const LabeledTable t = MakeTarget(testing::AdultRows(100), Target::kEducation);
  EXPECT_EQ(t.class_count(), 4);
  for (const auto& c : t.columns) EXPECT_NE(c.name, "education_num");
}

TEST(MakeTarget, MaritalStatusPassesThrough) {
  const Dataset& d = testing::AdultRows(100);
  const LabeledTable t = MakeTarget(d, Target::kMaritalStatus);
  const std::size_t col = d.schema().RequireIndex("marital-status");
  for (std::size_t r = 0; r < d.size(); ++r) {
    EXPECT_EQ(t.class_names[t.labels[r]], d.Label(r, col));
  }
}

TEST(MakeTarget, UnknownTargetIsSchemaError) {
  EXPECT_THROW(ParseTarget("salary"), SchemaError);
  EXPECT_EQ(ParseTarget("marital_status"), Target::kMaritalStatus);
  const Dataset d = testing::LoadText("age,country,income\n30,Canada,>50K\n",
                                      testing::AgeCountrySchema());
  EXPECT_THROW(MakeTarget(d, Target::kEducation), SchemaError);
}

TEST(MakeTarget, AnonymizedUsesMidpointsAndSourceLabels) {
  const Dataset& d = testing::AdultRows(100);
  const auto a = Sangreea(d, 10, testing::AdultTrees(),
                          EqualWeights(d.schema().QuasiIdentifierNames()));
  const LabeledTable raw = MakeTarget(d, Target::kIncome);
  const LabeledTable anon = MakeTarget(a, d, Target::kIncome);
  EXPECT_EQ(anon.labels, raw.labels);
  const auto& age = ColumnNamed(anon, "age");
  for (std::size_t r = 0; r < d.size(); ++r) {
    const auto& iv = std::get<Interval>(a.generalized_row(r)[0]);
    EXPECT_EQ(age.values[r], (iv.lo + iv.hi) / 2.0);
  }
}

TEST(Encoder, MidpointAndStarColumn) {
  LabeledTable t;
  t.labels = {0, 1, 0};
  t.class_names = {"a", "b"};
  t.columns.push_back({"age", true, {35.0, 20.0, std::nan("")}, {}});
  t.columns.push_back({"country", false, {}, {"*", "America", "Mars"}});
  Encoder enc;
  const std::vector<std::size_t> train = {0, 1};
  enc.Fit(t, train);
  EXPECT_EQ(enc.width(), 3u);
  EXPECT_EQ(enc.FeatureNames(), (std::vector<std::string>{"age", "country=*", "country=America"}));
  const Matrix m = enc.Transform(t, AllRows(3));
  EXPECT_EQ(m.at(0, 0), 35.0);
  EXPECT_EQ(m.at(2, 0), 27.5);  // missing -> training mean
  EXPECT_EQ(m.at(0, 1), 1.0);
  EXPECT_EQ(m.at(1, 2), 1.0);
  // Unseen label encodes as zeros.
  EXPECT_EQ(m.at(2, 1), 0.0);
  EXPECT_EQ(m.at(2, 2), 0.0);
}

TEST(Encoder, RawEqualsSingletonAnonymization) {
  const Dataset& d = testing::AdultRows(80);
  const GilModel model(d, testing::AdultTrees());
  std::vector<Cluster> singles;
  for (std::size_t r = 0; r < d.size(); ++r) singles.push_back({{r}, model.Singleton(r)});
  const AnonymizedDataset a(model, singles, 1, EqualWeights(model.qi_names()));
  const auto rows = AllRows(d.size());
  for (Target target : {Target::kIncome, Target::kEducation, Target::kMaritalStatus}) {
    const LabeledTable raw = MakeTarget(d, target);
    const LabeledTable anon = MakeTarget(a, d, target);
    Encoder e1, e2;
    e1.Fit(raw, rows);
    e2.Fit(anon, rows);
    EXPECT_EQ(e1.Transform(raw, rows).data, e2.Transform(anon, rows).data);
  }
}

}  // namespace
}  // namespace anonforge
