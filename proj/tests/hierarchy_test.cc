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
#include "anonforge/hierarchy.h"

#include <gtest/gtest.h>

#include <random>

#include "anonforge/error.h"
#include "oracles.h"
#include "test_support.h"

namespace anonforge {
namespace {

using testing::kSampleTree;
using testing::kSexTree;

TEST(HierarchyParse, FlatTreeHasHeightOne) {
  const Hierarchy h = Hierarchy::Parse(kSexTree, "sex");
  EXPECT_EQ(h.height(), 1);
  EXPECT_EQ(h.leaf_count(), 2u);
  EXPECT_EQ(h.attribute(), "sex");
  EXPECT_EQ(h.label(h.root()), "*");
}

TEST(HierarchyParse, SampleTreeHasHeightTwo) {
  const Hierarchy h = Hierarchy::Parse(kSampleTree);
  EXPECT_EQ(h.height(), 2);
  EXPECT_EQ(h.leaf_count(), 3u);
  EXPECT_EQ(h.node_count(), 6u);
}

TEST(HierarchyParse, DuplicateLabelRejected) {
  EXPECT_THROW(Hierarchy::Parse(R"({"*": {"Male": {}, "X": {"Male": {}}}})"), HierarchyError);
  EXPECT_THROW(Hierarchy::Parse(R"({"*": {"Male": {}, "Male": {}}})"), HierarchyError);
}

TEST(HierarchyParse, EmptyAndMalformedTreesRejected) {
  EXPECT_THROW(Hierarchy::Parse("{}"), HierarchyError);
  EXPECT_THROW(Hierarchy::Parse(R"({"*": {}})"), HierarchyError);
  EXPECT_THROW(Hierarchy::Parse(R"({"a": {"x": {}}, "b": {"y": {}}})"), HierarchyError);
  EXPECT_THROW(Hierarchy::Parse(R"({"*": {"x": 1}})"), HierarchyError);
  EXPECT_THROW(Hierarchy::Parse("[1,2"), HierarchyError);
}

TEST(HierarchyLca, SpecCases) {
  const Hierarchy sex = Hierarchy::Parse(kSexTree);
  const std::vector<std::string> male = {"Male"};
  EXPECT_EQ(sex.label(sex.Lca(male)), "Male");

  const Hierarchy h = Hierarchy::Parse(kSampleTree);
  const std::vector<std::string> america = {"United-States", "Canada"};
  EXPECT_EQ(h.label(h.Lca(america)), "America");
  const std::vector<std::string> world = {"United-States", "India"};
  EXPECT_EQ(h.label(h.Lca(world)), "*");
}

TEST(HierarchyLca, UnknownOrInternalLabelRejected) {
  const Hierarchy h = Hierarchy::Parse(kSampleTree);
  const std::vector<std::string> unknown = {"Mars"};
  EXPECT_THROW(h.Lca(unknown), HierarchyError);
  const std::vector<std::string> internal = {"America"};
  EXPECT_THROW(h.Lca(internal), HierarchyError);
  EXPECT_THROW(h.Lca(std::span<const std::string>{}), HierarchyError);
}

TEST(HierarchyNodeHeight, LeafInternalRoot) {
  const Hierarchy h = Hierarchy::Parse(kSampleTree);
  EXPECT_EQ(h.NodeHeight(*h.FindNode("Canada")), 0);
  EXPECT_EQ(h.NodeHeight(*h.FindNode("America")), 1);
  EXPECT_EQ(h.NodeHeight(h.root()), h.height());
}

TEST(HierarchyNodeHeight, ForeignNodeRejected) {
  const Hierarchy a = Hierarchy::Parse(kSampleTree);
  const Hierarchy b = Hierarchy::Parse(kSampleTree);
  EXPECT_THROW(a.NodeHeight(b.root()), HierarchyError);
  EXPECT_THROW(a.label(NodeId{a.root().owner, 999}), HierarchyError);
}

TEST(HierarchyStructure, ParentsChildrenDepth) {
  const Hierarchy h = Hierarchy::Parse(kSampleTree);
  const NodeId india = *h.FindLeaf("India");
  EXPECT_TRUE(h.is_leaf(india));
  EXPECT_EQ(h.depth(india), 2);
  EXPECT_EQ(h.label(*h.parent(india)), "Asia");
  EXPECT_FALSE(h.parent(h.root()));
  const auto kids = h.children(h.root());
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(h.label(kids[0]), "America");
  EXPECT_FALSE(h.FindLeaf("America"));
  EXPECT_TRUE(h.IsAncestorOrSelf(h.root(), india));
  EXPECT_FALSE(h.IsAncestorOrSelf(*h.FindNode("America"), india));
}

// Random trees of up to 4 levels with unique labels.
std::string RandomTree(std::mt19937& rng, int& counter, int depth) {
  std::string out = "{";
  const int kids = depth == 0 ? 0 : 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < kids; ++i) {
    if (i > 0) out += ",";
    const int child_depth = rng() % 4 == 0 ? 0 : depth - 1;
    out += "\"n" + std::to_string(counter++) + "\":" + RandomTree(rng, counter, child_depth);
  }
  return out + "}";
}

TEST(HierarchyProperty, LcaMatchesOracleAndIsMonotone) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int counter = 0;
    std::string body = RandomTree(rng, counter, 4);
    if (body == "{}") body = "{\"only\":{}}";
    const std::string text = "{\"*\":" + body + "}";
    const Hierarchy h = Hierarchy::Parse(text);
    const oracle::Tree tree = oracle::Tree::Parse(text);
    EXPECT_EQ(h.height(), tree.Height("*"));
    const auto leaves = tree.Leaves();
    for (int q = 0; q < 20; ++q) {
      std::vector<std::string> t;
      for (const auto& leaf : leaves) {
        if (rng() % 2) t.push_back(leaf);
      }
      if (t.empty()) t.push_back(leaves[rng() % leaves.size()]);
      std::vector<std::string> s(t.begin(), t.begin() + 1 + rng() % t.size());
      const NodeId lt = h.Lca(t);
      const NodeId ls = h.Lca(s);
      EXPECT_EQ(h.label(lt), tree.Lca(t));
      EXPECT_TRUE(h.IsAncestorOrSelf(lt, ls));
      EXPECT_GE(h.NodeHeight(lt), 0);
      EXPECT_LE(h.NodeHeight(lt), h.height());
      EXPECT_EQ(h.NodeHeight(lt), tree.Height(tree.Lca(t)));
      // Adding a leaf already under lca(S) leaves it unchanged.
      for (const auto& leaf : leaves) {
        if (h.IsAncestorOrSelf(ls, *h.FindLeaf(leaf))) {
          auto grown = s;
          grown.push_back(leaf);
          EXPECT_EQ(h.Lca(grown), ls);
          break;
        }
      }
    }
    // Round trip keeps structure and child order.
    const Hierarchy back = Hierarchy::Parse(h.ToJson());
    EXPECT_EQ(back.ToJson(), h.ToJson());
    EXPECT_EQ(back.node_count(), h.node_count());
    EXPECT_EQ(back.height(), h.height());
  }
}

TEST(HierarchyValidate, ReportsNonLeafValues) {
  const Schema schema = testing::AgeCountrySchema();
  const Dataset good = testing::LoadText(
      "age,country,income\n30,Canada,<=50K\n40,India,>50K\n", schema);
  const Hierarchy h = Hierarchy::Parse(kSampleTree, "country");
  EXPECT_TRUE(ValidateAgainst(h, good, "country").empty());

  const Dataset bad = testing::LoadText(
      "age,country,income\n30,Mars,<=50K\n40,America,>50K\n41,Mars,>50K\n", schema);
  const std::vector<std::string> expected = {"Mars", "America"};
  EXPECT_EQ(ValidateAgainst(h, bad, "country"), expected);
  EXPECT_THROW(ValidateAgainst(h, bad, "age"), SchemaError);
}

TEST(HierarchyShipped, AdultTreesCoverEveryValue) {
  const auto& trees = testing::AdultTrees();
  EXPECT_EQ(trees.size(), 7u);
  const Dataset& data = testing::AdultRows(0);
  for (const auto& [attribute, tree] : trees) {
    EXPECT_EQ(tree.attribute(), attribute);
    EXPECT_GE(tree.height(), 1);
    EXPECT_TRUE(ValidateAgainst(tree, data, attribute).empty()) << attribute;
  }
  EXPECT_EQ(trees.at("sex").height(), 1);
}

TEST(HierarchyLoad, MissingFileIsIoError) {
  EXPECT_THROW(Hierarchy::Load("/nonexistent/tree.json"), Error);
  EXPECT_THROW(LoadHierarchyDir("/nonexistent"), IoError);
}

}  // namespace
}  // namespace anonforge
