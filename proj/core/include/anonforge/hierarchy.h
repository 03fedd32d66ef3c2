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
#ifndef ANONFORGE_HIERARCHY_H_
#define ANONFORGE_HIERARCHY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "anonforge/dataset.h"

namespace anonforge {

// Handle to a node of one particular Hierarchy. Handles from a different
// hierarchy are rejected by every accessor that takes one.
struct NodeId {
  std::uint64_t owner = 0;
  std::uint32_t index = 0;

  bool operator==(const NodeId&) const = default;
};

// Rooted generalization tree over the values of one categorical attribute.
// Labels are unique across the whole tree; dataset values must be leaves.
class Hierarchy {
 public:
  // Nested JSON object with a single root key; leaves are empty objects:
  //   {"*": {"America": {"United-States": {}, "Canada": {}}, "Asia": {...}}}
  static Hierarchy Parse(std::string_view json, std::string attribute = {});
  static Hierarchy Load(const std::filesystem::path& path,
                        std::string attribute = {});
  // Inverse of Parse; child order is preserved.
  std::string ToJson() const;

  const std::string& attribute() const { return attribute_; }
  // Edges on the longest root-to-leaf path.
  int height() const { return nodes_[0].height; }
  NodeId root() const { return Id(0); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }

  std::optional<NodeId> FindNode(std::string_view label) const;
  std::optional<NodeId> FindLeaf(std::string_view label) const;
  // HierarchyError when the label is not a leaf.
  NodeId RequireLeaf(std::string_view label) const;

  const std::string& label(NodeId node) const;
  bool is_leaf(NodeId node) const;
  int depth(NodeId node) const;
  std::optional<NodeId> parent(NodeId node) const;
  std::vector<NodeId> children(NodeId node) const;

  // Height of the subtree rooted at node; 0 for leaves.
  int NodeHeight(NodeId node) const;

  // Deepest common ancestor. HierarchyError for unknown labels or an empty set.
  NodeId Lca(std::span<const std::string> leaf_labels) const;
  NodeId Lca(NodeId a, NodeId b) const;
  bool IsAncestorOrSelf(NodeId ancestor, NodeId node) const;

 private:
  struct Node {
    std::string label;
    std::uint32_t parent = 0;  // root points to itself
    std::vector<std::uint32_t> children;
    int depth = 0;
    int height = 0;
  };

  Hierarchy() = default;
  NodeId Id(std::uint32_t index) const { return NodeId{owner_, index}; }
  const Node& Resolve(NodeId node) const;

  std::string attribute_;
  std::uint64_t owner_ = 0;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::uint32_t> by_label_;
  std::size_t leaf_count_ = 0;
};

// Attribute name -> hierarchy for every categorical quasi-identifier.
using HierarchySet = std::map<std::string, Hierarchy, std::less<>>;

// Loads <dir>/<attribute>.json for every *.json file in the directory.
HierarchySet LoadHierarchyDir(const std::filesystem::path& dir);

// Every distinct dataset value of the attribute that is not a leaf of the
// tree, in first-occurrence order. SchemaError for non-categorical attributes.
std::vector<std::string> ValidateAgainst(const Hierarchy& hierarchy,
                                         const Dataset& dataset,
                                         std::string_view attribute);

}  // namespace anonforge

#endif  // ANONFORGE_HIERARCHY_H_
