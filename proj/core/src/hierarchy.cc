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

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>

#include "anonforge/error.h"
#include "json.hpp"

namespace anonforge {
namespace {

using ordered_json = nlohmann::ordered_json;

std::atomic<std::uint64_t> next_owner{1};

}  // namespace

Hierarchy Hierarchy::Parse(std::string_view text, std::string attribute) {
  ordered_json doc;
  // The parser keeps one of two equal keys silently; sibling duplicates are
  // caught here instead.
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  auto watch = [&](int, ordered_json::parse_event_t event, ordered_json& parsed) {
    using E = ordered_json::parse_event_t;
    if (event == E::object_start) keys.emplace_back();
    if (event == E::object_end) keys.pop_back();
    if (event == E::key && !keys.back().insert(parsed.get<std::string>()).second &&
        duplicate.empty()) {
      duplicate = parsed.get<std::string>();
    }
    return true;
  };
  try {
    doc = ordered_json::parse(text, watch);
  } catch (const ordered_json::exception& e) {
    throw HierarchyError(std::string("hierarchy is not valid JSON: ") + e.what());
  }
  if (!duplicate.empty()) throw HierarchyError("duplicate label '" + duplicate + "'");
  if (!doc.is_object() || doc.empty()) throw HierarchyError("empty hierarchy");
  if (doc.size() != 1) throw HierarchyError("hierarchy must have exactly one root");

  Hierarchy h;
  h.attribute_ = std::move(attribute);
  h.owner_ = next_owner.fetch_add(1);

  // Iterative pre-order walk; stack holds (json node, parent index).
  struct Pending {
    std::string label;
    const ordered_json* body;
    std::uint32_t parent;
  };
  std::vector<Pending> stack;
  stack.push_back({doc.begin().key(), &doc.begin().value(), 0});
  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    if (!p.body->is_object()) {
      throw HierarchyError("node '" + p.label + "' must be a JSON object");
    }
    const auto index = static_cast<std::uint32_t>(h.nodes_.size());
    if (!h.by_label_.emplace(p.label, index).second) {
      throw HierarchyError("duplicate label '" + p.label + "'");
    }
    Node node;
    node.label = p.label;
    node.parent = h.nodes_.empty() ? 0 : p.parent;
    node.depth = h.nodes_.empty() ? 0 : h.nodes_[p.parent].depth + 1;
    if (!h.nodes_.empty()) h.nodes_[p.parent].children.push_back(index);
    h.nodes_.push_back(std::move(node));
    // Push in reverse so children are visited in document order.
    std::vector<Pending> kids;
    for (auto it = p.body->begin(); it != p.body->end(); ++it) {
      kids.push_back({it.key(), &it.value(), index});
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.push_back(std::move(*it));
    }
  }
  if (h.nodes_[0].children.empty()) {
    throw HierarchyError("hierarchy root '" + h.nodes_[0].label +
                         "' has no children");
  }
  // Children always have larger indices than their parent.
  for (std::size_t i = h.nodes_.size(); i-- > 0;) {
    auto& node = h.nodes_[i];
    if (node.children.empty()) ++h.leaf_count_;
    for (auto child : node.children) {
      node.height = std::max(node.height, h.nodes_[child].height + 1);
    }
  }
  return h;
}

Hierarchy Hierarchy::Load(const std::filesystem::path& path,
                          std::string attribute) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hierarchy file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (attribute.empty()) attribute = path.stem().string();
  return Parse(buffer.str(), std::move(attribute));
}

std::string Hierarchy::ToJson() const {
  // Build bottom-up so every child body exists before its parent needs it.
  std::vector<ordered_json> bodies(nodes_.size(), ordered_json::object());
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    for (auto child : nodes_[i].children) {
      bodies[i][nodes_[child].label] = std::move(bodies[child]);
    }
  }
  ordered_json doc = ordered_json::object();
  doc[nodes_[0].label] = std::move(bodies[0]);
  return doc.dump();
}

const Hierarchy::Node& Hierarchy::Resolve(NodeId node) const {
  if (node.owner != owner_ || node.index >= nodes_.size()) {
    throw HierarchyError("node does not belong to hierarchy '" + attribute_ + "'");
  }
  return nodes_[node.index];
}

std::optional<NodeId> Hierarchy::FindNode(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return Id(it->second);
}

std::optional<NodeId> Hierarchy::FindLeaf(std::string_view label) const {
  auto node = FindNode(label);
  if (!node || !nodes_[node->index].children.empty()) return std::nullopt;
  return node;
}

NodeId Hierarchy::RequireLeaf(std::string_view label) const {
  auto leaf = FindLeaf(label);
  if (!leaf) {
    throw HierarchyError("'" + std::string(label) + "' is not a leaf of hierarchy '" +
                         attribute_ + "'");
  }
  return *leaf;
}

const std::string& Hierarchy::label(NodeId node) const { return Resolve(node).label; }

bool Hierarchy::is_leaf(NodeId node) const { return Resolve(node).children.empty(); }

int Hierarchy::depth(NodeId node) const { return Resolve(node).depth; }

std::optional<NodeId> Hierarchy::parent(NodeId node) const {
  const auto& n = Resolve(node);
  if (node.index == 0) return std::nullopt;
  return Id(n.parent);
}

std::vector<NodeId> Hierarchy::children(NodeId node) const {
  std::vector<NodeId> out;
  for (auto c : Resolve(node).children) out.push_back(Id(c));
  return out;
}

int Hierarchy::NodeHeight(NodeId node) const { return Resolve(node).height; }

NodeId Hierarchy::Lca(NodeId a, NodeId b) const {
  Resolve(a);
  Resolve(b);
  std::uint32_t x = a.index;
  std::uint32_t y = b.index;
  while (nodes_[x].depth > nodes_[y].depth) x = nodes_[x].parent;
  while (nodes_[y].depth > nodes_[x].depth) y = nodes_[y].parent;
  while (x != y) {
    x = nodes_[x].parent;
    y = nodes_[y].parent;
  }
  return Id(x);
}

NodeId Hierarchy::Lca(std::span<const std::string> leaf_labels) const {
  if (leaf_labels.empty()) throw HierarchyError("lca of an empty label set");
  NodeId acc = RequireLeaf(leaf_labels.front());
  for (const auto& label : leaf_labels.subspan(1)) {
    acc = Lca(acc, RequireLeaf(label));
  }
  return acc;
}

bool Hierarchy::IsAncestorOrSelf(NodeId ancestor, NodeId node) const {
  return Lca(ancestor, node) == ancestor;
}

HierarchySet LoadHierarchyDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("hierarchy directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  HierarchySet set;
  for (const auto& file : files) {
    auto h = Hierarchy::Load(file);
    set.emplace(h.attribute(), std::move(h));
  }
  return set;
}

std::vector<std::string> ValidateAgainst(const Hierarchy& hierarchy,
                                         const Dataset& dataset,
                                         std::string_view attribute) {
  const std::size_t column = dataset.schema().RequireIndex(attribute);
  if (dataset.schema()[column].kind != AttributeKind::kCategorical) {
    throw SchemaError("attribute '" + std::string(attribute) +
                      "' is not categorical");
  }
  std::vector<std::string> violations;
  std::set<std::string, std::less<>> reported;
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const auto* value = std::get_if<std::string>(&dataset.cell(r, column));
    if (value == nullptr) continue;
    if (!hierarchy.FindLeaf(*value) && reported.insert(*value).second) {
      violations.push_back(*value);
    }
  }
  return violations;
}

}  // namespace anonforge
