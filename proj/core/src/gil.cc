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
#include "anonforge/gil.h"

#include <algorithm>

#include "anonforge/csv.h"
#include "anonforge/error.h"

namespace anonforge {
namespace {

double WeightedSum(std::span<const double> terms, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) sum += w[j] * terms[j];
  return sum;
}

}  // namespace

GilModel::GilModel(const Dataset& dataset, const HierarchySet& hierarchies)
    : dataset_(&dataset) {
  const Schema& schema = dataset.schema();
  schema.ValidateForAnonymization();
  columns_ = schema.QuasiIdentifiers();
  const std::size_t q = columns_.size();
  const std::size_t n = dataset.size();
  numbers_.assign(n * q, 0.0);
  leaves_.assign(n * q, NodeId{});
  for (std::size_t j = 0; j < q; ++j) {
    const std::size_t col = columns_[j];
    const Attribute& attr = schema[col];
    names_.push_back(attr.name);
    if (attr.kind == AttributeKind::kNumeric) {
      hierarchies_.push_back(nullptr);
      const auto& range = dataset.range(col);
      ranges_.push_back(range ? range->width() : 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        if (IsMissing(dataset.cell(r, col))) {
          throw SchemaError("record " + std::to_string(r) +
                            " is missing quasi-identifier '" + attr.name + "'");
        }
        numbers_[r * q + j] = dataset.Number(r, col);
      }
    } else {
      auto it = hierarchies.find(attr.name);
      if (it == hierarchies.end()) {
        throw HierarchyError("no hierarchy for categorical quasi-identifier '" +
                             attr.name + "'");
      }
      hierarchies_.push_back(&it->second);
      ranges_.push_back(0.0);
      for (std::size_t r = 0; r < n; ++r) {
        if (IsMissing(dataset.cell(r, col))) {
          throw SchemaError("record " + std::to_string(r) +
                            " is missing quasi-identifier '" + attr.name + "'");
        }
        leaves_[r * q + j] = it->second.RequireLeaf(dataset.Label(r, col));
      }
    }
  }
}

Generalization GilModel::Singleton(std::size_t record) const {
  if (record >= record_count()) throw ClusterError("record index out of range");
  Generalization g;
  g.reserve(qi_count());
  for (std::size_t j = 0; j < qi_count(); ++j) {
    if (is_numeric(j)) {
      const double v = Value(record, j);
      g.emplace_back(Interval{v, v});
    } else {
      g.emplace_back(Leaf(record, j));
    }
  }
  return g;
}

void GilModel::Extend(Generalization& g, std::size_t record) const {
  if (record >= record_count()) throw ClusterError("record index out of range");
  for (std::size_t j = 0; j < qi_count(); ++j) {
    if (is_numeric(j)) {
      auto& iv = std::get<Interval>(g[j]);
      const double v = Value(record, j);
      iv.lo = std::min(iv.lo, v);
      iv.hi = std::max(iv.hi, v);
    } else {
      auto& node = std::get<NodeId>(g[j]);
      node = hierarchies_[j]->Lca(node, Leaf(record, j));
    }
  }
}

Generalization GilModel::Generalize(std::span<const std::size_t> members) const {
  if (members.empty()) throw ClusterError("cannot generalize an empty cluster");
  Generalization g = Singleton(members.front());
  for (std::size_t r : members.subspan(1)) Extend(g, r);
  return g;
}

double GilModel::Term(std::size_t j, const GeneralizedValue& value) const {
  if (is_numeric(j)) {
    const double range = ranges_[j];
    return range > 0.0 ? std::get<Interval>(value).width() / range : 0.0;
  }
  const Hierarchy& h = *hierarchies_[j];
  return static_cast<double>(h.NodeHeight(std::get<NodeId>(value))) /
         static_cast<double>(h.height());
}

std::vector<double> GilModel::Terms(const Generalization& g) const {
  if (g.size() != qi_count()) {
    throw ClusterError("generalization does not match the quasi-identifiers");
  }
  std::vector<double> terms(qi_count());
  for (std::size_t j = 0; j < qi_count(); ++j) terms[j] = Term(j, g[j]);
  return terms;
}

double GilModel::ExtendedTerm(std::size_t j, const GeneralizedValue& value,
                              std::size_t record) const {
  if (is_numeric(j)) {
    const double range = ranges_[j];
    if (!(range > 0.0)) return 0.0;
    const auto& iv = std::get<Interval>(value);
    const double v = Value(record, j);
    return (std::max(iv.hi, v) - std::min(iv.lo, v)) / range;
  }
  const Hierarchy& h = *hierarchies_[j];
  const NodeId lca = h.Lca(std::get<NodeId>(value), Leaf(record, j));
  return static_cast<double>(h.NodeHeight(lca)) / static_cast<double>(h.height());
}

std::vector<double> GilModel::ResolveWeights(const WeightVector& weights) const {
  std::vector<double> out(qi_count());
  for (std::size_t j = 0; j < qi_count(); ++j) out[j] = weights.Require(names_[j]);
  return out;
}

void GilModel::CheckConsistent(const Cluster& cluster) const {
  if (cluster.members.empty()) throw ClusterError("cluster has no members");
  if (Generalize(cluster.members) != cluster.generalization) {
    throw ClusterError("cluster generalization is inconsistent with its members");
  }
}

GilBreakdown GilModel::ClusterGil(const Cluster& cluster,
                                  const WeightVector& weights) const {
  CheckConsistent(cluster);
  const auto w = ResolveWeights(weights);
  const auto terms = Terms(cluster.generalization);
  const double size = static_cast<double>(cluster.members.size());
  GilBreakdown out;
  double plain = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    out.per_attribute.emplace_back(names_[j], terms[j]);
    plain += terms[j];
  }
  out.unweighted_total = size * plain;
  out.weighted_total = size * WeightedSum(terms, w);
  return out;
}

double GilModel::WeightedDelta(std::size_t size, const Generalization& g,
                               double weighted_sum, std::size_t candidate,
                               std::span<const double> weights) const {
  double extended = 0.0;
  for (std::size_t j = 0; j < qi_count(); ++j) {
    extended += weights[j] * ExtendedTerm(j, g[j], candidate);
  }
  const double n = static_cast<double>(size);
  return (n + 1.0) * extended - n * weighted_sum;
}

double GilModel::GilDelta(const Cluster& cluster, std::size_t candidate,
                          const WeightVector& weights) const {
  if (candidate >= record_count()) throw ClusterError("candidate out of range");
  if (std::find(cluster.members.begin(), cluster.members.end(), candidate) !=
      cluster.members.end()) {
    throw ClusterError("candidate is already a member of the cluster");
  }
  CheckConsistent(cluster);
  const auto w = ResolveWeights(weights);
  const double sum = WeightedSum(Terms(cluster.generalization), w);
  return WeightedDelta(cluster.members.size(), cluster.generalization, sum,
                       candidate, w);
}

std::vector<double> GilModel::AttributeDeltas(std::size_t size,
                                              const Generalization& g,
                                              std::size_t candidate) const {
  const double n = static_cast<double>(size);
  std::vector<double> out(qi_count());
  for (std::size_t j = 0; j < qi_count(); ++j) {
    out[j] = (n + 1.0) * ExtendedTerm(j, g[j], candidate) - n * Term(j, g[j]);
  }
  return out;
}

std::string GilModel::Render(std::size_t j, const GeneralizedValue& value) const {
  if (is_numeric(j)) {
    const auto& iv = std::get<Interval>(value);
    if (iv.lo == iv.hi) return csv::FormatNumber(iv.lo);
    return csv::FormatNumber(iv.lo) + "-" + csv::FormatNumber(iv.hi);
  }
  const Hierarchy& h = *hierarchies_[j];
  const NodeId node = std::get<NodeId>(value);
  if (node == h.root()) return "*";
  return h.label(node);
}

Generalization Generalize(const Dataset& dataset,
                          std::span<const std::size_t> members,
                          const HierarchySet& hierarchies) {
  return GilModel(dataset, hierarchies).Generalize(members);
}

GilBreakdown ClusterGil(const Dataset& dataset, const Cluster& cluster,
                        const HierarchySet& hierarchies,
                        const WeightVector& weights) {
  return GilModel(dataset, hierarchies).ClusterGil(cluster, weights);
}

double GilDelta(const Dataset& dataset, const Cluster& cluster,
                std::size_t candidate, const HierarchySet& hierarchies,
                const WeightVector& weights) {
  return GilModel(dataset, hierarchies).GilDelta(cluster, candidate, weights);
}

}  // namespace anonforge
