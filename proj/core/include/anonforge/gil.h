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
#ifndef ANONFORGE_GIL_H_
#define ANONFORGE_GIL_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "anonforge/dataset.h"
#include "anonforge/hierarchy.h"
#include "anonforge/weights.h"

namespace anonforge {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// Numeric quasi-identifiers generalize to an interval, categorical ones to a
// hierarchy node.
using GeneralizedValue = std::variant<Interval, NodeId>;
// One entry per quasi-identifier, in schema order.
using Generalization = std::vector<GeneralizedValue>;

struct Cluster {
  std::vector<std::size_t> members;
  Generalization generalization;
};

struct GilBreakdown {
  std::vector<std::pair<std::string, double>> per_attribute;
  double unweighted_total = 0.0;
  double weighted_total = 0.0;
};

// General Information Loss over one dataset and its hierarchies.
//
//   GIL(cl) = |cl| * ( sum_j range(gen[N_j]) / range(X[N_j])
//                    + sum_j height(gen[C_j]) / height(H_{C_j}) )
//
// and the weighted form |cl| * sum_j w_j * term_j. A zero-width dataset range
// contributes 0; so does a leaf generalization.
//
// The model keeps references to the dataset and hierarchies; both must
// outlive it.
class GilModel {
 public:
  // Requires a schema valid for anonymization, a hierarchy for every
  // categorical quasi-identifier, no missing quasi-identifier cells, and every
  // categorical value a leaf of its hierarchy.
  GilModel(const Dataset& dataset, const HierarchySet& hierarchies);

  const Dataset& dataset() const { return *dataset_; }
  std::size_t record_count() const { return dataset_->size(); }
  std::size_t qi_count() const { return columns_.size(); }
  std::span<const std::string> qi_names() const { return names_; }
  std::size_t qi_column(std::size_t j) const { return columns_[j]; }
  bool is_numeric(std::size_t j) const { return hierarchies_[j] == nullptr; }
  // Null for numeric quasi-identifiers.
  const Hierarchy* hierarchy(std::size_t j) const { return hierarchies_[j]; }

  // ClusterError on an empty member set.
  Generalization Generalize(std::span<const std::size_t> members) const;
  Generalization Singleton(std::size_t record) const;
  // Widens g to cover record.
  void Extend(Generalization& g, std::size_t record) const;

  double Term(std::size_t j, const GeneralizedValue& value) const;
  std::vector<double> Terms(const Generalization& g) const;

  // Weights aligned to quasi-identifier order; WeightError if one is missing.
  std::vector<double> ResolveWeights(const WeightVector& weights) const;

  GilBreakdown ClusterGil(const Cluster& cluster, const WeightVector& weights) const;

  // weighted_total(cl + candidate) - weighted_total(cl).
  // ClusterError when the candidate is already a member.
  double GilDelta(const Cluster& cluster, std::size_t candidate,
                  const WeightVector& weights) const;

  // Same quantity from precomputed state: size = |cl|, g = gen(cl),
  // weighted_sum = sum_j w_j * term_j(g).
  double WeightedDelta(std::size_t size, const Generalization& g,
                       double weighted_sum, std::size_t candidate,
                       std::span<const double> weights) const;

  // Unweighted per-attribute increase (|cl|+1) * term'_j - |cl| * term_j.
  std::vector<double> AttributeDeltas(std::size_t size, const Generalization& g,
                                      std::size_t candidate) const;

  // ClusterError unless g equals Generalize(members).
  void CheckConsistent(const Cluster& cluster) const;

  std::string Render(std::size_t j, const GeneralizedValue& value) const;

 private:
  double Value(std::size_t record, std::size_t j) const {
    return numbers_[record * columns_.size() + j];
  }
  NodeId Leaf(std::size_t record, std::size_t j) const {
    return leaves_[record * columns_.size() + j];
  }
  double ExtendedTerm(std::size_t j, const GeneralizedValue& value,
                      std::size_t record) const;

  const Dataset* dataset_;
  std::vector<std::size_t> columns_;
  std::vector<std::string> names_;
  std::vector<const Hierarchy*> hierarchies_;
  std::vector<double> ranges_;
  std::vector<double> numbers_;
  std::vector<NodeId> leaves_;
};

Generalization Generalize(const Dataset& dataset,
                          std::span<const std::size_t> members,
                          const HierarchySet& hierarchies);

GilBreakdown ClusterGil(const Dataset& dataset, const Cluster& cluster,
                        const HierarchySet& hierarchies,
                        const WeightVector& weights);

double GilDelta(const Dataset& dataset, const Cluster& cluster,
                std::size_t candidate, const HierarchySet& hierarchies,
                const WeightVector& weights);

}  // namespace anonforge

#endif  // ANONFORGE_GIL_H_
