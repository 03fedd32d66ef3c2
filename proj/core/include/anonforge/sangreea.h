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
#ifndef ANONFORGE_SANGREEA_H_
#define ANONFORGE_SANGREEA_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anonforge/dataset.h"
#include "anonforge/gil.h"
#include "anonforge/hierarchy.h"
#include "anonforge/weights.h"

namespace anonforge {

// Output row cell: an interval for numeric quasi-identifiers, a node label
// ("*" for the root) for categorical ones.
using GeneralizedCell = std::variant<Interval, std::string>;

// A k-anonymous partition of a dataset plus its rendered output rows.
class AnonymizedDataset {
 public:
  // Validates that clusters partition [0, n), that every cluster holds at
  // least k members and that each generalization matches its members.
  AnonymizedDataset(const GilModel& model, std::vector<Cluster> clusters,
                    std::size_t k, WeightVector weights);

  const Schema& schema() const { return schema_; }
  std::span<const std::size_t> quasi_identifiers() const { return qi_columns_; }
  std::size_t sensitive_column() const { return sensitive_; }
  std::span<const Cluster> clusters() const { return clusters_; }
  std::size_t k() const { return k_; }
  const WeightVector& weights() const { return weights_; }
  std::size_t size() const { return cluster_of_.size(); }
  std::size_t cluster_of(std::size_t record) const { return cluster_of_[record]; }

  // Generalized quasi-identifier cells of a record (its cluster's tuple).
  std::span<const GeneralizedCell> generalized_row(std::size_t record) const {
    return cells_[cluster_of_[record]];
  }
  const Cell& sensitive_value(std::size_t record) const {
    return sensitive_values_[record];
  }
  // Rendered text of the quasi-identifier tuple, as written by Export.
  std::vector<std::string> RenderedRow(std::size_t record) const;

 private:
  Schema schema_;
  std::vector<std::size_t> qi_columns_;
  std::size_t sensitive_ = 0;
  std::vector<Cluster> clusters_;
  std::size_t k_ = 0;
  WeightVector weights_;
  std::vector<std::size_t> cluster_of_;
  std::vector<std::vector<GeneralizedCell>> cells_;
  std::vector<std::vector<std::string>> rendered_;
  std::vector<Cell> sensitive_values_;
};

struct Candidate {
  std::size_t record = 0;
  // Weighted GIL increase of adding the record to the open cluster.
  double delta = 0.0;
  // Unweighted per-attribute increase, quasi-identifier order.
  std::vector<double> attribute_deltas;
};

// Step-wise SaNGreeA. One cluster is open at a time; it is seeded with the
// lowest-index unassigned record and grown one record per Add until it holds
// k members, then closed. When fewer than k records remain unassigned they are
// absorbed, in index order, into the closed cluster whose GIL grows least.
class GreedyClusterer {
 public:
  // RangeError unless 2 <= k <= n.
  GreedyClusterer(const GilModel& model, std::size_t k);

  bool complete() const { return open_.members.empty(); }
  const Cluster& open_cluster() const { return open_; }
  std::span<const Cluster> closed_clusters() const { return closed_; }
  std::size_t unassigned_count() const { return unassigned_; }
  bool is_unassigned(std::size_t record) const { return !assigned_[record]; }
  std::size_t k() const { return k_; }

  // The m unassigned records with the smallest weighted delta, ascending,
  // ties broken by lower index. Empty once complete.
  std::vector<Candidate> Rank(std::span<const double> weights, std::size_t m) const;

  // Adds an unassigned record to the open cluster (ClusterError otherwise).
  // Weights are used for leftover absorption when this add finishes the run.
  void Add(std::size_t record, std::span<const double> weights);

  void RunToCompletion(std::span<const double> weights);

  // PhaseError unless complete.
  AnonymizedDataset Result(const WeightVector& weights) const;

 private:
  void OpenNextOrAbsorb(std::span<const double> weights);

  const GilModel* model_;
  std::size_t k_;
  std::vector<bool> assigned_;
  std::size_t unassigned_;
  std::vector<Cluster> closed_;
  Cluster open_;
};

// Picks one of the offered candidates (ascending by delta) and returns its
// record index.
using ChoiceFunction =
    std::function<std::size_t(const Cluster& open, std::span<const Candidate>)>;

struct ChoiceOracle {
  std::size_t m = 3;
  ChoiceFunction choose;
};

// Greedy k-anonymization. Without an oracle the result is deterministic. With
// one, every growth step offers the top-m candidates and uses the oracle's
// pick; OracleError when it returns a record that was not offered.
AnonymizedDataset Sangreea(const Dataset& dataset, std::size_t k,
                           const HierarchySet& hierarchies,
                           const WeightVector& weights,
                           const std::optional<ChoiceOracle>& oracle = std::nullopt);

struct GilTotals {
  double unweighted = 0.0;
  double weighted = 0.0;
  // unweighted / (n * quasi-identifier count), in [0, 1].
  double normalized = 0.0;
};

GilTotals TotalGil(const AnonymizedDataset& anonymized, const GilModel& model,
                   const WeightVector& weights);
GilTotals TotalGil(const AnonymizedDataset& anonymized, const Dataset& dataset,
                   const HierarchySet& hierarchies, const WeightVector& weights);

// CSV: quasi-identifier columns then the sensitive column, one row per input
// record in input order. Intervals render as "lo-hi" or a plain number when
// lo == hi; the hierarchy root renders as "*".
std::string Export(const AnonymizedDataset& anonymized);

}  // namespace anonforge

#endif  // ANONFORGE_SANGREEA_H_
