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
#include "anonforge/sangreea.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "anonforge/csv.h"
#include "anonforge/error.h"

namespace anonforge {

AnonymizedDataset::AnonymizedDataset(const GilModel& model,
                                     std::vector<Cluster> clusters,
                                     std::size_t k, WeightVector weights)
    : schema_(model.dataset().schema()),
      qi_columns_(schema_.QuasiIdentifiers()),
      sensitive_(schema_.Sensitive()),
      clusters_(std::move(clusters)),
      k_(k),
      weights_(std::move(weights)) {
  const std::size_t n = model.record_count();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  cluster_of_.assign(n, kUnset);
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    const auto& cluster = clusters_[c];
    if (cluster.members.size() < k_) {
      throw ClusterError("cluster " + std::to_string(c) + " has fewer than k members");
    }
    for (std::size_t r : cluster.members) {
      if (r >= n || cluster_of_[r] != kUnset) {
        throw ClusterError("clusters do not partition the records");
      }
      cluster_of_[r] = c;
    }
    model.CheckConsistent(cluster);
    std::vector<GeneralizedCell> cells;
    std::vector<std::string> rendered;
    for (std::size_t j = 0; j < model.qi_count(); ++j) {
      const auto& value = cluster.generalization[j];
      if (model.is_numeric(j)) {
        cells.emplace_back(std::get<Interval>(value));
      } else {
        cells.emplace_back(model.Render(j, value));
      }
      rendered.push_back(model.Render(j, value));
    }
    cells_.push_back(std::move(cells));
    rendered_.push_back(std::move(rendered));
  }
  if (std::find(cluster_of_.begin(), cluster_of_.end(), kUnset) != cluster_of_.end()) {
    throw ClusterError("clusters do not cover every record");
  }
  sensitive_values_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    sensitive_values_.push_back(model.dataset().cell(r, sensitive_));
  }
}

std::vector<std::string> AnonymizedDataset::RenderedRow(std::size_t record) const {
  return rendered_[cluster_of_[record]];
}

GreedyClusterer::GreedyClusterer(const GilModel& model, std::size_t k)
    : model_(&model),
      k_(k),
      assigned_(model.record_count(), false),
      unassigned_(model.record_count()) {
  if (k < 2) throw RangeError("k must be at least 2");
  if (k > model.record_count()) {
    throw RangeError("k = " + std::to_string(k) + " exceeds the " +
                     std::to_string(model.record_count()) + " records");
  }
  // With n >= k there is always a first seed; weights are not needed yet.
  OpenNextOrAbsorb({});
}

std::vector<Candidate> GreedyClusterer::Rank(std::span<const double> weights,
                                             std::size_t m) const {
  std::vector<Candidate> out;
  if (complete() || m == 0) return out;
  const auto terms = model_->Terms(open_.generalization);
  double sum = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) sum += weights[j] * terms[j];

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(unassigned_);
  for (std::size_t r = 0; r < assigned_.size(); ++r) {
    if (assigned_[r]) continue;
    scored.emplace_back(
        model_->WeightedDelta(open_.members.size(), open_.generalization, sum, r,
                              weights),
        r);
  }
  const std::size_t take = std::min(m, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({scored[i].second, scored[i].first,
                   model_->AttributeDeltas(open_.members.size(),
                                           open_.generalization, scored[i].second)});
  }
  return out;
}

void GreedyClusterer::Add(std::size_t record, std::span<const double> weights) {
  if (complete()) throw PhaseError("clustering is already complete");
  if (record >= assigned_.size() || assigned_[record]) {
    throw ClusterError("record " + std::to_string(record) + " is not unassigned");
  }
  assigned_[record] = true;
  --unassigned_;
  open_.members.push_back(record);
  model_->Extend(open_.generalization, record);
  if (open_.members.size() >= k_) {
    closed_.push_back(std::move(open_));
    open_ = Cluster{};
    OpenNextOrAbsorb(weights);
  }
}

void GreedyClusterer::OpenNextOrAbsorb(std::span<const double> weights) {
  if (unassigned_ >= k_) {
    const auto seed = static_cast<std::size_t>(
        std::find(assigned_.begin(), assigned_.end(), false) - assigned_.begin());
    assigned_[seed] = true;
    --unassigned_;
    open_.members = {seed};
    open_.generalization = model_->Singleton(seed);
    return;
  }
  for (std::size_t r = 0; r < assigned_.size(); ++r) {
    if (assigned_[r]) continue;
    std::size_t best = 0;
    double best_delta = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < closed_.size(); ++c) {
      const auto& cl = closed_[c];
      const auto terms = model_->Terms(cl.generalization);
      double sum = 0.0;
      for (std::size_t j = 0; j < terms.size(); ++j) sum += weights[j] * terms[j];
      const double delta = model_->WeightedDelta(cl.members.size(),
                                                 cl.generalization, sum, r, weights);
      if (delta < best_delta) {
        best_delta = delta;
        best = c;
      }
    }
    assigned_[r] = true;
    --unassigned_;
    closed_[best].members.push_back(r);
    model_->Extend(closed_[best].generalization, r);
  }
}

void GreedyClusterer::RunToCompletion(std::span<const double> weights) {
  while (!complete()) Add(Rank(weights, 1).front().record, weights);
}

AnonymizedDataset GreedyClusterer::Result(const WeightVector& weights) const {
  if (!complete()) throw PhaseError("clustering is not complete");
  return AnonymizedDataset(*model_, closed_, k_, weights);
}

AnonymizedDataset Sangreea(const Dataset& dataset, std::size_t k,
                           const HierarchySet& hierarchies,
                           const WeightVector& weights,
                           const std::optional<ChoiceOracle>& oracle) {
  weights.Validate();
  const GilModel model(dataset, hierarchies);
  const auto w = model.ResolveWeights(weights);
  GreedyClusterer clusterer(model, k);
  if (!oracle) {
    clusterer.RunToCompletion(w);
    return clusterer.Result(weights);
  }
  if (oracle->m == 0 || !oracle->choose) throw OracleError("oracle is not usable");
  while (!clusterer.complete()) {
    const auto candidates = clusterer.Rank(w, oracle->m);
    const std::size_t pick = oracle->choose(clusterer.open_cluster(), candidates);
    const bool offered = std::any_of(candidates.begin(), candidates.end(),
                                     [&](const Candidate& c) { return c.record == pick; });
    if (!offered) {
      throw OracleError("oracle chose record " + std::to_string(pick) +
                        ", which was not offered");
    }
    clusterer.Add(pick, w);
  }
  return clusterer.Result(weights);
}

GilTotals TotalGil(const AnonymizedDataset& anonymized, const GilModel& model,
                   const WeightVector& weights) {
  if (anonymized.size() != model.record_count()) {
    throw ClusterError("anonymized dataset does not match the source dataset");
  }
  GilTotals totals;
  for (const auto& cluster : anonymized.clusters()) {
    const auto b = model.ClusterGil(cluster, weights);
    totals.unweighted += b.unweighted_total;
    totals.weighted += b.weighted_total;
  }
  const double denom = static_cast<double>(model.record_count()) *
                       static_cast<double>(model.qi_count());
  totals.normalized = denom > 0.0 ? totals.unweighted / denom : 0.0;
  return totals;
}

GilTotals TotalGil(const AnonymizedDataset& anonymized, const Dataset& dataset,
                   const HierarchySet& hierarchies, const WeightVector& weights) {
  return TotalGil(anonymized, GilModel(dataset, hierarchies), weights);
}

std::string Export(const AnonymizedDataset& anonymized) {
  std::ostringstream out;
  std::vector<std::string> row;
  for (std::size_t col : anonymized.quasi_identifiers()) {
    row.push_back(anonymized.schema()[col].name);
  }
  row.push_back(anonymized.schema()[anonymized.sensitive_column()].name);
  csv::WriteRow(out, row);
  for (std::size_t r = 0; r < anonymized.size(); ++r) {
    row = anonymized.RenderedRow(r);
    row.push_back(CellText(anonymized.sensitive_value(r)));
    csv::WriteRow(out, row);
  }
  return out.str();
}

}  // namespace anonforge
