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
#include "anonforge/service/wire.h"

#include <string>

#include "json.hpp"

namespace anonforge::service {
namespace {

using nlohmann::ordered_json;

ordered_json WeightsJson(const WeightVector& w) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < w.names().size(); ++i) out[w.names()[i]] = w.values()[i];
  return out;
}

}  // namespace

std::string ProposalToJson(const Session& session, const RoundProposal& proposal) {
  const Dataset& data = session.dataset();
  const auto qis = data.schema().QuasiIdentifiers();
  const auto names = data.schema().QuasiIdentifierNames();

  ordered_json generalization = ordered_json::object();
  for (std::size_t j = 0; j < names.size(); ++j) {
    generalization[names[j]] = proposal.open_generalization[j];
  }
  ordered_json candidates = ordered_json::array();
  for (const auto& c : proposal.candidates) {
    ordered_json costs = ordered_json::object();
    ordered_json values = ordered_json::object();
    for (std::size_t j = 0; j < names.size(); ++j) {
      costs[names[j]] = c.attribute_deltas[j];
      values[names[j]] = CellText(data.cell(c.record, qis[j]));
    }
    candidates.push_back({{"record", c.record},
                          {"delta", c.delta},
                          {"costs", std::move(costs)},
                          {"values", std::move(values)}});
  }
  const ordered_json doc{
      {"round", proposal.round},
      {"open_cluster",
       {{"members", proposal.open_members},
        {"generalization", std::move(generalization)},
        {"weighted_gil", proposal.open_weighted_gil}}},
      {"candidates", std::move(candidates)},
      {"engine_pick", proposal.engine_pick}};
  return doc.dump();
}

std::string MetricsToJson(const SessionMetrics& metrics) {
  ordered_json sizes = ordered_json::object();
  for (const auto& [size, count] : metrics.class_sizes) sizes[std::to_string(size)] = count;
  const ordered_json doc{
      {"sequence", metrics.sequence},
      {"phase", SessionPhaseName(metrics.phase)},
      {"gil",
       {{"unweighted", metrics.unweighted_gil},
        {"weighted", metrics.weighted_gil},
        {"normalized_partial", metrics.normalized_partial_gil}}},
      {"class_sizes", std::move(sizes)},
      {"assigned", metrics.assigned},
      {"records_remaining", metrics.records_remaining},
      {"open_cluster_size", metrics.open_cluster_size},
      {"weights", WeightsJson(metrics.weights)}};
  return doc.dump();
}

std::string ErrorToJson(const Error& error) {
  const ordered_json doc{{"error_code", error.code_name()},
                         {"message", error.what()},
                         {"detail", error.detail()}};
  return doc.dump();
}

}  // namespace anonforge::service
