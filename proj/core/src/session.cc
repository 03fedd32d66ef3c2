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
#include "anonforge/session.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>

#include "anonforge/error.h"

namespace anonforge {

std::string_view SessionPhaseName(SessionPhase phase) {
  switch (phase) {
    case SessionPhase::kLoaded: return "loaded";
    case SessionPhase::kRunning: return "running";
    case SessionPhase::kComplete: return "complete";
  }
  return "loaded";
}

std::string NewSessionId() {
  static std::atomic<std::uint64_t> counter{0};
  static const std::uint64_t salt = [] {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device() ^
           static_cast<std::uint64_t>(
               std::chrono::steady_clock::now().time_since_epoch().count());
  }();
  std::uint64_t x = salt + 0x9E3779B97F4A7C15ULL * (counter.fetch_add(1) + 1);
  // splitmix64 finalizer
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  x ^= x >> 31;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id = "s-";
  for (int shift = 60; shift >= 0; shift -= 4) id.push_back(kHex[(x >> shift) & 0xF]);
  return id;
}

Session::Session(std::shared_ptr<const Dataset> dataset,
                 std::shared_ptr<const HierarchySet> hierarchies,
                 SessionConfig config, const WeightVector& initial_weights,
                 std::string id)
    : dataset_(std::move(dataset)),
      hierarchies_(std::move(hierarchies)),
      model_(*dataset_, *hierarchies_),
      config_(config),
      id_(id.empty() ? NewSessionId() : std::move(id)),
      initial_weights_(AlignToQis(initial_weights)),
      weights_(initial_weights_),
      clusterer_(model_, config.k) {}

std::unique_ptr<Session> Session::Create(
    std::shared_ptr<const Dataset> dataset,
    std::shared_ptr<const HierarchySet> hierarchies, SessionConfig config,
    const WeightVector& initial_weights, std::string id) {
  if (!dataset || !hierarchies) throw BadRequestError("session needs a dataset and hierarchies");
  if (config.m < 2 || config.m > 10) {
    throw RangeError("candidates per round must be between 2 and 10");
  }
  // eta == 0 switches adaptation off for the session.
  if (config.update.eta != 0.0) config.update.Validate();
  initial_weights.Validate();
  return std::unique_ptr<Session>(new Session(std::move(dataset), std::move(hierarchies),
                                              config, initial_weights, std::move(id)));
}

WeightVector Session::AlignToQis(const WeightVector& w) const {
  return w.Reordered(model_.qi_names());
}

SessionPhase Session::phase() const {
  std::shared_lock lock(state_mutex_);
  return phase_;
}

WeightVector Session::weights() const {
  std::shared_lock lock(state_mutex_);
  return weights_;
}

std::vector<Action> Session::log() const {
  std::shared_lock lock(state_mutex_);
  return log_;
}

std::unique_lock<std::mutex> Session::BeginAction() {
  std::unique_lock lock(action_mutex_, std::try_to_lock);
  if (!lock.owns_lock()) {
    throw BusyError("session " + id_ + " is busy with another action");
  }
  return lock;
}

void Session::RequireActive() const {
  if (phase_ == SessionPhase::kComplete) {
    throw PhaseError("session " + id_ + " is already complete");
  }
}

void Session::Append(Action action) {
  action.sequence = log_.size();
  log_.push_back(std::move(action));
  if (clusterer_.complete()) {
    phase_ = SessionPhase::kComplete;
  } else if (phase_ == SessionPhase::kLoaded) {
    phase_ = SessionPhase::kRunning;
  }
}

RoundProposal Session::ProposeLocked() const {
  const auto w = model_.ResolveWeights(weights_);
  const Cluster& open = clusterer_.open_cluster();
  RoundProposal proposal;
  proposal.round = round_;
  proposal.open_members = open.members;
  for (std::size_t j = 0; j < model_.qi_count(); ++j) {
    proposal.open_generalization.push_back(model_.Render(j, open.generalization[j]));
  }
  proposal.open_weighted_gil = model_.ClusterGil(open, weights_).weighted_total;
  proposal.candidates = clusterer_.Rank(w, config_.m);
  proposal.engine_pick = 0;
  return proposal;
}

RoundProposal Session::Propose() {
  std::unique_lock lock(state_mutex_);
  RequireActive();
  if (phase_ == SessionPhase::kLoaded) phase_ = SessionPhase::kRunning;
  return ProposeLocked();
}

SessionMetrics Session::Choose(std::size_t record) {
  auto action = BeginAction();
  std::unique_lock lock(state_mutex_);
  RequireActive();
  const auto w = model_.ResolveWeights(weights_);
  const auto candidates = clusterer_.Rank(w, config_.m);
  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [&](const Candidate& c) { return c.record == record; });
  if (it == candidates.end()) {
    throw OracleError("record " + std::to_string(record) +
                      " is not among the current candidates");
  }
  WeightVector updated = weights_;
  if (candidates.size() >= 2 && config_.update.eta != 0.0) {
    CostMatrix costs;
    for (const auto& c : candidates) costs.push_back(c.attribute_deltas);
    updated = ImlUpdate(weights_, costs,
                        static_cast<std::size_t>(it - candidates.begin()),
                        config_.update);
  }
  clusterer_.Add(record, model_.ResolveWeights(updated));
  weights_ = std::move(updated);
  ++round_;
  Append({Action::Kind::kChoice, 0, record, {}});
  return MetricsLocked();
}

SessionMetrics Session::SetWeights(const Sliders& sliders) {
  auto action = BeginAction();
  std::unique_lock lock(state_mutex_);
  RequireActive();
  weights_ = AlignToQis(BiasWeights(sliders));
  Append({Action::Kind::kSetWeights, 0, 0, sliders});
  return MetricsLocked();
}

AnonymizedDataset Session::Autopilot() {
  auto action = BeginAction();
  std::unique_lock lock(state_mutex_);
  RequireActive();
  clusterer_.RunToCompletion(model_.ResolveWeights(weights_));
  Append({Action::Kind::kAutopilot, 0, 0, {}});
  return clusterer_.Result(weights_);
}

SessionMetrics Session::MetricsLocked() const {
  SessionMetrics m;
  m.sequence = log_.size();
  m.phase = phase_;
  m.weights = weights_;
  for (const auto& cluster : clusterer_.closed_clusters()) {
    const auto b = model_.ClusterGil(cluster, weights_);
    m.unweighted_gil += b.unweighted_total;
    m.weighted_gil += b.weighted_total;
    ++m.class_sizes[cluster.members.size()];
    m.assigned += cluster.members.size();
  }
  if (m.assigned > 0) {
    m.normalized_partial_gil =
        m.unweighted_gil /
        (static_cast<double>(m.assigned) * static_cast<double>(model_.qi_count()));
  }
  m.records_remaining = model_.record_count() - m.assigned;
  m.open_cluster_size = clusterer_.open_cluster().members.size();
  return m;
}

SessionMetrics Session::Metrics() const {
  std::shared_lock lock(state_mutex_);
  return MetricsLocked();
}

AnonymizedDataset Session::Result() const {
  std::shared_lock lock(state_mutex_);
  if (phase_ != SessionPhase::kComplete) {
    throw PhaseError("session " + id_ + " is not complete");
  }
  return clusterer_.Result(weights_);
}

std::unique_ptr<Session> Session::Restore(std::shared_ptr<const Dataset> dataset,
                                          std::shared_ptr<const HierarchySet> hierarchies,
                                          SessionConfig config,
                                          const WeightVector& initial_weights,
                                          std::span<const Action> log, std::string id) {
  auto session = Create(std::move(dataset), std::move(hierarchies), config,
                        initial_weights, std::move(id));
  for (std::size_t i = 0; i < log.size(); ++i) {
    const Action& action = log[i];
    if (action.sequence != i) {
      throw ReplayError(i, "expected sequence " + std::to_string(i) + ", found " +
                               std::to_string(action.sequence));
    }
    try {
      switch (action.kind) {
        case Action::Kind::kChoice: session->Choose(action.record); break;
        case Action::Kind::kSetWeights: session->SetWeights(action.sliders); break;
        case Action::Kind::kAutopilot: session->Autopilot(); break;
      }
    } catch (const Error& e) {
      throw ReplayError(i, std::string(e.code_name()) + ": " + e.what());
    }
  }
  return session;
}

AnonymizedDataset Session::Replay(std::shared_ptr<const Dataset> dataset,
                                  std::shared_ptr<const HierarchySet> hierarchies,
                                  SessionConfig config,
                                  const WeightVector& initial_weights,
                                  std::span<const Action> log) {
  return Restore(std::move(dataset), std::move(hierarchies), config, initial_weights,
                 log, "replay")
      ->Result();
}

}  // namespace anonforge
