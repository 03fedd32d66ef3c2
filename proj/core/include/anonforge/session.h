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
#ifndef ANONFORGE_SESSION_H_
#define ANONFORGE_SESSION_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonforge/dataset.h"
#include "anonforge/gil.h"
#include "anonforge/hierarchy.h"
#include "anonforge/sangreea.h"
#include "anonforge/weights.h"

namespace anonforge {

enum class SessionPhase { kLoaded, kRunning, kComplete };
std::string_view SessionPhaseName(SessionPhase phase);

struct Action {
  enum class Kind { kChoice, kSetWeights, kAutopilot };

  Kind kind = Kind::kChoice;
  std::size_t sequence = 0;
  std::size_t record = 0;  // kChoice
  Sliders sliders;         // kSetWeights

  bool operator==(const Action&) const = default;
};

// One JSON object per line: {"seq":0,"type":"choice","record":4},
// {"seq":1,"type":"set_weights","sliders":{...}}, {"seq":2,"type":"autopilot"}.
std::string ActionToJson(const Action& action);
Action ActionFromJson(std::string_view line);
void WriteActionLog(std::ostream& out, std::span<const Action> actions);
std::vector<Action> ReadActionLog(std::istream& in);

struct RoundProposal {
  std::size_t round = 0;
  std::vector<std::size_t> open_members;
  std::vector<std::string> open_generalization;  // rendered, QI order
  double open_weighted_gil = 0.0;
  std::vector<Candidate> candidates;  // ascending by delta
  std::size_t engine_pick = 0;        // index into candidates
};

struct SessionMetrics {
  std::size_t sequence = 0;  // actions applied so far
  SessionPhase phase = SessionPhase::kLoaded;
  // Over closed equivalence classes, under the current weights.
  double unweighted_gil = 0.0;
  double weighted_gil = 0.0;
  double normalized_partial_gil = 0.0;
  std::map<std::size_t, std::size_t> class_sizes;  // size -> class count
  std::size_t assigned = 0;           // records in closed classes
  std::size_t records_remaining = 0;  // n - assigned
  std::size_t open_cluster_size = 0;
  WeightVector weights;
};

struct SessionConfig {
  std::size_t k = 2;
  std::size_t m = 3;
  UpdateParams update;  // eta == 0 disables the weight updates
};

// Interactive anonymization run: the engine grows one cluster at a time and
// the human picks each next member among the m best candidates. Every choice
// also re-weights the quasi-identifiers through ImlUpdate.
//
// Thread-safe. Actions (Choose, SetWeights, Autopilot) are single-writer: an
// action that arrives while another is running fails with BusyError. Reads
// block until the running action finishes, so they never see torn state.
class Session {
 public:
  // RangeError unless 2 <= k <= n and 2 <= m <= 10.
  static std::unique_ptr<Session> Create(std::shared_ptr<const Dataset> dataset,
                                         std::shared_ptr<const HierarchySet> hierarchies,
                                         SessionConfig config,
                                         const WeightVector& initial_weights,
                                         std::string id = {});

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const WeightVector& initial_weights() const { return initial_weights_; }
  const Dataset& dataset() const { return *dataset_; }
  const HierarchySet& hierarchies() const { return *hierarchies_; }
  const GilModel& model() const { return model_; }

  SessionPhase phase() const;
  WeightVector weights() const;
  std::vector<Action> log() const;

  // PhaseError once complete. Moves a loaded session to running.
  RoundProposal Propose();

  // OracleError (state unchanged) unless record is among the current
  // candidates.
  SessionMetrics Choose(std::size_t record);
  SessionMetrics SetWeights(const Sliders& sliders);
  AnonymizedDataset Autopilot();

  SessionMetrics Metrics() const;
  // PhaseError unless complete.
  AnonymizedDataset Result() const;

  // Re-runs a recorded log against fresh state. ReplayError names the first
  // action that cannot be applied.
  static AnonymizedDataset Replay(std::shared_ptr<const Dataset> dataset,
                                  std::shared_ptr<const HierarchySet> hierarchies,
                                  SessionConfig config,
                                  const WeightVector& initial_weights,
                                  std::span<const Action> log);

  // Like Replay but returns the live session, which may still be running.
  static std::unique_ptr<Session> Restore(std::shared_ptr<const Dataset> dataset,
                                          std::shared_ptr<const HierarchySet> hierarchies,
                                          SessionConfig config,
                                          const WeightVector& initial_weights,
                                          std::span<const Action> log,
                                          std::string id = {});

 private:
  Session(std::shared_ptr<const Dataset> dataset,
          std::shared_ptr<const HierarchySet> hierarchies, SessionConfig config,
          const WeightVector& initial_weights, std::string id);

  WeightVector AlignToQis(const WeightVector& w) const;
  std::unique_lock<std::mutex> BeginAction();
  void RequireActive() const;
  SessionMetrics MetricsLocked() const;
  RoundProposal ProposeLocked() const;
  void Append(Action action);

  std::shared_ptr<const Dataset> dataset_;
  std::shared_ptr<const HierarchySet> hierarchies_;
  GilModel model_;
  SessionConfig config_;
  std::string id_;
  WeightVector initial_weights_;

  mutable std::mutex action_mutex_;
  mutable std::shared_mutex state_mutex_;
  SessionPhase phase_ = SessionPhase::kLoaded;
  WeightVector weights_;
  GreedyClusterer clusterer_;
  std::vector<Action> log_;
  std::size_t round_ = 0;
};

std::string NewSessionId();

}  // namespace anonforge

#endif  // ANONFORGE_SESSION_H_
