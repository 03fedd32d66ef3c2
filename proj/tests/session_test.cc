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

#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "anonforge/error.h"
#include "test_support.h"

namespace anonforge {
namespace {

std::shared_ptr<const Dataset> Rows(std::size_t n) {
  return std::make_shared<Dataset>(testing::AdultRows(n));
}

std::shared_ptr<const HierarchySet> Trees() {
  return std::make_shared<HierarchySet>(testing::AdultTrees());
}

WeightVector Equal(const Dataset& d) { return EqualWeights(d.schema().QuasiIdentifierNames()); }

std::unique_ptr<Session> NewSession(std::size_t n, SessionConfig config = {3, 3, {}}) {
  auto data = Rows(n);
  const auto w = Equal(*data);
  return Session::Create(data, Trees(), config, w);
}

std::size_t HistogramTotal(const SessionMetrics& m) {
  std::size_t total = 0;
  for (const auto& [size, count] : m.class_sizes) total += size * count;
  return total;
}

TEST(SessionCreate, LoadedWithEmptyLogAndDistinctIds) {
  auto a = NewSession(30);
  auto b = NewSession(30);
  EXPECT_EQ(a->phase(), SessionPhase::kLoaded);
  EXPECT_TRUE(a->log().empty());
  EXPECT_NE(a->id(), b->id());
  for (char c : a->id()) EXPECT_TRUE(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_');
}

TEST(SessionCreate, ContractViolations) {
  EXPECT_THROW(NewSession(10, {11, 3, {}}), RangeError);
  EXPECT_THROW(NewSession(10, {1, 3, {}}), RangeError);
  EXPECT_THROW(NewSession(10, {2, 1, {}}), RangeError);
  EXPECT_THROW(NewSession(10, {2, 11, {}}), RangeError);
  EXPECT_THROW(NewSession(10, {2, 3, {-1.0, 1e-9, 0.01}}), UpdateError);
  auto data = Rows(10);
  EXPECT_THROW(Session::Create(data, Trees(), {}, EqualWeights(std::vector<std::string>{"age"})),
               WeightError);
}

TEST(SessionPropose, FreshSessionSeedsRecordZero) {
  auto s = NewSession(30);
  const RoundProposal p = s->Propose();
  EXPECT_EQ(s->phase(), SessionPhase::kRunning);
  EXPECT_EQ(p.open_members, (std::vector<std::size_t>{0}));
  ASSERT_EQ(p.candidates.size(), 3u);
  EXPECT_EQ(p.engine_pick, 0u);
  EXPECT_EQ(p.open_weighted_gil, 0.0);
  EXPECT_EQ(p.open_generalization.size(), 10u);
  for (std::size_t i = 1; i < p.candidates.size(); ++i) {
    EXPECT_LE(p.candidates[i - 1].delta, p.candidates[i].delta);
  }
}

TEST(SessionPropose, LastRecordGivesSingleCandidate) {
  auto s = NewSession(3, {3, 3, {}});
  const auto first = s->Propose();
  EXPECT_EQ(first.candidates.size(), 2u);
  const auto before = s->weights();
  s->Choose(first.candidates[0].record);
  // The choice among two updates the weights; the sole remaining one does not.
  const auto second = s->Propose();
  ASSERT_EQ(second.candidates.size(), 1u);
  const auto after_first = s->weights();
  const auto m = s->Choose(second.candidates[0].record);
  EXPECT_EQ(s->weights(), after_first);
  EXPECT_EQ(m.phase, SessionPhase::kComplete);
  EXPECT_EQ(m.records_remaining, 0u);
  EXPECT_THROW(s->Propose(), PhaseError);
  (void)before;
}

TEST(SessionChoose, NonCandidateLeavesStateUnchanged) {
  auto s = NewSession(30);
  const auto p = s->Propose();
  std::set<std::size_t> offered;
  for (const auto& c : p.candidates) offered.insert(c.record);
  std::size_t outsider = 1;
  while (offered.count(outsider)) ++outsider;
  const auto weights = s->weights();
  const auto metrics = s->Metrics();
  EXPECT_THROW(s->Choose(outsider), OracleError);
  EXPECT_THROW(s->Choose(0), OracleError);
  EXPECT_EQ(s->weights(), weights);
  EXPECT_TRUE(s->log().empty());
  EXPECT_EQ(s->Metrics().open_cluster_size, metrics.open_cluster_size);
  EXPECT_EQ(s->Propose().candidates.size(), p.candidates.size());
}

TEST(SessionChoose, EnginePickMatchesManualGreedyWithUpdates) {
  auto data = Rows(40);
  auto trees = Trees();
  const SessionConfig config{4, 3, {}};
  auto s = Session::Create(data, trees, config, Equal(*data));

  const GilModel model(*data, *trees);
  GreedyClusterer manual(model, 4);
  WeightVector w = Equal(*data);
  std::size_t choices = 0;
  while (s->phase() != SessionPhase::kComplete) {
    const auto p = s->Propose();
    const auto ranked = manual.Rank(model.ResolveWeights(w), 3);
    ASSERT_EQ(ranked.size(), p.candidates.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      EXPECT_EQ(ranked[i].record, p.candidates[i].record);
    }
    if (ranked.size() >= 2) {
      CostMatrix costs;
      for (const auto& c : ranked) costs.push_back(c.attribute_deltas);
      w = ImlUpdate(w, costs, 0, config.update);
    }
    manual.Add(ranked[0].record, model.ResolveWeights(w));
    const auto m = s->Choose(p.candidates[p.engine_pick].record);
    ++choices;
    EXPECT_EQ(m.weights, w);
  }
  EXPECT_EQ(choices, 40u - 40u / 4u);
  EXPECT_EQ(Export(s->Result()), Export(manual.Result(w)));
}

TEST(SessionChoose, EnginePickWithoutUpdatesEqualsSangreea) {
  auto data = Rows(80);
  auto trees = Trees();
  SessionConfig config{5, 3, {}};
  config.update.eta = 0.0;
  auto s = Session::Create(data, trees, config, Equal(*data));
  while (s->phase() != SessionPhase::kComplete) {
    const auto p = s->Propose();
    s->Choose(p.candidates[p.engine_pick].record);
    EXPECT_EQ(s->weights(), Equal(*data));
  }
  EXPECT_EQ(Export(s->Result()), Export(Sangreea(*data, 5, *trees, Equal(*data))));
}

TEST(SessionSetWeights, ReRanksCandidates) {
  auto s = NewSession(50);
  const auto p0 = s->Propose();
  s->Choose(p0.candidates[0].record);
  Sliders sliders;
  for (const auto& name : s->model().qi_names()) sliders.emplace_back(name, 0.1);
  sliders[0].second = 1.0;  // age dominates
  const auto m = s->SetWeights(sliders);
  EXPECT_EQ(m.weights, BiasWeights(sliders));
  const auto p = s->Propose();

  // Recompute every unassigned delta under the new weights.
  const auto& model = s->model();
  Cluster open{p.open_members, model.Generalize(p.open_members)};
  std::vector<std::pair<double, std::size_t>> all;
  std::set<std::size_t> members(p.open_members.begin(), p.open_members.end());
  for (std::size_t r = 0; r < model.record_count(); ++r) {
    if (!members.count(r)) all.emplace_back(model.GilDelta(open, r, m.weights), r);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < p.candidates.size(); ++i) {
    EXPECT_EQ(p.candidates[i].record, all[i].second);
    EXPECT_NEAR(p.candidates[i].delta, all[i].first, 1e-9);
  }
}

TEST(SessionSetWeights, EqualSlidersAndPhaseRules) {
  auto s = NewSession(20);
  Sliders sliders;
  for (const auto& name : s->model().qi_names()) sliders.emplace_back(name, 0.4);
  EXPECT_EQ(s->SetWeights(sliders).weights, Equal(s->dataset()));
  sliders[0].second = 1.5;
  EXPECT_THROW(s->SetWeights(sliders), RangeError);
  s->Autopilot();
  sliders[0].second = 0.5;
  EXPECT_THROW(s->SetWeights(sliders), PhaseError);
  EXPECT_THROW(s->Autopilot(), PhaseError);
  EXPECT_THROW(s->Choose(0), PhaseError);
}

TEST(SessionAutopilot, FreshSessionEqualsSangreea) {
  auto data = Rows(120);
  auto trees = Trees();
  auto s = Session::Create(data, trees, {6, 3, {}}, Equal(*data));
  EXPECT_THROW(s->Result(), PhaseError);
  const auto a = s->Autopilot();
  EXPECT_EQ(s->phase(), SessionPhase::kComplete);
  EXPECT_EQ(Export(a), Export(Sangreea(*data, 6, *trees, Equal(*data))));
  EXPECT_EQ(Export(s->Result()), Export(a));
  const auto m = s->Metrics();
  EXPECT_EQ(m.assigned, 120u);
  EXPECT_EQ(HistogramTotal(m), 120u);
  for (const auto& [size, count] : m.class_sizes) EXPECT_GE(size, 6u);
}

TEST(SessionReplay, AutopilotOnlyLogEqualsSangreea) {
  auto data = Rows(60);
  auto trees = Trees();
  const std::vector<Action> log = {{Action::Kind::kAutopilot, 0, 0, {}}};
  EXPECT_EQ(Export(Session::Replay(data, trees, {3, 3, {}}, Equal(*data), log)),
            Export(Sangreea(*data, 3, *trees, Equal(*data))));
}

TEST(SessionReplay, TamperedChoiceNamesSequence) {
  auto s = NewSession(30);
  for (int i = 0; i < 3; ++i) s->Choose(s->Propose().candidates[1].record);
  s->Autopilot();
  auto log = s->log();
  log[2].record = 0;
  try {
    Session::Replay(Rows(30), Trees(), {3, 3, {}}, Equal(*Rows(30)), log);
    FAIL() << "expected ReplayError";
  } catch (const ReplayError& e) {
    EXPECT_EQ(e.sequence(), 2u);
  }
  auto gap = s->log();
  gap[1].sequence = 5;
  EXPECT_THROW(Session::Replay(Rows(30), Trees(), {3, 3, {}}, Equal(*Rows(30)), gap),
               ReplayError);
}

TEST(SessionReplay, FuzzedLogsReproduceExports) {
  auto data = Rows(60);
  auto trees = Trees();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const SessionConfig config{2 + rng() % 5, 2 + rng() % 4, {}};
    auto s = Session::Create(data, trees, config, Equal(*data));
    const auto names = s->model().qi_names();
    while (s->phase() != SessionPhase::kComplete) {
      const int roll = static_cast<int>(rng() % 20);
      SessionMetrics m;
      if (roll == 0) {
        s->Autopilot();
        m = s->Metrics();
      } else if (roll < 3) {
        Sliders sliders;
        for (const auto& n : names) sliders.emplace_back(n, static_cast<double>(rng() % 11) / 10.0);
        sliders[rng() % names.size()].second = 1.0;
        m = s->SetWeights(sliders);
      } else {
        const auto p = s->Propose();
        m = s->Choose(p.candidates[rng() % p.candidates.size()].record);
      }
      EXPECT_EQ(HistogramTotal(m), m.assigned);
      EXPECT_EQ(m.assigned + m.records_remaining, 60u);
      EXPECT_NO_THROW(m.weights.Validate());
      EXPECT_EQ(m.sequence, s->log().size());
    }
    std::stringstream file;
    WriteActionLog(file, s->log());
    const auto log = ReadActionLog(file);
    EXPECT_EQ(log, s->log());
    EXPECT_EQ(Export(Session::Replay(data, trees, config, Equal(*data), log)),
              Export(s->Result()));
    auto restored = Session::Restore(data, trees, config, Equal(*data), log);
    EXPECT_EQ(restored->weights(), s->weights());
  }
}

TEST(SessionConcurrency, SecondActionIsBusyAndReadsAreConsistent) {
  auto data = Rows(2000);
  auto s = Session::Create(data, Trees(), {10, 3, {}}, Equal(*data));
  Sliders sliders;
  for (const auto& name : s->model().qi_names()) sliders.emplace_back(name, 0.5);

  std::atomic<bool> done{false};
  std::thread pilot([&] {
    for (;;) {
      try {
        s->Autopilot();
        break;
      } catch (const BusyError&) {
        std::this_thread::yield();
      }
    }
    done = true;
  });
  std::size_t busy = 0;
  std::size_t reads = 0;
  while (!done) {
    try {
      s->SetWeights(sliders);
    } catch (const BusyError&) {
      ++busy;
    } catch (const PhaseError&) {
    }
    const auto m = s->Metrics();
    EXPECT_EQ(HistogramTotal(m), m.assigned);
    ++reads;
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  pilot.join();
  EXPECT_GT(busy, 0u);
  EXPECT_GT(reads, 0u);
  EXPECT_EQ(s->phase(), SessionPhase::kComplete);
}

TEST(ActionLog, JsonLinesFormat) {
  const Action choice{Action::Kind::kChoice, 0, 4, {}};
  EXPECT_EQ(ActionToJson(choice), R"({"seq":0,"type":"choice","record":4})");
  const Action weights{Action::Kind::kSetWeights, 1, 0, {{"age", 0.5}}};
  EXPECT_EQ(ActionFromJson(ActionToJson(weights)), weights);
  EXPECT_EQ(ActionFromJson(R"({"seq":2,"type":"autopilot"})").kind, Action::Kind::kAutopilot);
  EXPECT_THROW(ActionFromJson(R"({"seq":0,"type":"undo"})"), BadRequestError);
  EXPECT_THROW(ActionFromJson("nope"), BadRequestError);
  std::istringstream bad("{\"seq\":0,\"type\":\"autopilot\"}\n{oops\n");
  EXPECT_THROW(ReadActionLog(bad), ReplayError);
}

}  // namespace
}  // namespace anonforge
