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
#ifndef ANONFORGE_PIPELINE_H_
#define ANONFORGE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anonforge/classifiers.h"
#include "anonforge/dataset.h"
#include "anonforge/evaluation.h"
#include "anonforge/features.h"
#include "anonforge/hierarchy.h"
#include "anonforge/session.h"
#include "anonforge/weights.h"

namespace anonforge {

inline constexpr std::string_view kVersion = "0.3.0";

struct DataSource {
  std::filesystem::path csv;
  // Absent: the Adult layout is assumed (raw or preprocessed, by header).
  std::optional<std::filesystem::path> schema;
  bool adult_preprocess = false;
  bool complete_only = true;
  std::size_t rows = 0;  // 0 keeps every row
  std::uint64_t sample_seed = 0;
};

// Loads, optionally preprocesses, and subsets a dataset.
Dataset LoadDataSource(const DataSource& source);

// Scripted stand-ins for the human in batch iML runs.
enum class OraclePolicy { kEnginePick, kRandom, kWorstPick };

struct RegimeSpec {
  enum class Kind { kEqual, kBias, kImlLog, kImlPolicy };

  Kind kind = Kind::kEqual;
  std::string label;  // as written in the config
  std::filesystem::path file;
  OraclePolicy policy = OraclePolicy::kEnginePick;
  std::uint64_t policy_seed = 0;

  // "equal" | "bias:<sliders.json>" | "iml:<actions.jsonl>" |
  // "iml:policy:engine_pick" | "iml:policy:worst_pick" | "iml:policy:random(<seed>)".
  // Relative files resolve against base_dir.
  static RegimeSpec Parse(std::string_view text,
                          const std::filesystem::path& base_dir = {});
};

// Parameters of the sessions behind the iML regimes.
struct ImlSessionConfig {
  std::size_t k = 10;
  std::size_t m = 3;
  UpdateParams update;
};

struct SweepConfig {
  DataSource data;
  std::filesystem::path hierarchies;
  std::vector<std::size_t> k_grid = {2, 5, 10, 20, 50, 100, 200};
  std::vector<RegimeSpec> regimes;
  std::vector<Target> targets;
  std::vector<ClassifierSpec> classifiers;
  std::size_t folds = 5;
  std::uint64_t seed = 7;
  EducationBins education_bins;
  ImlSessionConfig iml;
  std::size_t pool_size = 1;

  // Relative paths resolve against base_dir (usually the config's directory).
  static SweepConfig FromJson(std::string_view json,
                              const std::filesystem::path& base_dir = {});
  static SweepConfig Load(const std::filesystem::path& path);
  std::string ToJson() const;
  // ConfigError: k values must be >= 2, ascending and unique; lists non-empty.
  void Validate() const;
};

// Plays a whole session with a scripted policy; returns the final weights.
WeightVector RunScriptedSession(std::shared_ptr<const Dataset> dataset,
                                std::shared_ptr<const HierarchySet> hierarchies,
                                const ImlSessionConfig& config, OraclePolicy policy,
                                std::uint64_t policy_seed);

WeightVector ResolveRegimeWeights(const RegimeSpec& regime,
                                  std::shared_ptr<const Dataset> dataset,
                                  std::shared_ptr<const HierarchySet> hierarchies,
                                  const ImlSessionConfig& config);

inline constexpr std::string_view kOriginalRegime = "original";
inline constexpr std::string_view kMeanClassifier = "mean";

struct SweepRow {
  std::size_t k = 0;  // 0 = the original dataset
  std::string regime;
  std::string target;
  std::string classifier;
  EvalReport report;
  double normalized_gil = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;      // canonical order
  std::vector<SweepRow> averages;  // per (k, regime, target) mean over classifiers
  std::vector<std::string> regimes;
  std::vector<std::string> targets;
  std::map<std::string, WeightVector> regime_weights;
  std::size_t anonymizations = 0;
  std::size_t cache_hits = 0;
};

using ProgressCallback = std::function<void(double fraction)>;

// For each (k, regime) the dataset is anonymized exactly once and shared by
// every target and classifier; k = 0 rows evaluate the raw dataset once.
// Errors are rethrown with the grid coordinates in their detail.
SweepResult RunSweep(const SweepConfig& config, const ProgressCallback& progress = {});

// Writes results.csv, plots/<target>.json and run-manifest.json.
// ReportError on I/O failure.
void EmitReport(const SweepResult& result, const SweepConfig& config,
                const std::filesystem::path& out_dir);

std::string ResultsCsv(const SweepResult& result);

// Spearman rank correlation with average ranks for ties.
double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace anonforge

#endif  // ANONFORGE_PIPELINE_H_
