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
#include "anonforge/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "anonforge/csv.h"
#include "anonforge/error.h"
#include "anonforge/random.h"
#include "anonforge/sangreea.h"
#include "json.hpp"

namespace anonforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path Resolve(const fs::path& base, const std::string& text) {
  fs::path p(text);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ordered_json ClassifierToJson(const ClassifierSpec& spec) {
  const auto& hp = spec.hyperparams;
  return {{"kind", spec.name()},
          {"seed", spec.seed},
          {"hyperparams",
           {{"learning_rate", hp.learning_rate},
            {"epochs", hp.epochs},
            {"l2", hp.l2},
            {"trees", hp.trees},
            {"max_depth", hp.max_depth},
            {"bootstrap_fraction", hp.bootstrap_fraction},
            {"stumps", hp.stumps},
            {"shrinkage", hp.shrinkage}}}};
}

ClassifierSpec ClassifierFromJson(const ordered_json& item, std::uint64_t seed) {
  ClassifierSpec spec;
  spec.seed = seed;
  if (item.is_string()) {
    spec.kind = ParseClassifierKind(item.get<std::string>());
    return spec;
  }
  spec.kind = ParseClassifierKind(item.at("kind").get<std::string>());
  spec.seed = item.value("seed", seed);
  if (item.contains("hyperparams")) {
    const auto& h = item["hyperparams"];
    auto& hp = spec.hyperparams;
    hp.learning_rate = h.value("learning_rate", hp.learning_rate);
    hp.epochs = h.value("epochs", hp.epochs);
    hp.l2 = h.value("l2", hp.l2);
    hp.trees = h.value("trees", hp.trees);
    hp.max_depth = h.value("max_depth", hp.max_depth);
    hp.bootstrap_fraction = h.value("bootstrap_fraction", hp.bootstrap_fraction);
    hp.stumps = h.value("stumps", hp.stumps);
    hp.shrinkage = h.value("shrinkage", hp.shrinkage);
  }
  return spec;
}

EvalReport MeanReport(const std::vector<const SweepRow*>& rows) {
  EvalReport mean;
  mean.target = rows.front()->report.target;
  mean.classifier = std::string(kMeanClassifier);
  mean.class_names = rows.front()->report.class_names;
  mean.folds = rows.front()->report.folds;
  mean.stratified = true;
  for (const auto* row : rows) {
    const auto& r = row->report;
    mean.accuracy += r.accuracy;
    mean.macro_precision += r.macro_precision;
    mean.macro_recall += r.macro_recall;
    mean.macro_f1 += r.macro_f1;
    mean.stratified = mean.stratified && r.stratified;
    mean.degenerate = mean.degenerate || r.degenerate;
    mean.zero_division = mean.zero_division || r.zero_division;
  }
  const double n = static_cast<double>(rows.size());
  mean.accuracy /= n;
  mean.macro_precision /= n;
  mean.macro_recall /= n;
  mean.macro_f1 /= n;
  return mean;
}

bool RowLess(const SweepRow& a, const SweepRow& b) {
  return std::tie(a.k, a.regime, a.target, a.classifier) <
         std::tie(b.k, b.regime, b.target, b.classifier);
}

std::string Num(double v) { return csv::FormatNumber(v); }

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw ReportError("failed writing " + path.string());
}

}  // namespace

Dataset LoadDataSource(const DataSource& source) {
  Dataset dataset = [&] {
    if (source.schema) {
      Dataset loaded = LoadCsvFile(source.csv, Schema::Load(*source.schema),
                                   source.complete_only);
      return source.adult_preprocess ? AdultPreprocess(loaded) : loaded;
    }
    std::ifstream in(source.csv, std::ios::binary);
    if (!in) throw IoError("cannot open data file " + source.csv.string());
    std::string header;
    std::getline(in, header);
    if (header.find("fnlwgt") != std::string::npos) {
      return AdultPreprocess(LoadCsvFile(source.csv, AdultRawSchema(), source.complete_only));
    }
    return LoadCsvFile(source.csv, AdultSchema(), source.complete_only);
  }();
  if (source.rows > 0 && source.rows != dataset.size()) {
    return SampleRows(dataset, source.rows, source.sample_seed);
  }
  return dataset;
}

RegimeSpec RegimeSpec::Parse(std::string_view text, const fs::path& base_dir) {
  RegimeSpec spec;
  spec.label = std::string(text);
  if (text == "equal") {
    spec.kind = Kind::kEqual;
    return spec;
  }
  if (text.starts_with("bias:")) {
    spec.kind = Kind::kBias;
    spec.file = Resolve(base_dir, std::string(text.substr(5)));
    return spec;
  }
  if (text.starts_with("iml:policy:")) {
    spec.kind = Kind::kImlPolicy;
    const auto policy = text.substr(11);
    if (policy == "engine_pick") {
      spec.policy = OraclePolicy::kEnginePick;
    } else if (policy == "worst_pick") {
      spec.policy = OraclePolicy::kWorstPick;
    } else if (policy.starts_with("random(") && policy.ends_with(")")) {
      spec.policy = OraclePolicy::kRandom;
      const auto digits = policy.substr(7, policy.size() - 8);
      auto value = csv::ParseNumber(digits);
      if (!value || *value < 0 || *value != std::floor(*value)) {
        throw ConfigError("bad random policy seed in '" + spec.label + "'");
      }
      spec.policy_seed = static_cast<std::uint64_t>(*value);
    } else {
      throw ConfigError("unknown oracle policy in '" + spec.label + "'");
    }
    return spec;
  }
  if (text.starts_with("iml:")) {
    spec.kind = Kind::kImlLog;
    spec.file = Resolve(base_dir, std::string(text.substr(4)));
    return spec;
  }
  throw ConfigError("unknown weight regime '" + spec.label + "'");
}

SweepConfig SweepConfig::FromJson(std::string_view text, const fs::path& base_dir) {
  SweepConfig config;
  try {
    const auto doc = ordered_json::parse(text);
    const auto& data = doc.at("data");
    config.data.csv = Resolve(base_dir, data.at("csv").get<std::string>());
    if (data.contains("schema") && !data["schema"].is_null()) {
      config.data.schema = Resolve(base_dir, data["schema"].get<std::string>());
    }
    config.data.adult_preprocess = data.value("adult_preprocess", false);
    config.data.complete_only = data.value("complete_only", true);
    config.data.rows = data.value("rows", std::size_t{0});
    config.data.sample_seed = data.value("sample_seed", std::uint64_t{0});
    config.hierarchies = Resolve(base_dir, doc.at("hierarchies").get<std::string>());
    if (doc.contains("k_grid")) {
      config.k_grid = doc["k_grid"].get<std::vector<std::size_t>>();
    }
    config.seed = doc.value("seed", config.seed);
    config.folds = doc.value("folds", config.folds);
    config.pool_size = doc.value("pool_size", config.pool_size);
    for (const auto& r : doc.value("regimes", ordered_json::array({"equal"}))) {
      config.regimes.push_back(RegimeSpec::Parse(r.get<std::string>(), base_dir));
    }
    for (const auto& t : doc.value("targets", ordered_json::array({"income"}))) {
      config.targets.push_back(ParseTarget(t.get<std::string>()));
    }
    const auto classifiers = doc.value(
        "classifiers", ordered_json::array({"logistic_regression", "linear_svc",
                                            "random_forest", "gradient_boosting"}));
    for (const auto& c : classifiers) {
      config.classifiers.push_back(ClassifierFromJson(c, config.seed));
    }
    if (doc.contains("education_bins")) {
      config.education_bins.upper_edges = doc["education_bins"].get<std::vector<double>>();
    }
    if (doc.contains("iml_session")) {
      const auto& s = doc["iml_session"];
      config.iml.k = s.value("k", config.iml.k);
      config.iml.m = s.value("m", config.iml.m);
      config.iml.update.eta = s.value("eta", config.iml.update.eta);
      config.iml.update.floor = s.value("floor", config.iml.update.floor);
      config.iml.update.epsilon = s.value("epsilon", config.iml.update.epsilon);
    }
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  config.Validate();
  return config;
}

SweepConfig SweepConfig::Load(const fs::path& path) {
  return FromJson(ReadFile(path), path.parent_path());
}

std::string SweepConfig::ToJson() const {
  ordered_json doc;
  ordered_json d;
  d["csv"] = data.csv.string();
  d["schema"] = data.schema ? ordered_json(data.schema->string()) : ordered_json();
  d["adult_preprocess"] = data.adult_preprocess;
  d["complete_only"] = data.complete_only;
  d["rows"] = data.rows;
  d["sample_seed"] = data.sample_seed;
  doc["data"] = std::move(d);
  doc["hierarchies"] = hierarchies.string();
  doc["k_grid"] = k_grid;
  ordered_json regimes_json = ordered_json::array();
  for (const auto& r : regimes) regimes_json.push_back(r.label);
  doc["regimes"] = std::move(regimes_json);
  ordered_json targets_json = ordered_json::array();
  for (auto t : targets) targets_json.push_back(TargetName(t));
  doc["targets"] = std::move(targets_json);
  ordered_json classifiers_json = ordered_json::array();
  for (const auto& c : classifiers) classifiers_json.push_back(ClassifierToJson(c));
  doc["classifiers"] = std::move(classifiers_json);
  doc["folds"] = folds;
  doc["seed"] = seed;
  doc["education_bins"] = education_bins.upper_edges;
  doc["iml_session"] = {{"k", iml.k},
                        {"m", iml.m},
                        {"eta", iml.update.eta},
                        {"floor", iml.update.floor},
                        {"epsilon", iml.update.epsilon}};
  doc["pool_size"] = pool_size;
  return doc.dump(2);
}

void SweepConfig::Validate() const {
  if (k_grid.empty()) throw ConfigError("k_grid is empty");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] < 2) throw ConfigError("k values must be at least 2");
    if (i > 0 && k_grid[i] <= k_grid[i - 1]) {
      throw ConfigError("k values must be ascending and unique");
    }
  }
  if (regimes.empty()) throw ConfigError("no weight regimes");
  for (std::size_t i = 0; i < regimes.size(); ++i) {
    if (regimes[i].label == kOriginalRegime) {
      throw ConfigError("'original' is reserved for the k = 0 rows");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (regimes[i].label == regimes[j].label) {
        throw ConfigError("duplicate regime '" + regimes[i].label + "'");
      }
    }
  }
  if (targets.empty()) throw ConfigError("no targets");
  if (classifiers.empty()) throw ConfigError("no classifiers");
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (pool_size == 0) throw ConfigError("pool_size must be positive");
}

WeightVector RunScriptedSession(std::shared_ptr<const Dataset> dataset,
                                std::shared_ptr<const HierarchySet> hierarchies,
                                const ImlSessionConfig& config, OraclePolicy policy,
                                std::uint64_t policy_seed) {
  const auto qis = dataset->schema().QuasiIdentifierNames();
  auto session = Session::Create(dataset, hierarchies,
                                 SessionConfig{config.k, config.m, config.update},
                                 EqualWeights(qis), "scripted");
  Rng rng(policy_seed);
  while (session->phase() != SessionPhase::kComplete) {
    const auto proposal = session->Propose();
    std::size_t pick = proposal.engine_pick;
    switch (policy) {
      case OraclePolicy::kEnginePick: break;
      case OraclePolicy::kWorstPick: pick = proposal.candidates.size() - 1; break;
      case OraclePolicy::kRandom:
        pick = UniformIndex(rng, proposal.candidates.size());
        break;
    }
    session->Choose(proposal.candidates[pick].record);
  }
  return session->weights();
}

WeightVector ResolveRegimeWeights(const RegimeSpec& regime,
                                  std::shared_ptr<const Dataset> dataset,
                                  std::shared_ptr<const HierarchySet> hierarchies,
                                  const ImlSessionConfig& config) {
  switch (regime.kind) {
    case RegimeSpec::Kind::kEqual:
      return EqualWeights(dataset->schema().QuasiIdentifierNames());
    case RegimeSpec::Kind::kBias: {
      Sliders raw;
      try {
        const auto doc = ordered_json::parse(ReadFile(regime.file));
        for (auto it = doc.begin(); it != doc.end(); ++it) {
          raw.emplace_back(it.key(), it.value().get<double>());
        }
      } catch (const ordered_json::exception& e) {
        throw ConfigError("malformed slider file " + regime.file.string() + ": " + e.what());
      }
      return BiasWeights(raw).Reordered(dataset->schema().QuasiIdentifierNames());
    }
    case RegimeSpec::Kind::kImlLog: {
      std::ifstream in(regime.file);
      if (!in) throw IoError("cannot open action log " + regime.file.string());
      const auto log = ReadActionLog(in);
      const auto qis = dataset->schema().QuasiIdentifierNames();
      // The log may stop mid-session; its weights at that point are used.
      return Session::Restore(dataset, hierarchies,
                              SessionConfig{config.k, config.m, config.update},
                              EqualWeights(qis), log)
          ->weights();
    }
    case RegimeSpec::Kind::kImlPolicy:
      return RunScriptedSession(dataset, hierarchies, config, regime.policy,
                                regime.policy_seed);
  }
  throw ConfigError("unknown regime");
}

SweepResult RunSweep(const SweepConfig& config, const ProgressCallback& progress) {
  config.Validate();
  auto dataset = std::make_shared<const Dataset>(LoadDataSource(config.data));
  auto hierarchies = std::make_shared<const HierarchySet>(LoadHierarchyDir(config.hierarchies));
  const GilModel model(*dataset, *hierarchies);

  SweepResult result;
  for (const auto& regime : config.regimes) {
    result.regimes.push_back(regime.label);
    try {
      result.regime_weights.emplace(
          regime.label, ResolveRegimeWeights(regime, dataset, hierarchies, config.iml));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), "regime=" + regime.label);
    }
  }
  for (auto t : config.targets) result.targets.emplace_back(TargetName(t));

  // Job 0 evaluates the raw dataset; the rest are (k, regime) grid points.
  struct Job {
    std::size_t k = 0;
    const RegimeSpec* regime = nullptr;
  };
  std::vector<Job> jobs{{0, nullptr}};
  for (std::size_t k : config.k_grid) {
    for (const auto& regime : config.regimes) jobs.push_back({k, &regime});
  }

  std::mutex cache_mutex;
  std::map<std::pair<std::size_t, std::string>, std::shared_ptr<const AnonymizedDataset>> cache;
  auto anonymized = [&](std::size_t k, const RegimeSpec& regime) {
    const auto key = std::make_pair(k, regime.label);
    {
      std::lock_guard lock(cache_mutex);
      if (auto it = cache.find(key); it != cache.end()) {
        ++result.cache_hits;
        return it->second;
      }
    }
    auto value = std::make_shared<const AnonymizedDataset>(
        Sangreea(*dataset, k, *hierarchies, result.regime_weights.at(regime.label)));
    std::lock_guard lock(cache_mutex);
    ++result.anonymizations;
    cache.emplace(key, value);
    return value;
  };

  std::vector<std::vector<SweepRow>> slots(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::mutex progress_mutex;
  std::size_t finished = 0;

  auto run_job = [&](std::size_t index) {
    const Job& job = jobs[index];
    const std::string regime_label =
        job.regime ? job.regime->label : std::string(kOriginalRegime);
    try {
      double normalized = 0.0;
      if (job.regime) {
        const auto weights = result.regime_weights.at(job.regime->label);
        normalized = TotalGil(*anonymized(job.k, *job.regime), model, weights).normalized;
      }
      for (auto target : config.targets) {
        const LabeledTable table =
            job.regime ? MakeTarget(*anonymized(job.k, *job.regime), *dataset, target,
                                    config.education_bins)
                       : MakeTarget(*dataset, target, config.education_bins);
        for (const auto& spec : config.classifiers) {
          SweepRow row;
          row.k = job.k;
          row.regime = regime_label;
          row.target = std::string(TargetName(target));
          row.classifier = spec.name();
          row.report = CrossValidate(spec, table, config.folds, config.seed);
          row.normalized_gil = normalized;
          slots[index].push_back(std::move(row));
        }
      }
    } catch (const Error& e) {
      failures[index] = std::make_exception_ptr(
          Error(e.code(), e.what(),
                "k=" + std::to_string(job.k) + ", regime=" + regime_label +
                    (e.detail().empty() ? "" : "; " + e.detail())));
    } catch (...) {
      failures[index] = std::current_exception();
    }
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(static_cast<double>(++finished) / static_cast<double>(jobs.size()));
    }
  };

  const std::size_t workers = std::min(config.pool_size, jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(i);
      });
    }
    for (auto& t : threads) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  for (auto& slot : slots) {
    for (auto& row : slot) result.rows.push_back(std::move(row));
  }
  std::sort(result.rows.begin(), result.rows.end(), RowLess);

  // Mean over classifiers per (k, regime, target).
  for (std::size_t i = 0; i < result.rows.size();) {
    std::size_t j = i;
    std::vector<const SweepRow*> group;
    while (j < result.rows.size() && result.rows[j].k == result.rows[i].k &&
           result.rows[j].regime == result.rows[i].regime &&
           result.rows[j].target == result.rows[i].target) {
      group.push_back(&result.rows[j]);
      ++j;
    }
    SweepRow mean;
    mean.k = result.rows[i].k;
    mean.regime = result.rows[i].regime;
    mean.target = result.rows[i].target;
    mean.classifier = std::string(kMeanClassifier);
    mean.report = MeanReport(group);
    mean.normalized_gil = result.rows[i].normalized_gil;
    result.averages.push_back(std::move(mean));
    i = j;
  }
  return result;
}

std::string ResultsCsv(const SweepResult& result) {
  std::vector<const SweepRow*> all;
  for (const auto& r : result.rows) all.push_back(&r);
  for (const auto& r : result.averages) all.push_back(&r);
  std::stable_sort(all.begin(), all.end(),
                   [](const SweepRow* a, const SweepRow* b) { return RowLess(*a, *b); });
  std::ostringstream out;
  const std::vector<std::string> header = {
      "k", "regime", "target", "classifier", "accuracy", "macro_precision",
      "macro_recall", "macro_f1", "normalized_gil", "folds", "stratified", "degenerate"};
  csv::WriteRow(out, header);
  for (const auto* r : all) {
    const std::vector<std::string> cells = {
        std::to_string(r->k), r->regime, r->target, r->classifier,
        Num(r->report.accuracy), Num(r->report.macro_precision),
        Num(r->report.macro_recall), Num(r->report.macro_f1), Num(r->normalized_gil),
        std::to_string(r->report.folds), r->report.stratified ? "true" : "false",
        r->report.degenerate ? "true" : "false"};
    csv::WriteRow(out, cells);
  }
  return out.str();
}

void EmitReport(const SweepResult& result, const SweepConfig& config,
                const fs::path& out_dir) {
  if (result.rows.empty()) throw ReportError("sweep result is empty");
  std::error_code ec;
  fs::create_directories(out_dir / "plots", ec);
  if (ec) throw ReportError("cannot create " + (out_dir / "plots").string() + ": " + ec.message());

  WriteText(out_dir / "results.csv", ResultsCsv(result));

  for (const auto& target : result.targets) {
    const SweepRow* original = nullptr;
    for (const auto& r : result.averages) {
      if (r.k == 0 && r.target == target) original = &r;
    }
    auto point = [](const SweepRow& r) {
      return ordered_json{{"k", r.k},
                          {"accuracy", r.report.accuracy},
                          {"macro_precision", r.report.macro_precision},
                          {"macro_recall", r.report.macro_recall},
                          {"macro_f1", r.report.macro_f1},
                          {"normalized_gil", r.normalized_gil}};
    };
    ordered_json series = ordered_json::object();
    for (const auto& regime : result.regimes) {
      ordered_json points = ordered_json::array();
      if (original) points.push_back(point(*original));
      for (const auto& r : result.averages) {
        if (r.k != 0 && r.regime == regime && r.target == target) points.push_back(point(r));
      }
      series[regime] = std::move(points);
    }
    const ordered_json doc{{"target", target},
                           {"x", "k"},
                           {"metrics", {"accuracy", "macro_precision", "macro_recall",
                                        "macro_f1", "normalized_gil"}},
                           {"series", std::move(series)}};
    WriteText(out_dir / "plots" / (target + ".json"), doc.dump(2) + "\n");
  }

  ordered_json weights = ordered_json::object();
  for (const auto& label : result.regimes) {
    weights[label] = ordered_json::parse(result.regime_weights.at(label).ToJson());
  }
  ordered_json manifest;
  manifest["tool"] = "anonforge";
  manifest["version"] = kVersion;
  manifest["config"] = ordered_json::parse(config.ToJson());
  manifest["seeds"] = {{"cross_validation", config.seed},
                       {"sample", config.data.sample_seed}};
  manifest["grid"] = {{"k", config.k_grid},
                      {"regimes", result.regimes},
                      {"targets", result.targets},
                      {"anonymized_datasets", config.k_grid.size() * result.regimes.size()}};
  manifest["anonymizations"] = result.anonymizations;
  manifest["cache_hits"] = result.cache_hits;
  manifest["regime_weights"] = std::move(weights);
  manifest["rows"] = result.rows.size();
  manifest["average_rows"] = result.averages.size();
  WriteText(out_dir / "run-manifest.json", manifest.dump(2) + "\n");
}

double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw EvalError("rank correlation needs two equal-length series");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double average = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) rank[order[t]] = average;
      i = j + 1;
    }
    return rank;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace anonforge
