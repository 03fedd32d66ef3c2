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
// anonforge: command line front end.
//
//   anonforge anonymize --data adult.csv --trees hierarchies --k 10 --out out.csv
//   anonforge sweep --config sweep.json --out results/
//   anonforge eval --data adult.csv --target income --classifier random_forest
//   anonforge serve --port 8080 --workdir work/
//   anonforge hierarchy validate --trees hierarchies [--data adult.csv]
//   anonforge session replay --log work/sessions/<id>/log.jsonl --out export.csv
//
// Every subcommand exits nonzero on failure and prints the error code to
// stderr. serve reads ANONFORGE_PORT, ANONFORGE_WORKDIR, ANONFORGE_POOL_SIZE,
// ANONFORGE_ADDRESS and ANONFORGE_THREADS when the flags are absent.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "anonforge/classifiers.h"
#include "anonforge/dataset.h"
#include "anonforge/error.h"
#include "anonforge/evaluation.h"
#include "anonforge/features.h"
#include "anonforge/hierarchy.h"
#include "anonforge/pipeline.h"
#include "anonforge/sangreea.h"
#include "anonforge/service/server.h"
#include "anonforge/service/workspace.h"
#include "anonforge/session.h"

namespace {

namespace fs = std::filesystem;
using namespace anonforge;

struct DataFlags {
  std::string csv;
  std::string schema;
  bool adult_preprocess = false;
  bool keep_incomplete = false;
  std::size_t rows = 0;
  std::uint64_t sample_seed = 0;

  void Add(CLI::App* app, bool required = true) {
    auto* data = app->add_option("--data", csv, "input CSV")->check(CLI::ExistingFile);
    if (required) data->required();
    app->add_option("--schema", schema,
                    "schema JSON (default: Adult layout, raw or preprocessed)")
        ->check(CLI::ExistingFile);
    app->add_flag("--adult-preprocess", adult_preprocess,
                  "apply the Adult preprocessing after loading with --schema");
    app->add_flag("--keep-incomplete", keep_incomplete, "keep rows with missing cells");
    app->add_option("--rows", rows, "use only this many rows (0 = all)");
    app->add_option("--sample-seed", sample_seed, "0 takes the first rows, else samples");
  }

  DataSource Source() const {
    DataSource source;
    source.csv = csv;
    if (!schema.empty()) source.schema = fs::path(schema);
    source.adult_preprocess = adult_preprocess;
    source.complete_only = !keep_incomplete;
    source.rows = rows;
    source.sample_seed = sample_seed;
    return source;
  }
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

struct SessionInputs {
  std::shared_ptr<const Dataset> dataset;
  std::shared_ptr<const HierarchySet> hierarchies;
  SessionConfig config;
  WeightVector initial;
};

// Inputs recorded by the server: <workdir>/sessions/<id>/session.json.
SessionInputs LoadServerSession(const fs::path& manifest_path) {
  const auto manifest = service::SessionManifest::FromJson(ReadFile(manifest_path));
  const fs::path workdir = manifest_path.parent_path() / ".." / "..";
  const fs::path data_dir = workdir / "datasets" / manifest.dataset;
  SessionInputs inputs;
  inputs.dataset = std::make_shared<const Dataset>(
      LoadCsvFile(data_dir / "data.csv", Schema::Load(data_dir / "schema.json"), false));
  inputs.hierarchies = std::make_shared<const HierarchySet>(
      LoadHierarchyDir(workdir / "hierarchies" / manifest.hierarchies));
  inputs.config = manifest.config;
  inputs.initial = manifest.initial_weights;
  return inputs;
}

std::vector<Action> LoadLog(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadActionLog(in);
}

// "equal", "session:<log.jsonl>" (current weights of a server session, read
// through the session.json beside the log) or a JSON weight map.
WeightVector LoadWeights(const std::string& spec, const Dataset& dataset) {
  if (spec.empty() || spec == "equal") {
    return EqualWeights(dataset.schema().QuasiIdentifierNames());
  }
  if (spec.starts_with("session:")) {
    const fs::path log = spec.substr(8);
    const SessionInputs inputs = LoadServerSession(log.parent_path() / "session.json");
    return Session::Restore(inputs.dataset, inputs.hierarchies, inputs.config, inputs.initial,
                            LoadLog(log))
        ->weights();
  }
  return WeightVector::FromJson(ReadFile(spec));
}

HierarchySet LoadTrees(const fs::path& path) {
  if (fs::is_directory(path)) return LoadHierarchyDir(path);
  HierarchySet set;
  auto tree = Hierarchy::Load(path);
  const std::string name = tree.attribute();
  set.emplace(name, std::move(tree));
  return set;
}

int Anonymize(const DataFlags& data, const std::string& trees, std::size_t k,
              const std::string& weights, const std::string& out) {
  const Dataset dataset = LoadDataSource(data.Source());
  const HierarchySet hierarchies = LoadTrees(trees);
  const auto w = LoadWeights(weights, dataset);
  const AnonymizedDataset result = Sangreea(dataset, k, hierarchies, w);
  WriteOutput(out, Export(result));
  const GilTotals totals = TotalGil(result, dataset, hierarchies, w);
  std::cerr << "records=" << result.size() << " classes=" << result.clusters().size()
            << " gil=" << totals.unweighted << " weighted_gil=" << totals.weighted
            << " normalized_gil=" << totals.normalized << '\n';
  return 0;
}

int Sweep(const std::string& config_path, const std::string& out, std::size_t pool_size) {
  SweepConfig config = SweepConfig::Load(config_path);
  if (pool_size > 0) config.pool_size = pool_size;
  const SweepResult result = RunSweep(config);
  EmitReport(result, config, out);
  std::cerr << "wrote " << result.rows.size() << " rows to " << out << " ("
            << result.anonymizations << " anonymizations, " << result.cache_hits
            << " cache hits)\n";
  return 0;
}

int Eval(const DataFlags& data, const std::string& target, const std::string& classifier,
         std::size_t folds, std::uint64_t seed, bool training_set, const std::string& out) {
  const Dataset dataset = LoadDataSource(data.Source());
  const LabeledTable table = MakeTarget(dataset, ParseTarget(target), EducationBins{});
  ClassifierSpec spec;
  spec.kind = ParseClassifierKind(classifier);
  spec.seed = seed;
  const EvalReport report = training_set ? TrainingSetEvaluate(spec, table)
                                         : CrossValidate(spec, table, folds, seed);
  WriteOutput(out, report.ToJson() + "\n");
  return 0;
}

int Serve(service::ServerOptions options) {
  options.handle_signals = true;
  service::Server server(options);
  const unsigned short port = server.Start();
  std::cerr << "anonforge " << kVersion << " listening on " << options.address << ':' << port
            << " (workdir " << options.workdir.string() << ")\n";
  server.Wait();
  return 0;
}

struct ValidateFlags {
  std::string trees;
  std::string tree;
  std::string attribute;
  DataFlags data;
};

// Lists dataset values that are not leaves of their tree; exits 1 if any.
int ValidateTrees(const ValidateFlags& flags) {
  HierarchySet hierarchies;
  if (!flags.trees.empty()) hierarchies = LoadTrees(flags.trees);
  if (!flags.tree.empty()) {
    auto tree = Hierarchy::Load(flags.tree, flags.attribute);
    const std::string name = tree.attribute();
    hierarchies.insert_or_assign(name, std::move(tree));
  }
  if (hierarchies.empty()) throw ConfigError("pass --trees or --tree");
  for (const auto& [name, tree] : hierarchies) {
    std::cout << name << ": height " << tree.height() << ", " << tree.leaf_count()
              << " leaves\n";
  }
  if (flags.data.csv.empty()) return 0;
  const Dataset dataset = LoadDataSource(flags.data.Source());
  std::size_t violations = 0;
  for (const auto& [name, tree] : hierarchies) {
    if (!dataset.schema().IndexOf(name)) {
      if (!flags.tree.empty()) throw SchemaError("no column '" + name + "' in the dataset");
      continue;
    }
    for (const auto& value : ValidateAgainst(tree, dataset, name)) {
      std::cout << name << ": not a leaf: " << value << '\n';
      ++violations;
    }
  }
  if (violations > 0) {
    throw HierarchyError(std::to_string(violations) + " value(s) are not hierarchy leaves");
  }
  std::cout << "ok: " << dataset.size() << " records covered\n";
  return 0;
}

struct ReplayFlags {
  std::string log;
  std::string manifest;
  DataFlags data;
  std::string trees;
  std::size_t k = 0;
  std::size_t m = 3;
  std::string weights = "equal";
  double eta = UpdateParams{}.eta;
  double floor = UpdateParams{}.floor;
  std::string out;
};

int Replay(const ReplayFlags& flags) {
  const auto actions = LoadLog(flags.log);
  SessionInputs inputs;
  if (!flags.data.csv.empty()) {
    if (flags.trees.empty() || flags.k == 0) {
      throw ConfigError("replay from inputs needs --trees and --k");
    }
    inputs.dataset = std::make_shared<const Dataset>(LoadDataSource(flags.data.Source()));
    inputs.hierarchies = std::make_shared<const HierarchySet>(LoadTrees(flags.trees));
    inputs.config.k = flags.k;
    inputs.config.m = flags.m;
    inputs.config.update.eta = flags.eta;
    inputs.config.update.floor = flags.floor;
    inputs.initial = LoadWeights(flags.weights, *inputs.dataset);
  } else {
    inputs = LoadServerSession(flags.manifest.empty()
                                   ? fs::path(flags.log).parent_path() / "session.json"
                                   : fs::path(flags.manifest));
  }
  const AnonymizedDataset result = Session::Replay(inputs.dataset, inputs.hierarchies,
                                                   inputs.config, inputs.initial, actions);
  WriteOutput(flags.out, Export(result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonforge: interactive weighted k-anonymity"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  DataFlags anon_data;
  std::string anon_trees, anon_weights = "equal", anon_out;
  std::size_t anon_k = 0;
  auto* anonymize = app.add_subcommand("anonymize", "k-anonymize a CSV");
  anon_data.Add(anonymize);
  anonymize->add_option("--trees", anon_trees, "hierarchy directory")->required();
  anonymize->add_option("--k", anon_k, "minimum equivalence class size")->required();
  anonymize->add_option("--weights", anon_weights,
                        "\"equal\", a JSON weight map, or session:<log.jsonl>");
  anonymize->add_option("--out", anon_out, "output CSV (default stdout)");

  std::string sweep_config, sweep_out;
  std::size_t sweep_pool = 0;
  auto* sweep = app.add_subcommand("sweep", "run a k x weight-regime evaluation grid");
  sweep->add_option("--config", sweep_config, "sweep config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "report directory")->required();
  sweep->add_option("--pool-size", sweep_pool, "worker threads (overrides the config)");

  DataFlags eval_data;
  std::string eval_target = "income", eval_classifier = "logistic_regression", eval_out;
  std::size_t eval_folds = 5;
  std::uint64_t eval_seed = 7;
  bool eval_training = false;
  auto* eval = app.add_subcommand("eval", "cross-validate one classifier on a dataset");
  eval_data.Add(eval);
  eval->add_option("--target", eval_target, "income | education | marital_status");
  eval->add_option("--classifier,--model", eval_classifier,
                   "logistic_regression | linear_svc | random_forest | gradient_boosting");
  eval->add_option("--folds", eval_folds);
  eval->add_option("--seed", eval_seed);
  eval->add_flag("--training-set", eval_training, "train and score on the full dataset");
  eval->add_option("--out", eval_out, "report JSON (default stdout)");

  service::ServerOptions serve_options;
  std::string serve_workdir = serve_options.workdir.string();
  auto* serve = app.add_subcommand("serve", "run the REST and stream server");
  serve->add_option("--port", serve_options.port)->envname("ANONFORGE_PORT");
  serve->add_option("--address", serve_options.address)->envname("ANONFORGE_ADDRESS");
  serve->add_option("--workdir", serve_workdir)->envname("ANONFORGE_WORKDIR");
  serve->add_option("--pool-size", serve_options.pool_size, "sweep workers")
      ->envname("ANONFORGE_POOL_SIZE")
      ->check(CLI::PositiveNumber);
  serve->add_option("--threads", serve_options.io_threads, "connection threads")
      ->envname("ANONFORGE_THREADS")
      ->check(CLI::PositiveNumber);

  ValidateFlags validate_flags;
  auto* hierarchy = app.add_subcommand("hierarchy", "hierarchy utilities");
  hierarchy->require_subcommand(1);
  auto* validate = hierarchy->add_subcommand("validate", "parse trees, optionally check coverage");
  validate->add_option("--trees", validate_flags.trees, "hierarchy directory or file");
  validate->add_option("--tree", validate_flags.tree, "single hierarchy file")
      ->check(CLI::ExistingFile);
  validate->add_option("--attribute", validate_flags.attribute,
                       "attribute of --tree (default: file stem)");
  validate_flags.data.Add(validate, false);

  ReplayFlags replay_flags;
  auto* session = app.add_subcommand("session", "session utilities");
  session->require_subcommand(1);
  auto* replay = session->add_subcommand("replay", "re-run an action log and export");
  replay->add_option("--log", replay_flags.log, "action log (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--session", replay_flags.manifest,
                     "session.json written by the server (default: next to the log)");
  replay_flags.data.Add(replay, false);
  replay->add_option("--trees", replay_flags.trees);
  replay->add_option("--k", replay_flags.k);
  replay->add_option("--m", replay_flags.m);
  replay->add_option("--weights", replay_flags.weights);
  replay->add_option("--eta", replay_flags.eta);
  replay->add_option("--floor", replay_flags.floor);
  replay->add_option("--out", replay_flags.out, "export CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anonymize) return Anonymize(anon_data, anon_trees, anon_k, anon_weights, anon_out);
    if (*sweep) return Sweep(sweep_config, sweep_out, sweep_pool);
    if (*eval) {
      return Eval(eval_data, eval_target, eval_classifier, eval_folds, eval_seed,
                  eval_training, eval_out);
    }
    if (*serve) {
      serve_options.workdir = serve_workdir;
      return Serve(serve_options);
    }
    if (*validate) return ValidateTrees(validate_flags);
    if (*replay) return Replay(replay_flags);
  } catch (const Error& e) {
    std::cerr << "error: " << e.code_name() << ": " << e.what();
    if (!e.detail().empty()) std::cerr << " [" << e.detail() << "]";
    std::cerr << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal_error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
