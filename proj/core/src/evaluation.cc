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
#include "anonforge/evaluation.h"

#include <numeric>

#include "anonforge/error.h"
#include "anonforge/random.h"
#include "json.hpp"

namespace anonforge {
namespace {

void Accumulate(EvalReport& report, const MetricReport& m) {
  report.accuracy += m.accuracy;
  report.macro_precision += m.macro_precision;
  report.macro_recall += m.macro_recall;
  report.macro_f1 += m.macro_f1;
  report.zero_division = report.zero_division || m.zero_division;
  if (report.per_class.empty()) report.per_class.resize(m.per_class.size());
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    auto& acc = report.per_class[c];
    acc.precision += m.per_class[c].precision;
    acc.recall += m.per_class[c].recall;
    acc.f1 += m.per_class[c].f1;
    acc.support += m.per_class[c].support;
    acc.zero_division = acc.zero_division || m.per_class[c].zero_division;
  }
}

void Average(EvalReport& report, std::size_t folds) {
  const double n = static_cast<double>(folds);
  report.accuracy /= n;
  report.macro_precision /= n;
  report.macro_recall /= n;
  report.macro_f1 /= n;
  for (auto& c : report.per_class) {
    c.precision /= n;
    c.recall /= n;
    c.f1 /= n;
  }
}

EvalReport NewReport(const ClassifierSpec& spec, const LabeledTable& table) {
  EvalReport report;
  report.target = std::string(TargetName(table.target));
  report.classifier = spec.name();
  report.class_names = table.class_names;
  return report;
}

}  // namespace

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json doc;
  doc["target"] = target;
  doc["classifier"] = classifier;
  doc["folds"] = folds;
  doc["stratified"] = stratified;
  doc["degenerate"] = degenerate;
  doc["zero_division"] = zero_division;
  doc["accuracy"] = accuracy;
  doc["macro_precision"] = macro_precision;
  doc["macro_recall"] = macro_recall;
  doc["macro_f1"] = macro_f1;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    classes.push_back({{"class", c < class_names.size() ? class_names[c] : ""},
                       {"precision", per_class[c].precision},
                       {"recall", per_class[c].recall},
                       {"f1", per_class[c].f1},
                       {"support", per_class[c].support},
                       {"zero_division", per_class[c].zero_division}});
  }
  doc["per_class"] = std::move(classes);
  return doc.dump(2);
}

FoldAssignment AssignFolds(std::span<const int> labels, int class_count,
                           std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw EvalError("need at least two folds");
  if (folds > labels.size()) throw EvalError("more folds than rows");
  FoldAssignment out;
  out.fold_of.assign(labels.size(), 0);
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(class_count));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  for (const auto& members : by_class) {
    if (!members.empty() && members.size() < folds) out.stratified = false;
  }
  Rng rng(seed);
  if (!out.stratified) {
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    Shuffle(rng, std::span<std::size_t>(order));
    for (std::size_t i = 0; i < order.size(); ++i) out.fold_of[order[i]] = i % folds;
    return out;
  }
  // Continue the round-robin across classes so fold sizes stay balanced.
  std::size_t next = 0;
  for (auto& members : by_class) {
    Shuffle(rng, std::span<std::size_t>(members));
    for (std::size_t r : members) out.fold_of[r] = next++ % folds;
  }
  return out;
}

EvalReport CrossValidate(const ClassifierSpec& spec, const LabeledTable& table,
                         std::size_t folds, std::uint64_t seed) {
  if (table.rows() == 0) throw EvalError("empty dataset");
  const auto assignment = AssignFolds(table.labels, table.class_count(), folds, seed);
  EvalReport report = NewReport(spec, table);
  report.folds = folds;
  report.stratified = assignment.stratified;
  for (std::size_t fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      (assignment.fold_of[r] == fold ? test_rows : train_rows).push_back(r);
    }
    Encoder encoder;
    encoder.Fit(table, train_rows);
    const Matrix train = encoder.Transform(table, train_rows);
    const Matrix test = encoder.Transform(table, test_rows);
    std::vector<int> train_labels;
    std::vector<int> test_labels;
    for (std::size_t r : train_rows) train_labels.push_back(table.labels[r]);
    for (std::size_t r : test_rows) test_labels.push_back(table.labels[r]);
    ClassifierSpec fold_spec = spec;
    fold_spec.seed = spec.seed + fold;
    const auto predictions =
        TrainPredict(fold_spec, train, train_labels, table.class_count(), test);
    report.degenerate = report.degenerate || predictions.degenerate;
    Accumulate(report, ComputeMetrics(predictions.labels, test_labels, table.class_count()));
  }
  Average(report, folds);
  return report;
}

EvalReport TrainingSetEvaluate(const ClassifierSpec& spec, const LabeledTable& table) {
  if (table.rows() == 0) throw EvalError("empty dataset");
  std::vector<std::size_t> rows(table.rows());
  std::iota(rows.begin(), rows.end(), 0);
  Encoder encoder;
  encoder.Fit(table, rows);
  const Matrix x = encoder.Transform(table, rows);
  const auto predictions = TrainPredict(spec, x, table.labels, table.class_count(), x);
  EvalReport report = NewReport(spec, table);
  report.folds = 1;
  report.degenerate = predictions.degenerate;
  Accumulate(report, ComputeMetrics(predictions.labels, table.labels, table.class_count()));
  return report;
}

}  // namespace anonforge
