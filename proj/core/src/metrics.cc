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
#include "anonforge/metrics.h"

#include "anonforge/error.h"

namespace anonforge {

MetricReport ComputeMetrics(std::span<const int> predicted,
                            std::span<const int> actual, int class_count) {
  if (predicted.size() != actual.size()) {
    throw EvalError("predicted and actual label counts differ");
  }
  if (actual.empty()) throw EvalError("no labels to score");
  const auto classes = static_cast<std::size_t>(class_count);
  MetricReport report;
  report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] < 0 || actual[i] >= class_count || predicted[i] < 0 ||
        predicted[i] >= class_count) {
      throw EvalError("label out of range");
    }
    ++report.confusion[static_cast<std::size_t>(actual[i])]
                      [static_cast<std::size_t>(predicted[i])];
  }

  std::size_t correct = 0;
  for (std::size_t c = 0; c < classes; ++c) correct += report.confusion[c][c];
  report.accuracy = static_cast<double>(correct) / static_cast<double>(actual.size());

  std::size_t present = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t predicted_c = 0;
    std::size_t actual_c = 0;
    for (std::size_t o = 0; o < classes; ++o) {
      predicted_c += report.confusion[o][c];
      actual_c += report.confusion[c][o];
    }
    const double tp = static_cast<double>(report.confusion[c][c]);
    ClassMetrics m;
    m.support = actual_c;
    if (predicted_c > 0) {
      m.precision = tp / static_cast<double>(predicted_c);
    } else {
      m.zero_division = true;
    }
    if (actual_c > 0) {
      m.recall = tp / static_cast<double>(actual_c);
    } else {
      m.zero_division = true;
    }
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    if (predicted_c > 0 || actual_c > 0) {
      ++present;
      report.macro_precision += m.precision;
      report.macro_recall += m.recall;
      report.macro_f1 += m.f1;
      report.zero_division = report.zero_division || m.zero_division;
    }
    report.per_class.push_back(m);
  }
  if (present > 0) {
    report.macro_precision /= static_cast<double>(present);
    report.macro_recall /= static_cast<double>(present);
    report.macro_f1 /= static_cast<double>(present);
  }
  return report;
}

}  // namespace anonforge
