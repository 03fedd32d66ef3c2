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
#ifndef ANONFORGE_METRICS_H_
#define ANONFORGE_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace anonforge {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  // A zero denominator was replaced by 0.
  bool zero_division = false;
};

struct MetricReport {
  double accuracy = 0.0;
  // Unweighted means over the classes that occur in actual or predicted.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  std::vector<std::vector<std::size_t>> confusion;  // [actual][predicted]
  bool zero_division = false;
};

// EvalError when lengths differ or a label falls outside [0, class_count).
MetricReport ComputeMetrics(std::span<const int> predicted,
                            std::span<const int> actual, int class_count);

}  // namespace anonforge

#endif  // ANONFORGE_METRICS_H_
