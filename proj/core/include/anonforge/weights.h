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
#ifndef ANONFORGE_WEIGHTS_H_
#define ANONFORGE_WEIGHTS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anonforge {

// Slider positions keyed by quasi-identifier name, in display order.
using Sliders = std::vector<std::pair<std::string, double>>;

// Per-quasi-identifier importance. Weights are nonnegative, at least one is
// positive, and they sum to the number of entries, so all-ones is the
// unweighted objective.
class WeightVector {
 public:
  WeightVector() = default;

  // Rescales arbitrary nonnegative values to the sum convention.
  // WeightError on negative or non-finite values, all zeros, duplicates.
  static WeightVector Normalize(std::vector<std::string> names,
                                std::vector<double> raw);
  static WeightVector Normalize(const Sliders& raw);

  // {"age": 1.2, "sex": 0.8, ...}; values pass through Normalize.
  static WeightVector FromJson(std::string_view json);
  std::string ToJson() const;

  std::span<const std::string> names() const { return names_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return names_.size(); }

  std::optional<double> Get(std::string_view name) const;
  // WeightError when absent.
  double Require(std::string_view name) const;

  // Checks the positivity and sum invariants (tolerance 1e-9).
  void Validate() const;

  // Same values permuted into the given name order, without renormalizing.
  // WeightError unless the names are exactly this vector's names.
  WeightVector Reordered(std::span<const std::string> names) const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

WeightVector EqualWeights(std::span<const std::string> quasi_identifiers);

// Slider values must lie in [0, 1] (RangeError) and not all be zero
// (WeightError).
WeightVector BiasWeights(const Sliders& sliders);

struct UpdateParams {
  double eta = 0.3;
  double epsilon = 1e-9;
  double floor = 0.01;

  void Validate() const;
};

// Rows are candidates, columns follow w.names(): the unweighted per-attribute
// GIL increase each candidate would cause.
using CostMatrix = std::vector<std::vector<double>>;

// Multiplicative update from one human choice. Each cost column is scaled by
// its maximum; attribute j is multiplied by exp(eta * (mean - chosen)) of the
// scaled column, floored, and the vector renormalized. Attributes that the
// chosen candidate keeps relatively specific gain weight.
WeightVector ImlUpdate(const WeightVector& w, const CostMatrix& costs,
                       std::size_t chosen, const UpdateParams& params);

}  // namespace anonforge

#endif  // ANONFORGE_WEIGHTS_H_
