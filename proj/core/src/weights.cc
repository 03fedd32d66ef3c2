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
#include "anonforge/weights.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "anonforge/error.h"
#include "json.hpp"

namespace anonforge {

WeightVector WeightVector::Normalize(std::vector<std::string> names,
                                     std::vector<double> raw) {
  if (names.empty()) throw WeightError("weight vector needs at least one entry");
  if (names.size() != raw.size()) throw WeightError("names and weights differ in length");
  std::set<std::string_view> seen;
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!seen.insert(names[i]).second) {
      throw WeightError("duplicate weight for '" + names[i] + "'");
    }
    if (!std::isfinite(raw[i]) || raw[i] < 0.0) {
      throw WeightError("weight for '" + names[i] + "' must be finite and >= 0");
    }
    sum += raw[i];
  }
  if (!(sum > 0.0)) throw WeightError("at least one weight must be positive");
  if (std::all_of(raw.begin(), raw.end(), [&](double v) { return v == raw.front(); })) {
    std::fill(raw.begin(), raw.end(), 1.0);  // exact, free of rounding in the sum
  } else {
    const double scale = static_cast<double>(raw.size()) / sum;
    for (double& v : raw) v *= scale;
  }
  WeightVector w;
  w.names_ = std::move(names);
  w.values_ = std::move(raw);
  return w;
}

WeightVector WeightVector::Normalize(const Sliders& raw) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto& [name, value] : raw) {
    names.push_back(name);
    values.push_back(value);
  }
  return Normalize(std::move(names), std::move(values));
}

WeightVector WeightVector::FromJson(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw WeightError(std::string("weights are not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw WeightError("weights must be a JSON object");
  Sliders raw;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_number()) {
      throw WeightError("weight for '" + it.key() + "' is not a number");
    }
    raw.emplace_back(it.key(), it.value().get<double>());
  }
  return Normalize(raw);
}

std::string WeightVector::ToJson() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < names_.size(); ++i) doc[names_[i]] = values_[i];
  return doc.dump();
}

std::optional<double> WeightVector::Get(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return values_[i];
  }
  return std::nullopt;
}

double WeightVector::Require(std::string_view name) const {
  auto value = Get(name);
  if (!value) {
    throw WeightError("weight vector has no entry for '" + std::string(name) + "'");
  }
  return *value;
}

WeightVector WeightVector::Reordered(std::span<const std::string> names) const {
  if (names.size() != names_.size()) {
    throw WeightError("weights must cover exactly the quasi-identifiers");
  }
  WeightVector out;
  for (const auto& name : names) {
    out.names_.push_back(name);
    out.values_.push_back(Require(name));
  }
  return out;
}

void WeightVector::Validate() const {
  if (names_.empty()) throw WeightError("empty weight vector");
  double sum = 0.0;
  bool positive = false;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw WeightError("negative weight");
    positive = positive || v > 0.0;
    sum += v;
  }
  const double n = static_cast<double>(values_.size());
  if (!positive) throw WeightError("no positive weight");
  if (std::abs(sum - n) > 1e-9 * n) {
    throw WeightError("weights do not sum to the attribute count");
  }
}

WeightVector EqualWeights(std::span<const std::string> quasi_identifiers) {
  if (quasi_identifiers.empty()) {
    throw WeightError("equal weights need at least one quasi-identifier");
  }
  return WeightVector::Normalize(
      std::vector<std::string>(quasi_identifiers.begin(), quasi_identifiers.end()),
      std::vector<double>(quasi_identifiers.size(), 1.0));
}

WeightVector BiasWeights(const Sliders& sliders) {
  for (const auto& [name, value] : sliders) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw RangeError("slider for '" + name + "' must lie in [0, 1]");
    }
  }
  return WeightVector::Normalize(sliders);
}

void UpdateParams::Validate() const {
  if (!(eta > 0.0)) throw UpdateError("eta must be positive");
  if (!(epsilon > 0.0)) throw UpdateError("epsilon must be positive");
  if (!(floor >= 0.0)) throw UpdateError("floor must be nonnegative");
}

WeightVector ImlUpdate(const WeightVector& w, const CostMatrix& costs,
                       std::size_t chosen, const UpdateParams& params) {
  params.Validate();
  if (costs.size() < 2) {
    throw UpdateError("a weight update needs at least two candidates");
  }
  if (chosen >= costs.size()) throw UpdateError("chosen row is out of range");
  const std::size_t attributes = w.size();
  for (const auto& row : costs) {
    if (row.size() != attributes) {
      throw UpdateError("cost matrix width differs from the weight vector");
    }
    for (double c : row) {
      if (!std::isfinite(c) || c < 0.0) {
        throw UpdateError("costs must be finite and nonnegative");
      }
    }
  }

  const double candidates = static_cast<double>(costs.size());
  std::vector<double> raw(w.values().begin(), w.values().end());
  for (std::size_t j = 0; j < attributes; ++j) {
    double max = 0.0;
    double sum = 0.0;
    for (const auto& row : costs) {
      max = std::max(max, row[j]);
      sum += row[j];
    }
    // epsilon only guards the all-zero column; above it the scaling is exact.
    const double scale = std::max(max, params.epsilon);
    const double mean = sum / scale / candidates;
    const double mine = costs[chosen][j] / scale;
    // The floor limits decay; it never lifts a weight that started below it.
    raw[j] = std::max(raw[j] * std::exp(params.eta * (mean - mine)),
                      std::min(raw[j], params.floor));
  }
  return WeightVector::Normalize(
      std::vector<std::string>(w.names().begin(), w.names().end()), std::move(raw));
}

}  // namespace anonforge
