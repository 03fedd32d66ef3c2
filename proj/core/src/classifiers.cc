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
#include "anonforge/classifiers.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anonforge/error.h"
#include "anonforge/random.h"

namespace anonforge {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  explicit Standardizer(const Matrix& x) : mean(x.cols, 0.0), scale(x.cols, 1.0) {
    const double n = static_cast<double>(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) {
      for (std::size_t c = 0; c < x.cols; ++c) mean[c] += x.at(r, c);
    }
    for (double& m : mean) m /= n;
    std::vector<double> var(x.cols, 0.0);
    for (std::size_t r = 0; r < x.rows; ++r) {
      for (std::size_t c = 0; c < x.cols; ++c) {
        const double d = x.at(r, c) - mean[c];
        var[c] += d * d;
      }
    }
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double sd = std::sqrt(var[c] / n);
      scale[c] = sd > 1e-12 ? sd : 1.0;
    }
  }

  Matrix Apply(const Matrix& x) const {
    Matrix out = x;
    for (std::size_t r = 0; r < x.rows; ++r) {
      for (std::size_t c = 0; c < x.cols; ++c) {
        out.at(r, c) = (x.at(r, c) - mean[c]) / scale[c];
      }
    }
    return out;
  }
};

struct LinearModel {
  std::vector<double> w;
  double b = 0.0;

  double Score(std::span<const double> x) const {
    double s = b;
    for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * x[c];
    return s;
  }
};

// Binary targets y in {0, 1}. Full-batch gradient descent, L2 on weights only.
LinearModel FitLinear(const Matrix& x, const std::vector<int>& y, bool hinge,
                      const Hyperparams& hp) {
  LinearModel m;
  m.w.assign(x.cols, 0.0);
  const double n = static_cast<double>(x.rows);
  std::vector<double> grad(x.cols);
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
      const auto row = x.row(r);
      const double score = m.Score(row);
      double g;
      if (hinge) {
        const double sign = y[r] == 1 ? 1.0 : -1.0;
        g = sign * score < 1.0 ? -sign : 0.0;
      } else {
        g = Sigmoid(score) - static_cast<double>(y[r]);
      }
      if (g == 0.0) continue;
      for (std::size_t c = 0; c < x.cols; ++c) grad[c] += g * row[c];
      grad_b += g;
    }
    for (std::size_t c = 0; c < x.cols; ++c) {
      m.w[c] -= hp.learning_rate * (grad[c] / n + hp.l2 * m.w[c]);
    }
    m.b -= hp.learning_rate * grad_b / n;
  }
  return m;
}

std::vector<int> OneVsRestLinear(const Matrix& train, std::span<const int> labels,
                                 int classes, const Matrix& test, bool hinge,
                                 const Hyperparams& hp) {
  const Standardizer standardizer(train);
  const Matrix xs = standardizer.Apply(train);
  const Matrix ts = standardizer.Apply(test);
  std::vector<int> present;
  for (int c = 0; c < classes; ++c) {
    if (std::find(labels.begin(), labels.end(), c) != labels.end()) present.push_back(c);
  }
  std::vector<int> out(test.rows);
  if (present.size() == 2) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = labels[i] == present[1];
    const auto model = FitLinear(xs, y, hinge, hp);
    for (std::size_t r = 0; r < ts.rows; ++r) {
      out[r] = model.Score(ts.row(r)) > 0.0 ? present[1] : present[0];
    }
    return out;
  }
  std::vector<LinearModel> models;
  for (int c : present) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = labels[i] == c;
    models.push_back(FitLinear(xs, y, hinge, hp));
  }
  for (std::size_t r = 0; r < ts.rows; ++r) {
    double best = -INFINITY;
    for (std::size_t i = 0; i < models.size(); ++i) {
      const double s = models[i].Score(ts.row(r));
      if (s > best) {
        best = s;
        out[r] = present[i];
      }
    }
  }
  return out;
}

// CART classification tree, Gini impurity, random feature subset per node.
class DecisionTree {
 public:
  DecisionTree(const Matrix& x, std::span<const int> labels, int classes,
               std::vector<std::size_t> sample, int max_depth,
               std::size_t features_per_split, Rng& rng)
      : x_(&x), labels_(labels), classes_(classes), max_depth_(max_depth),
        features_per_split_(features_per_split), rng_(&rng) {
    Build(sample, 0);
  }

  int Predict(std::span<const double> row) const {
    std::size_t i = 0;
    while (nodes_[i].feature >= 0) {
      i = row[static_cast<std::size_t>(nodes_[i].feature)] <= nodes_[i].threshold
              ? nodes_[i].left
              : nodes_[i].right;
    }
    return nodes_[i].label;
  }

 private:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    int label = 0;
  };

  static double Gini(const std::vector<double>& counts, double total) {
    if (total <= 0) return 0.0;
    double sum = 0.0;
    for (double c : counts) sum += c * c;
    return 1.0 - sum / (total * total);
  }

  std::size_t Build(std::vector<std::size_t>& sample, int depth) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();
    std::vector<double> counts(static_cast<std::size_t>(classes_), 0.0);
    for (std::size_t r : sample) counts[static_cast<std::size_t>(labels_[r])] += 1.0;
    nodes_[index].label = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    const double total = static_cast<double>(sample.size());
    const double parent = Gini(counts, total);
    if (depth >= max_depth_ || sample.size() < 2 || parent <= 0.0) return index;

    std::vector<std::size_t> features(x_->cols);
    std::iota(features.begin(), features.end(), 0);
    Shuffle(*rng_, std::span<std::size_t>(features));
    features.resize(std::min(features_per_split_, features.size()));

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = parent - 1e-12;
    std::vector<std::size_t> order = sample;
    std::vector<double> left(counts.size());
    for (std::size_t f : features) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_->at(a, f);
        const double vb = x_->at(b, f);
        return va < vb || (va == vb && a < b);
      });
      std::fill(left.begin(), left.end(), 0.0);
      std::vector<double> right = counts;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto cls = static_cast<std::size_t>(labels_[order[i]]);
        left[cls] += 1.0;
        right[cls] -= 1.0;
        const double v = x_->at(order[i], f);
        const double next = x_->at(order[i + 1], f);
        if (v == next) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = total - nl;
        const double score = (nl * Gini(left, nl) + nr * Gini(right, nr)) / total;
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = (v + next) / 2.0;
        }
      }
    }
    if (best_feature < 0) return index;

    std::vector<std::size_t> lo;
    std::vector<std::size_t> hi;
    for (std::size_t r : sample) {
      (x_->at(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? lo : hi)
          .push_back(r);
    }
    sample.clear();
    sample.shrink_to_fit();
    nodes_[index].feature = best_feature;
    nodes_[index].threshold = best_threshold;
    const std::size_t l = Build(lo, depth + 1);
    const std::size_t h = Build(hi, depth + 1);
    nodes_[index].left = l;
    nodes_[index].right = h;
    return index;
  }

  const Matrix* x_;
  std::span<const int> labels_;
  int classes_;
  int max_depth_;
  std::size_t features_per_split_;
  Rng* rng_;
  std::vector<Node> nodes_;
};

std::vector<int> RandomForest(const Matrix& train, std::span<const int> labels,
                              int classes, const Matrix& test, const Hyperparams& hp,
                              std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = train.rows;
  const auto draws = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(hp.bootstrap_fraction * static_cast<double>(n))));
  const auto per_split = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::sqrt(static_cast<double>(train.cols))));
  std::vector<std::vector<int>> votes(test.rows,
                                      std::vector<int>(static_cast<std::size_t>(classes), 0));
  for (int t = 0; t < hp.trees; ++t) {
    std::vector<std::size_t> sample(draws);
    for (auto& s : sample) s = UniformIndex(rng, n);
    const DecisionTree tree(train, labels, classes, std::move(sample), hp.max_depth,
                            per_split, rng);
    for (std::size_t r = 0; r < test.rows; ++r) {
      ++votes[r][static_cast<std::size_t>(tree.Predict(test.row(r)))];
    }
  }
  std::vector<int> out(test.rows);
  for (std::size_t r = 0; r < test.rows; ++r) {
    out[r] = static_cast<int>(std::max_element(votes[r].begin(), votes[r].end()) -
                              votes[r].begin());
  }
  return out;
}

// Additive depth-1 regression trees on logistic loss for binary y in {0, 1}.
// Returns raw scores (log-odds) for the test rows.
std::vector<double> BoostedStumps(const Matrix& train, const std::vector<int>& y,
                                  const Matrix& test, const Hyperparams& hp,
                                  const std::vector<std::vector<std::size_t>>& sorted) {
  const std::size_t n = train.rows;
  double positives = 0.0;
  for (int v : y) positives += v;
  const double p0 = std::clamp(positives / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
  const double base = std::log(p0 / (1.0 - p0));
  std::vector<double> f(n, base);
  std::vector<double> scores(test.rows, base);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);

  for (int round = 0; round < hp.stumps; ++round) {
    double total_r = 0.0;
    double total_h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(f[i]);
      residual[i] = static_cast<double>(y[i]) - p;
      hessian[i] = p * (1.0 - p);
      total_r += residual[i];
      total_h += hessian[i];
    }
    // Least-squares split on the residuals.
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    const double base_term = total_r * total_r / static_cast<double>(n);
    for (std::size_t c = 0; c < train.cols; ++c) {
      const auto& order = sorted[c];
      double left_r = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_r += residual[order[i]];
        const double v = train.at(order[i], c);
        const double next = train.at(order[i + 1], c);
        if (v == next) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = static_cast<double>(n) - nl;
        const double right_r = total_r - left_r;
        const double gain = left_r * left_r / nl + right_r * right_r / nr - base_term;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_feature = static_cast<int>(c);
          best_threshold = (v + next) / 2.0;
        }
      }
    }
    if (best_feature < 0) break;
    const auto feature = static_cast<std::size_t>(best_feature);
    double lr = 0.0, lh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (train.at(i, feature) <= best_threshold) {
        lr += residual[i];
        lh += hessian[i];
      }
    }
    const double rr = total_r - lr;
    const double rh = total_h - lh;
    // Newton step per leaf.
    const double left_value = hp.shrinkage * lr / std::max(lh, 1e-12);
    const double right_value = hp.shrinkage * rr / std::max(rh, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] += train.at(i, feature) <= best_threshold ? left_value : right_value;
    }
    for (std::size_t r = 0; r < test.rows; ++r) {
      scores[r] += test.at(r, feature) <= best_threshold ? left_value : right_value;
    }
  }
  return scores;
}

std::vector<int> GradientBoosting(const Matrix& train, std::span<const int> labels,
                                  int classes, const Matrix& test,
                                  const Hyperparams& hp) {
  std::vector<std::vector<std::size_t>> sorted(train.cols);
  for (std::size_t c = 0; c < train.cols; ++c) {
    auto& order = sorted[c];
    order.resize(train.rows);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return train.at(a, c) < train.at(b, c);
    });
  }
  std::vector<int> present;
  for (int c = 0; c < classes; ++c) {
    if (std::find(labels.begin(), labels.end(), c) != labels.end()) present.push_back(c);
  }
  std::vector<int> out(test.rows);
  if (present.size() == 2) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = labels[i] == present[1];
    const auto scores = BoostedStumps(train, y, test, hp, sorted);
    for (std::size_t r = 0; r < test.rows; ++r) {
      out[r] = scores[r] > 0.0 ? present[1] : present[0];
    }
    return out;
  }
  std::vector<double> best(test.rows, -INFINITY);
  for (int c : present) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = labels[i] == c;
    const auto scores = BoostedStumps(train, y, test, hp, sorted);
    for (std::size_t r = 0; r < test.rows; ++r) {
      if (scores[r] > best[r]) {
        best[r] = scores[r];
        out[r] = c;
      }
    }
  }
  return out;
}

}  // namespace

std::string_view ClassifierKindName(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kLogisticRegression: return "logistic_regression";
    case ClassifierKind::kLinearSvc: return "linear_svc";
    case ClassifierKind::kRandomForest: return "random_forest";
    case ClassifierKind::kGradientBoosting: return "gradient_boosting";
  }
  return "logistic_regression";
}

ClassifierKind ParseClassifierKind(std::string_view name) {
  for (auto kind : {ClassifierKind::kLogisticRegression, ClassifierKind::kLinearSvc,
                    ClassifierKind::kRandomForest, ClassifierKind::kGradientBoosting}) {
    if (ClassifierKindName(kind) == name) return kind;
  }
  throw EvalError("unknown classifier '" + std::string(name) + "'");
}

Predictions TrainPredict(const ClassifierSpec& spec, const Matrix& train,
                         std::span<const int> labels, int class_count,
                         const Matrix& test) {
  if (train.rows == 0 || labels.empty()) throw EvalError("empty training set");
  if (train.rows != labels.size()) throw EvalError("labels do not match training rows");
  if (train.cols != test.cols) throw EvalError("train and test widths differ");
  for (int label : labels) {
    if (label < 0 || label >= class_count) throw EvalError("label out of range");
  }
  Predictions out;
  if (std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; })) {
    out.labels.assign(test.rows, labels[0]);
    out.degenerate = true;
    return out;
  }
  const auto& hp = spec.hyperparams;
  switch (spec.kind) {
    case ClassifierKind::kLogisticRegression:
      out.labels = OneVsRestLinear(train, labels, class_count, test, false, hp);
      break;
    case ClassifierKind::kLinearSvc:
      out.labels = OneVsRestLinear(train, labels, class_count, test, true, hp);
      break;
    case ClassifierKind::kRandomForest:
      out.labels = RandomForest(train, labels, class_count, test, hp, spec.seed);
      break;
    case ClassifierKind::kGradientBoosting:
      out.labels = GradientBoosting(train, labels, class_count, test, hp);
      break;
  }
  return out;
}

}  // namespace anonforge
