// Copyright 2026 The dpboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dpboost/params.h"

#include <cmath>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw InvalidArgument("invalid " + field + ": " + what);
}

}  // namespace

LeafMode ParseLeafMode(const std::string& text) {
  if (text == "noisy-average") return LeafMode::kNoisyAverage;
  if (text == "laplace-min-child") return LeafMode::kLaplaceMinChild;
  if (text == "laplace-worst-case") return LeafMode::kLaplaceWorstCase;
  throw InvalidArgument("invalid leaf_mode: '" + text +
                        "' (expected noisy-average, laplace-min-child or "
                        "laplace-worst-case)");
}

std::string LeafModeName(LeafMode mode) {
  switch (mode) {
    case LeafMode::kNoisyAverage:
      return "noisy-average";
    case LeafMode::kLaplaceMinChild:
      return "laplace-min-child";
    case LeafMode::kLaplaceWorstCase:
      return "laplace-worst-case";
  }
  return "unknown";
}

void TrainParams::Validate() const {
  Require(num_trees >= 0, "trees", "must be >= 0");
  Require(max_depth >= 0, "max_depth", "must be >= 0");
  Require(lambda >= 0.0 && std::isfinite(lambda), "lambda", "must be >= 0");
  Require(eta > 0.0 && eta <= 1.0, "eta", "must lie in (0, 1]");
  Require(subsample > 0.0 && subsample <= 1.0, "subsample",
          "must lie in (0, 1]");
  Require(min_child >= 1, "min_child", "must be >= 1");
  Require(num_bins >= 2, "bins", "must be >= 2");
  Require(max_candidates >= 1, "candidates", "must be >= 1");
  Require(max_candidates < 65535, "candidates", "must be < 65535");
  Require(g_star > 0.0 && std::isfinite(g_star), "g_star", "must be > 0");
  Require(fractions.sketch > 0.0, "sketch_fraction", "must be > 0");
  Require(fractions.leaf > 0.0, "leaf_fraction", "must be > 0");
  Require(fractions.split > 0.0, "split_fraction", "must be > 0");
  const double sum = fractions.sketch + fractions.leaf + fractions.split;
  Require(std::abs(sum - 1.0) <= 1e-12, "sketch_fraction",
          "budget fractions must sum to 1");
}

TreeBudget AllocateTreeBudget(const TrainParams& params, size_t num_features) {
  const Epsilon& eps = params.epsilon_per_tree;
  const Epsilon sketch = eps.Scaled(params.fractions.sketch);
  const Epsilon split = eps.Scaled(params.fractions.split);
  const size_t m = num_features == 0 ? 1 : num_features;
  const int levels = params.max_depth == 0 ? 1 : params.max_depth;
  return {sketch, sketch.Scaled(1.0 / static_cast<double>(m)),
          split.Scaled(1.0 / levels), eps.Scaled(params.fractions.leaf)};
}

std::string SketchGroup(size_t feature) {
  return "sketch/f" + std::to_string(feature);
}

std::string SplitGroup(int depth) {
  return "split/depth" + std::to_string(depth);
}

std::string LeafGroup() { return "leaves"; }

PrivacyAccountant PlanTreeLedger(const TrainParams& params,
                                 size_t num_features) {
  const TreeBudget b = AllocateTreeBudget(params, num_features);
  PrivacyAccountant ledger;
  const size_t m = num_features == 0 ? 1 : num_features;
  for (size_t k = 0; k < m; ++k) {
    ledger.ChargeParallel(SketchGroup(k), "bins", b.sketch_per_feature);
  }
  if (params.max_depth == 0) {
    ledger.Charge("split/unused", b.split_per_level);
  }
  for (int d = 0; d < params.max_depth; ++d) {
    ledger.ChargeParallel(SplitGroup(d), "level", b.split_per_level);
  }
  ledger.ChargeParallel(LeafGroup(), "leaves", b.leaf);
  return ledger;
}

nlohmann::json EpsilonJson(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

nlohmann::json PrivacyReport::ToJson() const {
  nlohmann::json j = {{"per_tree_eps", EpsilonJson(per_tree_eps.value())},
          {"gamma", gamma},
          {"amplified_per_tree_eps", EpsilonJson(amplified_per_tree_eps)},
          {"total_eps", EpsilonJson(total_eps)},
          {"trees", trees},
          {"sketch_eps", EpsilonJson(sketch_eps)},
          {"leaf_eps", EpsilonJson(leaf_eps)},
          {"split_eps_per_level", EpsilonJson(split_eps_per_level)},
          {"non_private", non_private}};
  if (non_private) j["warning"] = "NON-PRIVATE";
  return j;
}

PrivacyReport MakePrivacyReport(const TrainParams& params,
                                size_t num_features,
                                const PrivacyAccountant& training_ledger,
                                const PrivacyAccountant& tree_ledger) {
  const TreeBudget b = AllocateTreeBudget(params, num_features);
  PrivacyReport r;
  r.per_tree_eps = params.epsilon_per_tree;
  r.gamma = params.subsample;
  r.trees = params.num_trees;
  r.total_eps = training_ledger.Total();
  const double tree_total = tree_ledger.Total();
  r.amplified_per_tree_eps =
      tree_total > 0.0
          ? SubsampledEpsilon(Epsilon(tree_total), params.subsample).value()
          : 0.0;
  r.sketch_eps = b.sketch_total.value();
  r.leaf_eps = b.leaf.value();
  r.split_eps_per_level = b.split_per_level.value();
  r.non_private = params.epsilon_per_tree.is_infinite();
  return r;
}

PrivacyReport PreviewPrivacyReport(const TrainParams& params,
                                   size_t num_features) {
  params.Validate();
  const PrivacyAccountant tree = PlanTreeLedger(params, num_features);
  PrivacyAccountant training;
  for (int t = 0; t < params.num_trees; ++t) {
    training.ChargeSubsampled("tree" + std::to_string(t), tree,
                              params.subsample);
  }
  return MakePrivacyReport(params, num_features, training, tree);
}

}  // namespace dpboost
