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
#ifndef DPBOOST_PARAMS_H_
#define DPBOOST_PARAMS_H_

#include <cstddef>
#include <string>

#include "dpboost/accountant.h"
#include "dpboost/mechanisms.h"
#include "json.hpp"

namespace dpboost {

enum class LeafMode {
  // Noise only the gradient sum, divide by the exact count, clip to g*.
  kNoisyAverage,
  // Laplace on the leaf value with sensitivity 2 g* / (N_min + 1 + lambda).
  kLaplaceMinChild,
  // Laplace on the leaf value with the count-free bound g* / (1 + lambda).
  kLaplaceWorstCase,
};

LeafMode ParseLeafMode(const std::string& text);
std::string LeafModeName(LeafMode mode);

// Shares of the per-tree budget. Must each be positive and sum to 1.
struct BudgetFractions {
  double sketch = 1.0 / 3.0;
  double leaf = 1.0 / 3.0;
  double split = 1.0 / 3.0;
};

struct TrainParams {
  int num_trees = 20;
  int max_depth = 6;
  double lambda = 0.1;
  double eta = 0.3;
  double subsample = 0.1;
  size_t min_child = 50;
  int num_bins = 32;
  int max_candidates = 31;
  Epsilon epsilon_per_tree = Epsilon(1.0);
  BudgetFractions fractions;
  double g_star = 1.0;
  LeafMode leaf_mode = LeafMode::kNoisyAverage;

  // Throws InvalidArgument naming the first offending field.
  void Validate() const;
};

// Per-mechanism budgets inside one tree.
struct TreeBudget {
  Epsilon sketch_total;
  Epsilon sketch_per_feature;
  // Per depth level; every level is charged even if the tree stops early.
  Epsilon split_per_level;
  Epsilon leaf;
};

TreeBudget AllocateTreeBudget(const TrainParams& params, size_t num_features);

// Ledger labels/groups shared by the trainer and the dry-run planner so both
// produce the same sequence of ledger items.
std::string SketchGroup(size_t feature);
std::string SplitGroup(int depth);
std::string LeafGroup();

// Ledger of one tree as the trainer records it, without touching data: one
// item per sketch feature, per depth level and for the leaves. With
// max_depth = 0 the unused split share is charged as a single reservation.
PrivacyAccountant PlanTreeLedger(const TrainParams& params,
                                 size_t num_features);

struct PrivacyReport {
  Epsilon per_tree_eps = Epsilon(1.0);
  double gamma = 1.0;
  // Per-tree total after amplification by subsampling (0 when K = 0).
  double amplified_per_tree_eps = 0.0;
  double total_eps = 0.0;
  int trees = 0;
  double sketch_eps = 0.0;
  double leaf_eps = 0.0;
  double split_eps_per_level = 0.0;
  bool non_private = false;

  nlohmann::json ToJson() const;
  friend bool operator==(const PrivacyReport&, const PrivacyReport&) = default;
};

// Builds the report from a whole-training ledger (one subsampled charge per
// tree) and one tree's ledger.
PrivacyReport MakePrivacyReport(const TrainParams& params,
                                size_t num_features,
                                const PrivacyAccountant& training_ledger,
                                const PrivacyAccountant& tree_ledger);

// The report training with `params` would produce, computed by replaying the
// planned ledger K times.
PrivacyReport PreviewPrivacyReport(const TrainParams& params,
                                   size_t num_features);

// JSON number, or the string "inf" for an infinite value.
nlohmann::json EpsilonJson(double value);

}  // namespace dpboost

#endif  // DPBOOST_PARAMS_H_
