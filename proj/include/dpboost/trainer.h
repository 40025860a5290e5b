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
//
// Differentially private boosting of regression trees under squared loss.
//
// Each tree spends its budget on three mechanism families:
//   1. one Laplace histogram per feature, from which split candidates are
//      proposed once per tree;
//   2. one exponential-mechanism split selection per node, with the budget
//      charged once per depth level (nodes of a level are disjoint);
//   3. one noisy leaf value per leaf, charged once for all leaves.
// Before each tree, rows whose gradient exceeds g* in magnitude are dropped
// (gradient data filtering), which fixes the sensitivities of 2 and 3.
#ifndef DPBOOST_TRAINER_H_
#define DPBOOST_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpboost/accountant.h"
#include "dpboost/dataset.h"
#include "dpboost/mechanisms.h"
#include "dpboost/model.h"
#include "dpboost/params.h"
#include "dpboost/rng.h"
#include "dpboost/sketch.h"

namespace dpboost {

struct GradientPair {
  double g = 0.0;
  double h = 0.0;
};

// Largest hessian of the squared loss; the weight bound of the sketch
// histograms.
inline constexpr double kSquaredLossMaxHessian = 1.0;

// Loss 0.5 (prediction - label)^2 and its derivatives w.r.t. prediction.
double SquaredLoss(double prediction, double label);
GradientPair SquaredLossGradients(double prediction, double label);

// Positions i with |g_i| <= g_star, in increasing order.
std::vector<size_t> GdfFilter(std::span<const GradientPair> gradients,
                              double g_star);

// G_L^2 / (H_L + lambda) + G_R^2 / (H_R + lambda). With unit hessians the
// H's are child sizes.
double SplitGain(double grad_left, double hess_left, double grad_right,
                 double hess_right, double lambda);

// Sensitivity of SplitGain for gradients bounded by g_star: 3 g_star^2.
double SplitGainSensitivity(double g_star);

// A tree's rows pre-bucketed against its split candidates. Rows are
// addressed by local position (0..rows.size()-1), not dataset index.
// Bucket b of feature f holds values in (s_{b-1}, s_b]; bucket L (L = number
// of thresholds) holds values above the last threshold.
class CandidateGrid {
 public:
  CandidateGrid(const Dataset& data, std::span<const size_t> rows,
                std::vector<SplitCandidates> candidates);

  size_t num_rows() const { return num_rows_; }
  size_t num_features() const { return candidates_.size(); }
  const SplitCandidates& candidates(size_t feature) const {
    return candidates_[feature];
  }
  uint16_t bucket(size_t local_row, size_t feature) const {
    return buckets_[local_row * candidates_.size() + feature];
  }

 private:
  size_t num_rows_;
  std::vector<SplitCandidates> candidates_;
  std::vector<uint16_t> buckets_;
};

struct CandidateGain {
  size_t feature = 0;
  size_t candidate = 0;  // Index into the feature's thresholds.
  double threshold = 0.0;
  double gain = 0.0;
  size_t left_count = 0;
  size_t right_count = 0;
};

// One entry per (feature, candidate) whose children both hold at least
// `min_child` rows, ordered by feature then candidate. Gradient and hessian
// sums per bucket come from one pass over the node, gains from prefix sums.
// `gradients` is indexed by local row.
std::vector<CandidateGain> EnumerateCandidateGains(
    const CandidateGrid& grid, std::span<const size_t> node_rows,
    std::span<const GradientPair> gradients, double lambda, size_t min_child);

// Exponential mechanism over the gains with sensitivity 3 g_star^2, i.e.
// weights exp(eps G / (6 g_star^2)). nullopt for an empty list.
std::optional<CandidateGain> SelectSplitDp(std::span<const CandidateGain> gains,
                                           const Epsilon& epsilon,
                                           double g_star, RngStream& rng);

// Deterministic core of the noisy average: V = (sum + noise) / (n + lambda),
// clipped to [-g_star, g_star], returned as -V.
double ClippedNoisyAverage(double gradient_sum, size_t count, double noise,
                           double lambda, double g_star);

// Noisy average leaf value: the gradient sum gets Laplace(2 g_star / eps)
// noise, the exact count is used as denominator. Throws InvariantViolation
// for an empty leaf.
double NoisyAverageLeafValue(std::span<const double> gradients,
                             const Epsilon& epsilon, double lambda,
                             double g_star, RngStream& rng);

// -sum / (n + lambda) + Laplace(sensitivity / eps), clipped to
// [-g_star, g_star]. Throws InvariantViolation for an empty leaf.
double LaplaceLeafValue(std::span<const double> gradients,
                        const Epsilon& epsilon, double lambda, double g_star,
                        double sensitivity, RngStream& rng);

// 2 g_star / (min_child + 1 + lambda).
double MinChildLeafSensitivity(double g_star, size_t min_child, double lambda);
// g_star / (1 + lambda).
double WorstCaseLeafSensitivity(double g_star, double lambda);

// Leaf value under params.leaf_mode.
double ComputeLeafValue(std::span<const double> gradients,
                        const Epsilon& epsilon, const TrainParams& params,
                        RngStream& rng);

// Grows one tree on `rows` (dataset indices, already subsampled and
// filtered) with their `gradients`. `feature_bounds` are the public bounds
// the sketch histograms span, one per feature. Charges exactly
// params.epsilon_per_tree to `ledger`, regardless of how early the tree stops
// or whether any row survived filtering. Random draws come from children of
// `tree_rng`.
Tree BuildTree(const Dataset& data, std::span<const Range> feature_bounds,
               std::span<const size_t> rows,
               std::span<const GradientPair> gradients,
               const TrainParams& params, PrivacyAccountant& ledger,
               const RngStream& tree_rng);

struct TrainResult {
  Ensemble model;
  PrivacyReport report;
  // One amplified charge per tree.
  PrivacyAccountant ledger;
  std::vector<double> tree_seconds;
};

// K boosting rounds: subsample rows, compute gradients against the running
// prediction (clipped to [-1, 1]), filter, grow a tree, update predictions
// by eta * tree(x). Throws InvalidArgument for invalid params or when the
// bounds do not match the data's feature count.
TrainResult Train(const Dataset& data, std::span<const Range> feature_bounds,
                  const TrainParams& params, uint64_t seed);

}  // namespace dpboost

#endif  // DPBOOST_TRAINER_H_
