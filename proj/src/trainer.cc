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
#include "dpboost/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

std::string NodeLabel(size_t id) { return "node" + std::to_string(id); }

// A node waiting to be split or turned into a leaf, with its local rows in
// their original order.
struct OpenNode {
  size_t id;
  std::vector<size_t> rows;
};

}  // namespace

double SquaredLoss(double prediction, double label) {
  const double r = prediction - label;
  return 0.5 * r * r;
}

GradientPair SquaredLossGradients(double prediction, double label) {
  return {prediction - label, 1.0};
}

std::vector<size_t> GdfFilter(std::span<const GradientPair> gradients,
                              double g_star) {
  std::vector<size_t> keep;
  keep.reserve(gradients.size());
  for (size_t i = 0; i < gradients.size(); ++i) {
    if (std::abs(gradients[i].g) <= g_star) keep.push_back(i);
  }
  return keep;
}

double SplitGain(double grad_left, double hess_left, double grad_right,
                 double hess_right, double lambda) {
  return grad_left * grad_left / (hess_left + lambda) +
         grad_right * grad_right / (hess_right + lambda);
}

double SplitGainSensitivity(double g_star) { return 3.0 * g_star * g_star; }

CandidateGrid::CandidateGrid(const Dataset& data, std::span<const size_t> rows,
                             std::vector<SplitCandidates> candidates)
    : num_rows_(rows.size()), candidates_(std::move(candidates)) {
  const size_t m = candidates_.size();
  if (m != data.num_features()) {
    throw InvalidArgument("candidate grid needs one candidate list per feature");
  }
  buckets_.resize(num_rows_ * m);
  for (size_t i = 0; i < num_rows_; ++i) {
    for (size_t f = 0; f < m; ++f) {
      const std::vector<double>& s = candidates_[f].thresholds;
      const double x = data.feature(rows[i], f);
      buckets_[i * m + f] = static_cast<uint16_t>(
          std::lower_bound(s.begin(), s.end(), x) - s.begin());
    }
  }
}

std::vector<CandidateGain> EnumerateCandidateGains(
    const CandidateGrid& grid, std::span<const size_t> node_rows,
    std::span<const GradientPair> gradients, double lambda, size_t min_child) {
  std::vector<CandidateGain> out;
  const size_t total_count = node_rows.size();
  if (total_count < 2 * min_child) return out;
  std::vector<double> grad;
  std::vector<double> hess;
  std::vector<size_t> count;
  for (size_t f = 0; f < grid.num_features(); ++f) {
    const std::vector<double>& s = grid.candidates(f).thresholds;
    if (s.empty()) continue;
    grad.assign(s.size() + 1, 0.0);
    hess.assign(s.size() + 1, 0.0);
    count.assign(s.size() + 1, 0);
    double grad_total = 0.0;
    double hess_total = 0.0;
    for (size_t r : node_rows) {
      const uint16_t b = grid.bucket(r, f);
      grad[b] += gradients[r].g;
      hess[b] += gradients[r].h;
      grad_total += gradients[r].g;
      hess_total += gradients[r].h;
      ++count[b];
    }
    double grad_left = 0.0;
    double hess_left = 0.0;
    size_t left = 0;
    for (size_t v = 0; v < s.size(); ++v) {
      grad_left += grad[v];
      hess_left += hess[v];
      left += count[v];
      const size_t right = total_count - left;
      if (left < min_child || right < min_child) continue;
      out.push_back({f, v, s[v],
                     SplitGain(grad_left, hess_left, grad_total - grad_left,
                               hess_total - hess_left, lambda),
                     left, right});
    }
  }
  return out;
}

std::optional<CandidateGain> SelectSplitDp(std::span<const CandidateGain> gains,
                                           const Epsilon& epsilon,
                                           double g_star, RngStream& rng) {
  if (gains.empty()) return std::nullopt;
  std::vector<double> utilities(gains.size());
  for (size_t i = 0; i < gains.size(); ++i) utilities[i] = gains[i].gain;
  return gains[SelectExponential(utilities, epsilon,
                                 SplitGainSensitivity(g_star), rng)];
}

double ClippedNoisyAverage(double gradient_sum, size_t count, double noise,
                           double lambda, double g_star) {
  const double v = (gradient_sum + noise) / (static_cast<double>(count) + lambda);
  return -std::clamp(v, -g_star, g_star);
}

double NoisyAverageLeafValue(std::span<const double> gradients,
                             const Epsilon& epsilon, double lambda,
                             double g_star, RngStream& rng) {
  if (gradients.empty()) throw InvariantViolation("leaf with no rows");
  double sum = 0.0;
  for (double g : gradients) sum += g;
  const double noise = LaplaceNoise(2.0 * g_star, epsilon, rng);
  return ClippedNoisyAverage(sum, gradients.size(), noise, lambda, g_star);
}

double LaplaceLeafValue(std::span<const double> gradients,
                        const Epsilon& epsilon, double lambda, double g_star,
                        double sensitivity, RngStream& rng) {
  if (gradients.empty()) throw InvariantViolation("leaf with no rows");
  double sum = 0.0;
  for (double g : gradients) sum += g;
  const double v = -sum / (static_cast<double>(gradients.size()) + lambda) +
                   LaplaceNoise(sensitivity, epsilon, rng);
  return std::clamp(v, -g_star, g_star);
}

double MinChildLeafSensitivity(double g_star, size_t min_child, double lambda) {
  return 2.0 * g_star / (static_cast<double>(min_child) + 1.0 + lambda);
}

double WorstCaseLeafSensitivity(double g_star, double lambda) {
  return g_star / (1.0 + lambda);
}

double ComputeLeafValue(std::span<const double> gradients,
                        const Epsilon& epsilon, const TrainParams& params,
                        RngStream& rng) {
  switch (params.leaf_mode) {
    case LeafMode::kNoisyAverage:
      return NoisyAverageLeafValue(gradients, epsilon, params.lambda,
                                   params.g_star, rng);
    case LeafMode::kLaplaceMinChild:
      return LaplaceLeafValue(
          gradients, epsilon, params.lambda, params.g_star,
          MinChildLeafSensitivity(params.g_star, params.min_child,
                                  params.lambda),
          rng);
    case LeafMode::kLaplaceWorstCase:
      return LaplaceLeafValue(
          gradients, epsilon, params.lambda, params.g_star,
          WorstCaseLeafSensitivity(params.g_star, params.lambda), rng);
  }
  throw InvariantViolation("unknown leaf mode");
}

Tree BuildTree(const Dataset& data, std::span<const Range> feature_bounds,
               std::span<const size_t> rows,
               std::span<const GradientPair> gradients,
               const TrainParams& params, PrivacyAccountant& ledger,
               const RngStream& tree_rng) {
  const size_t m = data.num_features();
  if (feature_bounds.size() != m) {
    throw InvalidArgument("expected " + std::to_string(m) +
                          " feature bounds, got " +
                          std::to_string(feature_bounds.size()));
  }
  if (rows.size() != gradients.size()) {
    throw InvalidArgument("rows and gradients differ in length");
  }
  const TreeBudget budget = AllocateTreeBudget(params, m);

  Tree tree;
  if (rows.empty()) {
    // Nothing survived filtering. The tree still costs its full budget so the
    // ledger does not depend on the data.
    const PrivacyAccountant plan = PlanTreeLedger(params, m);
    for (const PrivacyAccountant::Entry& e : plan.entries()) {
      if (e.group.empty()) {
        ledger.Charge(e.label, Epsilon(e.epsilon));
      } else {
        ledger.ChargeParallel(e.group, e.label, Epsilon(e.epsilon));
      }
    }
    tree.nodes.push_back(TreeNode::Leaf(0.0));
    return tree;
  }

  // Sketch: one noisy hessian histogram per feature.
  std::vector<SplitCandidates> candidates(m);
  std::vector<double> values(rows.size());
  std::vector<double> weights(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) weights[i] = gradients[i].h;
  for (size_t f = 0; f < m; ++f) {
    for (size_t i = 0; i < rows.size(); ++i) values[i] = data.feature(rows[i], f);
    RngStream rng = tree_rng.Child({kSketchStream, f});
    const NoisyHistogram hist = BuildDpHistogram(
        f, values, weights, feature_bounds[f], params.num_bins,
        kSquaredLossMaxHessian, budget.sketch_per_feature, rng);
    for (size_t b = 0; b < hist.num_bins(); ++b) {
      ledger.ChargeParallel(SketchGroup(f), "bin" + std::to_string(b),
                            budget.sketch_per_feature);
    }
    candidates[f].feature = f;
    if (hist.usable) candidates[f] = ProposeSplits(hist, params.max_candidates);
  }
  const CandidateGrid grid(data, rows, std::move(candidates));

  // Level-wise growth. Each level's nodes hold disjoint rows.
  std::vector<OpenNode> frontier;
  frontier.push_back({0, std::vector<size_t>(rows.size())});
  for (size_t i = 0; i < rows.size(); ++i) frontier[0].rows[i] = i;
  tree.nodes.push_back(TreeNode::Leaf(0.0));
  std::vector<OpenNode> leaves;

  if (params.max_depth == 0) {
    ledger.Charge("split/unused", budget.split_per_level);
  }
  for (int depth = 0; depth < params.max_depth; ++depth) {
    std::vector<OpenNode> next;
    bool charged = false;
    for (OpenNode& node : frontier) {
      const std::vector<CandidateGain> gains = EnumerateCandidateGains(
          grid, node.rows, gradients, params.lambda, params.min_child);
      if (gains.empty()) {
        leaves.push_back(std::move(node));
        continue;
      }
      RngStream rng = tree_rng.Child(
          {kSplitStream, static_cast<uint64_t>(depth), node.id});
      const CandidateGain chosen =
          *SelectSplitDp(gains, budget.split_per_level, params.g_star, rng);
      ledger.ChargeParallel(SplitGroup(depth), NodeLabel(node.id),
                            budget.split_per_level);
      charged = true;

      OpenNode left{tree.nodes.size(), {}};
      OpenNode right{tree.nodes.size() + 1, {}};
      left.rows.reserve(chosen.left_count);
      right.rows.reserve(chosen.right_count);
      for (size_t r : node.rows) {
        if (grid.bucket(r, chosen.feature) <= chosen.candidate) {
          left.rows.push_back(r);
        } else {
          right.rows.push_back(r);
        }
      }
      if (left.rows.size() != chosen.left_count ||
          right.rows.size() != chosen.right_count) {
        throw InvariantViolation("split partition disagrees with its counts");
      }
      TreeNode& n = tree.nodes[node.id];
      n.feature = static_cast<int>(chosen.feature);
      n.threshold = chosen.threshold;
      n.left = static_cast<int>(left.id);
      n.right = static_cast<int>(right.id);
      tree.nodes.push_back(TreeNode::Leaf(0.0));
      tree.nodes.push_back(TreeNode::Leaf(0.0));
      next.push_back(std::move(left));
      next.push_back(std::move(right));
    }
    if (!charged) {
      ledger.ChargeParallel(SplitGroup(depth), "unused",
                            budget.split_per_level);
    }
    frontier = std::move(next);
  }
  for (OpenNode& node : frontier) leaves.push_back(std::move(node));
  std::sort(leaves.begin(), leaves.end(),
            [](const OpenNode& a, const OpenNode& b) { return a.id < b.id; });

  std::vector<double> leaf_gradients;
  for (const OpenNode& leaf : leaves) {
    leaf_gradients.clear();
    for (size_t r : leaf.rows) leaf_gradients.push_back(gradients[r].g);
    RngStream rng = tree_rng.Child({kLeafStream, leaf.id});
    tree.nodes[leaf.id].value =
        ComputeLeafValue(leaf_gradients, budget.leaf, params, rng);
    ledger.ChargeParallel(LeafGroup(), NodeLabel(leaf.id), budget.leaf);
  }
  return tree;
}

TrainResult Train(const Dataset& data, std::span<const Range> feature_bounds,
                  const TrainParams& params, uint64_t seed) {
  params.Validate();
  const size_t n = data.num_rows();
  const size_t m = data.num_features();
  if (feature_bounds.size() != m) {
    throw InvalidArgument("expected " + std::to_string(m) +
                          " feature bounds, got " +
                          std::to_string(feature_bounds.size()));
  }

  TrainResult result;
  result.model.eta = params.eta;
  result.model.g_star = params.g_star;
  result.model.num_features = m;

  const RngStream root(seed);
  std::vector<double> predictions(n, 0.0);
  PrivacyAccountant last_tree;
  for (int t = 0; t < params.num_trees; ++t) {
    const auto start = std::chrono::steady_clock::now();
    const RngStream tree_rng = root.Child(static_cast<uint64_t>(t));
    RngStream sample_rng = tree_rng.Child({kSubsampleStream});
    const std::vector<size_t> sampled =
        SampleRowIndices(n, params.subsample, sample_rng);

    std::vector<GradientPair> sampled_gradients(sampled.size());
    for (size_t i = 0; i < sampled.size(); ++i) {
      const size_t r = sampled[i];
      sampled_gradients[i] = SquaredLossGradients(
          std::clamp(predictions[r], -1.0, 1.0), data.label(r));
    }
    const std::vector<size_t> kept = GdfFilter(sampled_gradients, params.g_star);
    std::vector<size_t> rows(kept.size());
    std::vector<GradientPair> gradients(kept.size());
    for (size_t i = 0; i < kept.size(); ++i) {
      rows[i] = sampled[kept[i]];
      gradients[i] = sampled_gradients[kept[i]];
    }

    PrivacyAccountant tree_ledger;
    Tree tree = BuildTree(data, feature_bounds, rows, gradients, params,
                          tree_ledger, tree_rng);
    result.ledger.ChargeSubsampled("tree" + std::to_string(t), tree_ledger,
                                   params.subsample);
    for (size_t i = 0; i < n; ++i) {
      predictions[i] += params.eta * tree.Predict(data.row(i));
    }
    result.model.trees.push_back(std::move(tree));
    last_tree = std::move(tree_ledger);
    result.tree_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());
  }
  if (params.num_trees == 0) last_tree = PlanTreeLedger(params, m);
  result.report = MakePrivacyReport(params, m, result.ledger, last_tree);
  result.model.privacy = {params.epsilon_per_tree.value(), params.subsample,
                          result.report.total_eps};
  return result;
}

}  // namespace dpboost
