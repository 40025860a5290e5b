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
#ifndef DPBOOST_MODEL_H_
#define DPBOOST_MODEL_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpboost {

struct TreeNode {
  // Internal nodes: feature >= 0, and x[feature] <= threshold goes left.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Leaves only.
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }

  static TreeNode Leaf(double value) {
    TreeNode n;
    n.value = value;
    return n;
  }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Node 0 is the root; child ids index into `nodes`.
struct Tree {
  std::vector<TreeNode> nodes;

  // Unscaled leaf value reached by `x`.
  double Predict(std::span<const double> x) const;

  // Edges on the longest root-to-leaf path.
  int Depth() const;

  // Throws DataError unless nodes form a single binary tree rooted at 0
  // (every non-root node referenced exactly once, no cycles).
  void Validate() const;

  friend bool operator==(const Tree&, const Tree&) = default;
};

// Privacy metadata carried in the model file.
struct ModelPrivacy {
  double per_tree_eps = std::numeric_limits<double>::infinity();
  double gamma = 1.0;
  double total_eps = 0.0;

  friend bool operator==(const ModelPrivacy&, const ModelPrivacy&) = default;
};

// Additive model: prediction(x) = eta * sum_k tree_k(x). The base score is
// fixed at 0 because labels are centred in [-1, 1].
struct Ensemble {
  std::vector<Tree> trees;
  double eta = 0.3;
  double g_star = 1.0;
  // Feature count the model was trained on; 0 when unknown.
  size_t num_features = 0;
  ModelPrivacy privacy;

  friend bool operator==(const Ensemble&, const Ensemble&) = default;
};

// Unclipped prediction from the first `num_trees` trees (all by default).
// Throws InvalidArgument if x is shorter than the model's feature count.
double PredictRow(const Ensemble& model, std::span<const double> x,
                  size_t num_trees = std::numeric_limits<size_t>::max());

// Canonical JSON:
//   {"version": 1, "eta": num, "g_star": num, "num_features": int,
//    "privacy": {"per_tree_eps": num|"inf", "gamma": num,
//                "total_eps": num|"inf"},
//    "trees": [{"nodes": [{"f": int, "t": num, "l": int, "r": int}
//                         | {"v": num}, ...]}, ...]}
// Doubles are written in shortest round-trip form, so deserialising and
// re-serialising reproduces the same bytes.
std::string Serialize(const Ensemble& model);

// Throws DataError with a byte offset or JSON pointer on malformed input or
// an unsupported version.
Ensemble Deserialize(std::string_view text);

Ensemble LoadModel(const std::string& path);
void SaveModel(const Ensemble& model, const std::string& path);

}  // namespace dpboost

#endif  // DPBOOST_MODEL_H_
