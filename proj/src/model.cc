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
#include "dpboost/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dpboost/errors.h"
#include "json.hpp"

namespace dpboost {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json EpsJson(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

[[noreturn]] void Malformed(const std::string& pointer,
                            const std::string& what) {
  throw DataError("model JSON at " + pointer + ": " + what);
}

const json& Field(const json& obj, const char* key,
                  const std::string& pointer) {
  if (!obj.is_object()) Malformed(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Malformed(pointer, std::string("missing \"") + key + "\"");
  return *it;
}

double Number(const json& obj, const char* key, const std::string& pointer) {
  const json& v = Field(obj, key, pointer);
  if (!v.is_number()) Malformed(pointer + "/" + key, "expected a number");
  return v.get<double>();
}

double EpsNumber(const json& obj, const char* key, const std::string& pointer) {
  const json& v = Field(obj, key, pointer);
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) {
    Malformed(pointer + "/" + key, "expected a number or \"inf\"");
  }
  return v.get<double>();
}

int Integer(const json& obj, const char* key, const std::string& pointer) {
  const json& v = Field(obj, key, pointer);
  if (!v.is_number_integer()) {
    Malformed(pointer + "/" + key, "expected an integer");
  }
  return v.get<int>();
}

}  // namespace

double Tree::Predict(std::span<const double> x) const {
  size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const TreeNode& n = nodes[id];
    id = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[id].value;
}

int Tree::Depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<size_t, int>> stack{{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (!nodes[id].is_leaf()) {
      stack.push_back({static_cast<size_t>(nodes[id].left), d + 1});
      stack.push_back({static_cast<size_t>(nodes[id].right), d + 1});
    }
  }
  return depth;
}

void Tree::Validate() const {
  if (nodes.empty()) throw DataError("tree has no nodes");
  std::vector<int> refs(nodes.size(), 0);
  const int n = static_cast<int>(nodes.size());
  for (int id = 0; id < n; ++id) {
    const TreeNode& node = nodes[id];
    if (node.is_leaf()) continue;
    for (int child : {node.left, node.right}) {
      if (child <= 0 || child >= n) {
        throw DataError("node " + std::to_string(id) +
                        " has out-of-range child " + std::to_string(child));
      }
      ++refs[child];
    }
  }
  for (int id = 1; id < n; ++id) {
    if (refs[id] != 1) {
      throw DataError("node " + std::to_string(id) + " is referenced " +
                      std::to_string(refs[id]) + " times");
    }
  }
  // With n - 1 single references and an unreferenced root, the structure is
  // a tree iff every node is reachable from the root.
  std::vector<bool> seen(nodes.size(), false);
  std::vector<int> stack{0};
  size_t reached = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (seen[id]) throw DataError("cycle through node " + std::to_string(id));
    seen[id] = true;
    ++reached;
    if (!nodes[id].is_leaf()) {
      stack.push_back(nodes[id].left);
      stack.push_back(nodes[id].right);
    }
  }
  if (reached != nodes.size()) throw DataError("tree has unreachable nodes");
}

double PredictRow(const Ensemble& model, std::span<const double> x,
                  size_t num_trees) {
  if (model.num_features != 0 && x.size() != model.num_features) {
    throw InvalidArgument("row has " + std::to_string(x.size()) +
                          " features, model expects " +
                          std::to_string(model.num_features));
  }
  const size_t k = std::min(num_trees, model.trees.size());
  double sum = 0.0;
  for (size_t t = 0; t < k; ++t) {
    const Tree& tree = model.trees[t];
    if (model.num_features == 0) {
      for (const TreeNode& n : tree.nodes) {
        if (!n.is_leaf() && static_cast<size_t>(n.feature) >= x.size()) {
          throw InvalidArgument("row has " + std::to_string(x.size()) +
                                " features, model uses feature " +
                                std::to_string(n.feature));
        }
      }
    }
    sum += tree.Predict(x);
  }
  return model.eta * sum;
}

std::string Serialize(const Ensemble& model) {
  json trees = json::array();
  for (const Tree& tree : model.trees) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes) {
      if (n.is_leaf()) {
        nodes.push_back({{"v", n.value}});
      } else {
        nodes.push_back(
            {{"f", n.feature}, {"t", n.threshold}, {"l", n.left},
             {"r", n.right}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  json doc = {
      {"version", kFormatVersion},
      {"eta", model.eta},
      {"g_star", model.g_star},
      {"num_features", model.num_features},
      {"privacy",
       {{"per_tree_eps", EpsJson(model.privacy.per_tree_eps)},
        {"gamma", model.privacy.gamma},
        {"total_eps", EpsJson(model.privacy.total_eps)}}},
      {"trees", std::move(trees)}};
  return doc.dump(1) + "\n";
}

Ensemble Deserialize(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError("model JSON parse error at byte " +
                    std::to_string(e.byte) + ": " + e.what());
  }
  const int version = Integer(doc, "version", "");
  if (version != kFormatVersion) {
    Malformed("/version", "unsupported version " + std::to_string(version));
  }
  Ensemble model;
  model.eta = Number(doc, "eta", "");
  model.g_star = Number(doc, "g_star", "");
  if (doc.contains("num_features")) {
    const int m = Integer(doc, "num_features", "");
    if (m < 0) Malformed("/num_features", "must be >= 0");
    model.num_features = static_cast<size_t>(m);
  }
  const json& privacy = Field(doc, "privacy", "");
  model.privacy.per_tree_eps = EpsNumber(privacy, "per_tree_eps", "/privacy");
  model.privacy.gamma = Number(privacy, "gamma", "/privacy");
  model.privacy.total_eps = EpsNumber(privacy, "total_eps", "/privacy");

  const json& trees = Field(doc, "trees", "");
  if (!trees.is_array()) Malformed("/trees", "expected an array");
  for (size_t t = 0; t < trees.size(); ++t) {
    const std::string tp = "/trees/" + std::to_string(t);
    const json& nodes = Field(trees[t], "nodes", tp);
    if (!nodes.is_array()) Malformed(tp + "/nodes", "expected an array");
    Tree tree;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const std::string np = tp + "/nodes/" + std::to_string(i);
      const json& jn = nodes[i];
      if (!jn.is_object()) Malformed(np, "expected an object");
      if (jn.contains("v")) {
        tree.nodes.push_back(TreeNode::Leaf(Number(jn, "v", np)));
        continue;
      }
      TreeNode n;
      n.feature = Integer(jn, "f", np);
      if (n.feature < 0) Malformed(np + "/f", "must be >= 0");
      n.threshold = Number(jn, "t", np);
      n.left = Integer(jn, "l", np);
      n.right = Integer(jn, "r", np);
      tree.nodes.push_back(n);
    }
    try {
      tree.Validate();
    } catch (const DataError& e) {
      Malformed(tp, e.what());
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

Ensemble LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Deserialize(ss.str());
}

void SaveModel(const Ensemble& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model " + path);
  out << Serialize(model);
}

}  // namespace dpboost
