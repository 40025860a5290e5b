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
// Reference implementations used as test oracles. They are deliberately
// naive: direct normalisation, linear scans and recursion, with no shared
// code paths with the library beyond the data containers.
#ifndef DPBOOST_TESTS_ORACLES_H_
#define DPBOOST_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dpboost/dataset.h"
#include "dpboost/model.h"
#include "dpboost/rng.h"
#include "dpboost/sketch.h"

namespace dpboost::testing {

// exp(eps u_j / (2 sens)) / sum_i exp(eps u_i / (2 sens)).
inline std::vector<double> SoftmaxOracle(const std::vector<double>& u,
                                         double eps, double sens) {
  double top = u[0];
  for (double x : u) top = std::max(top, x);
  std::vector<double> p(u.size());
  double z = 0.0;
  for (size_t j = 0; j < u.size(); ++j) {
    p[j] = std::exp(eps * (u[j] - top) / (2.0 * sens));
    z += p[j];
  }
  for (double& x : p) x /= z;
  return p;
}

// Upper 0.001 quantiles of the chi-square distribution, df = 1..7.
inline double ChiSquareCritical001(int df) {
  static const double kTable[] = {10.828, 13.816, 16.266, 18.467,
                                  20.515, 22.458, 24.322};
  if (df < 1 || df > 7) throw std::out_of_range("df");
  return kTable[df - 1];
}

inline double ChiSquareStatistic(const std::vector<size_t>& observed,
                                 const std::vector<double>& p) {
  size_t n = 0;
  for (size_t c : observed) n += c;
  double stat = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    const double e = p[j] * static_cast<double>(n);
    const double d = static_cast<double>(observed[j]) - e;
    stat += d * d / e;
  }
  return stat;
}

// Recursive walk over the node table.
inline double WalkTree(const Tree& tree, const std::vector<double>& x,
                       int node = 0) {
  const TreeNode& n = tree.nodes.at(node);
  if (n.feature < 0) return n.value;
  const int next = x.at(n.feature) <= n.threshold ? n.left : n.right;
  return WalkTree(tree, x, next);
}

inline double WalkEnsemble(const Ensemble& model, const std::vector<double>& x) {
  double sum = 0.0;
  for (const Tree& t : model.trees) sum += WalkTree(t, x);
  return model.eta * sum;
}

// Rows of `data` as vectors.
inline std::vector<double> RowVector(const Dataset& data, size_t i) {
  auto r = data.row(i);
  return {r.begin(), r.end()};
}

// Random dataset with features uniform on [-1, 1] and labels a noisy
// nonlinear function of the first two features, clipped to [-1, 1].
inline Dataset RandomDataset(size_t n, size_t m, uint64_t seed) {
  RngStream rng(seed, {77});
  std::vector<double> x(n * m);
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < m; ++k) x[i * m + k] = 2.0 * rng.Uniform() - 1.0;
    const double a = x[i * m];
    const double b = m > 1 ? x[i * m + 1] : 0.0;
    const double v = 0.6 * a + 0.4 * (b > 0.2 ? 1.0 : -1.0) +
                     0.1 * rng.StandardNormal();
    y[i] = std::clamp(v, -1.0, 1.0);
  }
  return Dataset(std::move(x), m, std::move(y));
}

inline std::vector<Range> UnitBounds(size_t m) {
  return std::vector<Range>(m, Range{-1.0, 1.0});
}

// Candidate grid the trainer derives at infinite epsilon from `rows`. This
// one reuses the library sketch, so oracle and trainer share the grid.
inline std::vector<std::vector<double>> ExactGrid(
    const Dataset& data, const std::vector<size_t>& rows, int bins,
    int candidates) {
  std::vector<std::vector<double>> grid;
  for (size_t f = 0; f < data.num_features(); ++f) {
    std::vector<double> values;
    for (size_t r : rows) values.push_back(data.feature(r, f));
    std::vector<double> w(values.size(), 1.0);
    RngStream unused(0);
    const NoisyHistogram h = BuildDpHistogram(
        f, values, w, {-1.0, 1.0}, bins, 1.0, Epsilon::Infinite(), unused);
    grid.push_back(ProposeSplits(h, candidates).thresholds);
  }
  return grid;
}

struct GreedyOracleParams {
  int num_trees = 3;
  int max_depth = 3;
  double lambda = 0.1;
  double eta = 0.3;
  size_t min_child = 5;
  double g_star = 1.0;
};

// Non-private greedy boosting on all rows. Each tree's per-feature
// candidate grid comes from `grid_fn`, called with the dataset indices of
// the rows that survived filtering. Gains, child sums and leaf sums are
// recomputed with a fresh linear scan for every candidate.
class GreedyOracle {
 public:
  using GridFn =
      std::function<std::vector<std::vector<double>>(const std::vector<size_t>&)>;

  GreedyOracle(const Dataset& data, GreedyOracleParams p, GridFn grid_fn)
      : data_(data), p_(p), grid_fn_(std::move(grid_fn)) {}

  Ensemble Train() {
    Ensemble model;
    model.eta = p_.eta;
    model.g_star = p_.g_star;
    std::vector<double> pred(data_.num_rows(), 0.0);
    for (int t = 0; t < p_.num_trees; ++t) {
      rows_.clear();
      g_.clear();
      for (size_t i = 0; i < data_.num_rows(); ++i) {
        const double g = std::clamp(pred[i], -1.0, 1.0) - data_.label(i);
        if (std::abs(g) <= p_.g_star) {
          rows_.push_back(i);
          g_.push_back(g);
        }
      }
      grid_ = grid_fn_(rows_);
      Tree tree = GrowTree();
      for (size_t i = 0; i < data_.num_rows(); ++i) {
        pred[i] += p_.eta * WalkTree(tree, RowVector(data_, i));
      }
      model.trees.push_back(std::move(tree));
    }
    return model;
  }

 private:
  struct Best {
    bool found = false;
    size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
  };

  // Positions into rows_/g_.
  Best BestSplit(const std::vector<size_t>& members) const {
    Best best;
    if (members.size() < 2 * p_.min_child) return best;
    for (size_t f = 0; f < grid_.size(); ++f) {
      for (double s : grid_[f]) {
        double gl = 0.0;
        double gr = 0.0;
        size_t nl = 0;
        size_t nr = 0;
        for (size_t q : members) {
          if (data_.feature(rows_[q], f) <= s) {
            gl += g_[q];
            ++nl;
          } else {
            gr += g_[q];
            ++nr;
          }
        }
        if (nl < p_.min_child || nr < p_.min_child) continue;
        const double gain = gl * gl / (nl + p_.lambda) + gr * gr / (nr + p_.lambda);
        if (!best.found || gain > best.gain) best = {true, f, s, gain};
      }
    }
    return best;
  }

  double LeafValue(const std::vector<size_t>& members) const {
    double sum = 0.0;
    for (size_t q : members) sum += g_[q];
    const double v = sum / (static_cast<double>(members.size()) + p_.lambda);
    return -std::clamp(v, -p_.g_star, p_.g_star);
  }

  Tree GrowTree() {
    Tree tree;
    if (rows_.empty()) {
      tree.nodes.push_back(TreeNode::Leaf(0.0));
      return tree;
    }
    struct Open {
      int id;
      std::vector<size_t> members;
    };
    std::vector<size_t> all(rows_.size());
    for (size_t q = 0; q < all.size(); ++q) all[q] = q;
    tree.nodes.push_back(TreeNode::Leaf(0.0));
    std::vector<Open> level{{0, all}};
    std::vector<Open> leaves;
    for (int d = 0; d < p_.max_depth; ++d) {
      std::vector<Open> next;
      for (Open& o : level) {
        const Best b = BestSplit(o.members);
        if (!b.found) {
          leaves.push_back(std::move(o));
          continue;
        }
        Open l{static_cast<int>(tree.nodes.size()), {}};
        Open r{l.id + 1, {}};
        for (size_t q : o.members) {
          (data_.feature(rows_[q], b.feature) <= b.threshold ? l : r)
              .members.push_back(q);
        }
        TreeNode& n = tree.nodes[o.id];
        n.feature = static_cast<int>(b.feature);
        n.threshold = b.threshold;
        n.left = l.id;
        n.right = r.id;
        tree.nodes.push_back(TreeNode::Leaf(0.0));
        tree.nodes.push_back(TreeNode::Leaf(0.0));
        next.push_back(std::move(l));
        next.push_back(std::move(r));
      }
      level = std::move(next);
    }
    for (Open& o : level) leaves.push_back(std::move(o));
    for (const Open& o : leaves) tree.nodes[o.id].value = LeafValue(o.members);
    return tree;
  }

  const Dataset& data_;
  GreedyOracleParams p_;
  GridFn grid_fn_;
  std::vector<std::vector<double>> grid_;
  std::vector<size_t> rows_;
  std::vector<double> g_;
};

}  // namespace dpboost::testing

#endif  // DPBOOST_TESTS_ORACLES_H_
