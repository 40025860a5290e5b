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
#include "dpboost/metrics.h"

#include <cmath>
#include <vector>

#include "dpboost/errors.h"
#include "gtest/gtest.h"

namespace dpboost {
namespace {

TEST(MetricsTest, PerfectPredictor) {
  const std::vector<double> y = {-1, 1, 1, -1};
  EXPECT_EQ(Rmse(y, y), 0.0);
  EXPECT_EQ(Accuracy(y, y), 1.0);
}

TEST(MetricsTest, RmseMatchesDirectSum) {
  RngStream rng(1);
  std::vector<double> p(1000);
  std::vector<double> y(1000);
  double sq = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = rng.Uniform() * 20.0;
    y[i] = rng.Uniform() * 20.0;
    sq += (p[i] - y[i]) * (p[i] - y[i]);
  }
  EXPECT_NEAR(Rmse(p, y), std::sqrt(sq / 1000.0), 1e-12);
}

TEST(MetricsTest, ConstantZeroOnBalancedLabels) {
  RngStream rng(2);
  std::vector<double> y(10000);
  for (double& v : y) v = rng.Uniform() < 0.5 ? -1.0 : 1.0;
  const std::vector<double> zero(10000, 0.0);
  EXPECT_NEAR(Accuracy(zero, y), 0.5, 0.02);
}

TEST(MetricsTest, AccuracyNeedsBinaryLabels) {
  EXPECT_THROW(Accuracy(std::vector<double>{0.1}, std::vector<double>{0.5}),
               InvalidArgument);
  EXPECT_THROW(Rmse(std::vector<double>{}, std::vector<double>{}),
               InvalidArgument);
  EXPECT_THROW(Rmse(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
               InvalidArgument);
}

TEST(MetricsTest, EvaluateRmseUsesRawScale) {
  FeatureBounds b;
  b.names = {"x"};
  b.features = {{0.0, 1.0}};
  b.label = {0.0, 10.0};
  const Dataset d({0.2, 0.8}, 1, {-1.0, 1.0});  // Raw labels 0 and 10.
  Ensemble e;
  e.eta = 1.0;
  Tree t;
  t.nodes = {TreeNode::Leaf(0.0)};  // Predicts raw 5 everywhere.
  e.trees.push_back(t);
  EXPECT_NEAR(Evaluate(e, d, b, Metric::kRmse), 5.0, 1e-12);
  EXPECT_EQ(Evaluate(e, d, b, Metric::kAccuracy), 0.5);
}

TEST(MetricsTest, ParseNames) {
  EXPECT_EQ(ParseMetric("rmse"), Metric::kRmse);
  EXPECT_EQ(ParseMetric("accuracy"), Metric::kAccuracy);
  EXPECT_EQ(MetricName(Metric::kAccuracy), "accuracy");
  EXPECT_THROW(ParseMetric("auc"), InvalidArgument);
}

}  // namespace
}  // namespace dpboost
