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
#include <string>

#include "dpboost/errors.h"
#include "gtest/gtest.h"

namespace dpboost {
namespace {

std::string ValidationMessage(const TrainParams& p) {
  try {
    p.Validate();
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

TEST(TrainParamsTest, DefaultsFollowExperimentSettings) {
  const TrainParams p;
  EXPECT_EQ(p.num_trees, 20);
  EXPECT_EQ(p.lambda, 0.1);
  EXPECT_EQ(p.eta, 0.3);
  EXPECT_EQ(p.subsample, 0.1);
  EXPECT_EQ(p.min_child, 50u);
  EXPECT_EQ(p.g_star, 1.0);
  EXPECT_EQ(p.leaf_mode, LeafMode::kNoisyAverage);
  EXPECT_NO_THROW(p.Validate());
}

TEST(TrainParamsTest, ValidationNamesTheKey) {
  struct Case {
    void (*mutate)(TrainParams&);
    const char* key;
  };
  const Case cases[] = {
      {[](TrainParams& p) { p.num_trees = -1; }, "trees"},
      {[](TrainParams& p) { p.max_depth = -2; }, "max_depth"},
      {[](TrainParams& p) { p.lambda = -0.1; }, "lambda"},
      {[](TrainParams& p) { p.eta = 0.0; }, "eta"},
      {[](TrainParams& p) { p.eta = 1.5; }, "eta"},
      {[](TrainParams& p) { p.subsample = 0.0; }, "subsample"},
      {[](TrainParams& p) { p.min_child = 0; }, "min_child"},
      {[](TrainParams& p) { p.num_bins = 1; }, "bins"},
      {[](TrainParams& p) { p.max_candidates = 0; }, "candidates"},
      {[](TrainParams& p) { p.g_star = 0.0; }, "g_star"},
      {[](TrainParams& p) { p.fractions.leaf = 0.0; }, "leaf_fraction"},
      {[](TrainParams& p) { p.fractions.sketch = 0.5; }, "sketch_fraction"},
  };
  for (const Case& c : cases) {
    TrainParams p;
    c.mutate(p);
    EXPECT_NE(ValidationMessage(p).find(c.key), std::string::npos) << c.key;
  }
}

TEST(TrainParamsTest, FractionsSumTolerance) {
  TrainParams p;
  p.fractions = {0.5, 0.25, 0.25 + 5e-13};
  EXPECT_NO_THROW(p.Validate());
  p.fractions = {0.5, 0.25, 0.25 + 1e-9};
  EXPECT_THROW(p.Validate(), InvalidArgument);
}

TEST(LeafModeTest, NamesRoundTrip) {
  for (LeafMode m : {LeafMode::kNoisyAverage, LeafMode::kLaplaceMinChild,
                     LeafMode::kLaplaceWorstCase}) {
    EXPECT_EQ(ParseLeafMode(LeafModeName(m)), m);
  }
  EXPECT_THROW(ParseLeafMode("median"), InvalidArgument);
}

TEST(AllocateTreeBudgetTest, EvenSplit) {
  TrainParams p;
  p.epsilon_per_tree = Epsilon(3.0);
  p.max_depth = 6;
  const TreeBudget b = AllocateTreeBudget(p, 10);
  EXPECT_NEAR(b.sketch_total.value(), 1.0, 1e-15);
  EXPECT_NEAR(b.sketch_per_feature.value(), 0.1, 1e-15);
  EXPECT_NEAR(b.split_per_level.value(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(b.leaf.value(), 1.0, 1e-15);
}

TEST(AllocateTreeBudgetTest, CustomFractionsPerLevel) {
  TrainParams p;
  p.epsilon_per_tree = Epsilon(1.0);
  p.fractions = {0.5, 0.25, 0.25};
  p.max_depth = 4;
  EXPECT_NEAR(AllocateTreeBudget(p, 3).split_per_level.value(), 0.0625, 1e-15);
}

TEST(PlanTreeLedgerTest, TotalsPerTreeBudget) {
  TrainParams p;
  p.epsilon_per_tree = Epsilon(1.0);
  p.max_depth = 6;
  EXPECT_NEAR(PlanTreeLedger(p, 10).Total(), 1.0, 1e-12);
  p.max_depth = 0;
  const PrivacyAccountant zero = PlanTreeLedger(p, 10);
  EXPECT_NEAR(zero.Total(), 1.0, 1e-12);
}

TEST(PlanTreeLedgerTest, RandomConfigsAreExact) {
  RngStream rng(1);
  for (int i = 0; i < 200; ++i) {
    TrainParams p;
    p.epsilon_per_tree = Epsilon(0.01 + 20.0 * rng.Uniform());
    p.max_depth = static_cast<int>(rng.UniformIndex(12));
    const double a = 0.05 + rng.Uniform();
    const double b = 0.05 + rng.Uniform();
    const double c = 0.05 + rng.Uniform();
    p.fractions = {a / (a + b + c), b / (a + b + c), 0.0};
    p.fractions.split = 1.0 - p.fractions.sketch - p.fractions.leaf;
    const size_t m = 1 + rng.UniformIndex(60);
    EXPECT_NEAR(PlanTreeLedger(p, m).Total(), p.epsilon_per_tree.value(), 1e-12);
  }
}

TEST(PreviewPrivacyReportTest, Examples) {
  TrainParams p;
  p.subsample = 1.0;
  p.num_trees = 1;
  p.epsilon_per_tree = Epsilon(3.0);
  EXPECT_NEAR(PreviewPrivacyReport(p, 5).total_eps, 3.0, 1e-12);

  p.subsample = 0.1;
  p.num_trees = 20;
  p.epsilon_per_tree = Epsilon(1.0);
  const PrivacyReport r = PreviewPrivacyReport(p, 5);
  EXPECT_NEAR(r.total_eps, 20.0 * std::log(1.0 + 0.1 * (std::exp(1.0) - 1.0)),
              1e-12);
  EXPECT_NEAR(r.total_eps, 3.1713, 1e-4);
  EXPECT_FALSE(r.non_private);
}

TEST(PreviewPrivacyReportTest, ZeroTreesAndInfinite) {
  TrainParams p;
  p.num_trees = 0;
  EXPECT_EQ(PreviewPrivacyReport(p, 3).total_eps, 0.0);
  p.num_trees = 2;
  p.epsilon_per_tree = Epsilon::Infinite();
  const PrivacyReport r = PreviewPrivacyReport(p, 3);
  EXPECT_TRUE(r.non_private);
  EXPECT_TRUE(std::isinf(r.total_eps));
  const nlohmann::json j = r.ToJson();
  EXPECT_EQ(j["total_eps"], "inf");
  EXPECT_EQ(j["warning"], "NON-PRIVATE");
}

}  // namespace
}  // namespace dpboost
