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
#include "dpboost/dataset.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "dpboost/errors.h"
#include "dpboost/model.h"
#include "dpboost/trainer.h"
#include "gtest/gtest.h"

namespace dpboost {
namespace {

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "dataset_test_" + name;
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

FeatureBounds TwoFeatureBounds() {
  FeatureBounds b;
  b.names = {"a", "b"};
  b.features = {{0.0, 10.0}, {-1.0, 1.0}};
  b.label = {0.0, 10.0};
  return b;
}

TEST(LoadCsvTest, NormalisesLabelsLinearly) {
  const std::string path = TempPath("labels.csv");
  WriteFile(path, "a,b,y\n1,0,0\n2,0,5\n3,0,10\n");
  const CsvLoadResult r = LoadCsv(path, TwoFeatureBounds(), "y");
  ASSERT_EQ(r.dataset.num_rows(), 3u);
  EXPECT_EQ(r.dataset.label(0), -1.0);
  EXPECT_EQ(r.dataset.label(1), 0.0);
  EXPECT_EQ(r.dataset.label(2), 1.0);
  EXPECT_EQ(r.rejected_rows, 0u);
}

TEST(LoadCsvTest, ClampsFeaturesIntoBounds) {
  const std::string path = TempPath("clamp.csv");
  WriteFile(path, "a,b,y\n12.7,-3,1\n");
  const CsvLoadResult r = LoadCsv(path, TwoFeatureBounds(), "y");
  EXPECT_EQ(r.dataset.feature(0, 0), 10.0);
  EXPECT_EQ(r.dataset.feature(0, 1), -1.0);
}

TEST(LoadCsvTest, FeatureOrderFollowsBounds) {
  const std::string path = TempPath("order.csv");
  WriteFile(path, "y,b,a\n5,0.5,7\n");
  const CsvLoadResult r = LoadCsv(path, TwoFeatureBounds(), "y");
  EXPECT_EQ(r.dataset.feature(0, 0), 7.0);
  EXPECT_EQ(r.dataset.feature(0, 1), 0.5);
}

TEST(LoadCsvTest, RejectsMalformedRowsWithCount) {
  const std::string path = TempPath("bad.csv");
  WriteFile(path, "a,b,y\n1,0,1\n,0,1\n1,x,1\n1,0\n1,nan,2\n4,0,3\n");
  const CsvLoadResult r = LoadCsv(path, TwoFeatureBounds(), "y");
  EXPECT_EQ(r.dataset.num_rows(), 2u);
  EXPECT_EQ(r.rejected_rows, 4u);
}

TEST(LoadCsvTest, Errors) {
  const std::string path = TempPath("err.csv");
  WriteFile(path, "a,b,y\n1,0,1\n");
  EXPECT_THROW(LoadCsv(path, TwoFeatureBounds(), "label"), InvalidArgument);
  WriteFile(path, "a,b,c,y\n1,0,0,1\n");
  EXPECT_THROW(LoadCsv(path, TwoFeatureBounds(), "y"), InvalidArgument);
  WriteFile(path, "a,b,y\n");
  EXPECT_THROW(LoadCsv(path, TwoFeatureBounds(), "y"), DataError);
  EXPECT_THROW(LoadCsv(TempPath("missing.csv"), TwoFeatureBounds(), "y"),
               DataError);
}

TEST(LoadCsvTest, LabelRoundTrip) {
  const FeatureBounds b = TwoFeatureBounds();
  RngStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double raw = 10.0 * rng.Uniform();
    EXPECT_NEAR(b.DenormalizeLabel(b.NormalizeLabel(raw)), raw, 1e-12);
  }
}

TEST(LoadCsvTest, SaveThenLoadReproducesDataset) {
  const SyntheticData s =
      GenerateSynthetic(SyntheticKind::kRegression, 50, 3, 4);
  const std::string path = TempPath("roundtrip.csv");
  SaveCsv(s.dataset, s.bounds, "target", path);
  const CsvLoadResult r = LoadCsv(path, s.bounds, "target");
  ASSERT_EQ(r.dataset.num_rows(), 50u);
  for (size_t i = 0; i < 50; ++i) {
    for (size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(r.dataset.feature(i, k), s.dataset.feature(i, k));
    }
    EXPECT_NEAR(r.dataset.label(i), s.dataset.label(i), 1e-12);
  }
}

TEST(LoadCsvTest, AbaloneLoadsAllRows) {
  const char* env = std::getenv("DPBOOST_DATA_DIR");
  const std::string dir = env ? env : DPBOOST_DATA_DIR;
  const std::string csv = dir + "/abalone/abalone.csv";
  if (!std::filesystem::exists(csv)) {
    GTEST_SKIP() << "abalone dataset not prepared at " << csv;
  }
  const FeatureBounds b = LoadBounds(dir + "/abalone/abalone.bounds.json");
  const CsvLoadResult r = LoadCsv(csv, b, "rings");
  EXPECT_EQ(r.dataset.num_rows(), 4177u);
  EXPECT_EQ(r.dataset.num_features(), 10u);
}

TEST(BoundsTest, JsonRoundTrip) {
  const FeatureBounds b = TwoFeatureBounds();
  const std::string path = TempPath("bounds.json");
  SaveBounds(b, path);
  const FeatureBounds c = LoadBounds(path);
  EXPECT_EQ(c.names, b.names);
  EXPECT_EQ(c.features[0].upper, 10.0);
  EXPECT_EQ(c.label.lower, 0.0);
  EXPECT_EQ(c.Find("b"), 1);
  EXPECT_EQ(c.Find("z"), -1);
}

TEST(BoundsTest, RejectsInvertedRange) {
  EXPECT_THROW(FeatureBounds::FromJson(nlohmann::json::parse(
                   R"({"features": [{"name": "a", "min": 2, "max": 1}],
                       "label": {"min": 0, "max": 1}})")),
               DataError);
  EXPECT_THROW(FeatureBounds::FromJson(nlohmann::json::parse("[]")), DataError);
}

TEST(DatasetTest, ValidatesContents) {
  EXPECT_THROW(Dataset({1.0, 2.0}, 1, {0.0}), DataError);
  EXPECT_THROW(Dataset({std::nan("")}, 1, {0.0}), DataError);
  EXPECT_THROW(Dataset({1.0}, 1, {1.5}), DataError);
  EXPECT_NO_THROW(Dataset({1.0}, 1, {1.0}));
}

TEST(SubsampleTest, FullFractionIsIdentity) {
  RngStream rng(1);
  const auto idx = SampleRowIndices(37, 1.0, rng);
  ASSERT_EQ(idx.size(), 37u);
  for (size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx[i], i);
}

TEST(SubsampleTest, ExactCardinalityNoDuplicates) {
  RngStream rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const auto idx = SampleRowIndices(100, 0.1, rng);
    EXPECT_EQ(idx.size(), 10u);
    EXPECT_EQ(std::set<size_t>(idx.begin(), idx.end()).size(), 10u);
    for (size_t i : idx) EXPECT_LT(i, 100u);
  }
  EXPECT_EQ(SampleRowIndices(100, 0.29, rng).size(), 29u);
}

TEST(SubsampleTest, InclusionIsUniform) {
  RngStream rng(3);
  std::vector<int> hits(20, 0);
  const int reps = 10000;
  for (int rep = 0; rep < reps; ++rep) {
    for (size_t i : SampleRowIndices(20, 0.5, rng)) ++hits[i];
  }
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(reps), 0.5, 0.02);
}

TEST(SubsampleTest, Errors) {
  RngStream rng(4);
  EXPECT_THROW(SampleRowIndices(5, 0.1, rng), InvalidArgument);
  EXPECT_THROW(SampleRowIndices(5, 0.0, rng), InvalidArgument);
  EXPECT_THROW(SampleRowIndices(5, 1.1, rng), InvalidArgument);
}

TEST(SubsampleTest, DeterministicAndSelectsRows) {
  const SyntheticData s =
      GenerateSynthetic(SyntheticKind::kRegression, 30, 2, 1);
  RngStream a(9);
  RngStream b(9);
  const Dataset sub = SubsampleRows(s.dataset, 0.5, a);
  const auto idx = SampleRowIndices(30, 0.5, b);
  ASSERT_EQ(sub.num_rows(), 15u);
  for (size_t i = 0; i < idx.size(); ++i) {
    EXPECT_EQ(sub.label(i), s.dataset.label(idx[i]));
  }
}

TEST(TrainTestSplitTest, PartitionsRows) {
  const SyntheticData s =
      GenerateSynthetic(SyntheticKind::kRegression, 101, 2, 1);
  RngStream rng(5);
  const auto [train, test] = TrainTestSplit(s.dataset, 0.2, rng);
  EXPECT_EQ(test.num_rows(), 20u);
  EXPECT_EQ(train.num_rows(), 81u);
  std::multiset<double> all(s.dataset.labels().begin(), s.dataset.labels().end());
  std::multiset<double> parts(train.labels().begin(), train.labels().end());
  parts.insert(test.labels().begin(), test.labels().end());
  EXPECT_EQ(all, parts);
}

TEST(SyntheticTest, RejectsEmpty) {
  EXPECT_THROW(GenerateSynthetic(SyntheticKind::kRegression, 0, 3, 1),
               InvalidArgument);
  EXPECT_THROW(GenerateSynthetic(SyntheticKind::kRegression, 3, 0, 1),
               InvalidArgument);
}

TEST(SyntheticTest, ClassificationLabelsAreSigns) {
  const SyntheticData s =
      GenerateSynthetic(SyntheticKind::kClassification, 1000, 5, 2);
  size_t pos = 0;
  for (double y : s.dataset.labels()) {
    ASSERT_TRUE(y == 1.0 || y == -1.0);
    pos += y > 0;
  }
  EXPECT_GT(pos, 300u);
  EXPECT_LT(pos, 700u);
  for (size_t i = 0; i < 1000; ++i) {
    for (double x : s.dataset.row(i)) {
      EXPECT_GE(x, -1.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(SyntheticTest, Reproducible) {
  const SyntheticData a =
      GenerateSynthetic(SyntheticKind::kRegression, 200, 4, 8);
  const SyntheticData b =
      GenerateSynthetic(SyntheticKind::kRegression, 200, 4, 8);
  const SyntheticData c =
      GenerateSynthetic(SyntheticKind::kRegression, 200, 4, 9);
  for (size_t i = 0; i < 200; ++i) {
    EXPECT_EQ(a.dataset.label(i), b.dataset.label(i));
    for (size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(a.dataset.feature(i, k), b.dataset.feature(i, k));
    }
  }
  EXPECT_NE(a.dataset.label(0), c.dataset.label(0));
}

TEST(SyntheticTest, RegressionIsLearnableBelowConstantBaseline) {
  const SyntheticData s =
      GenerateSynthetic(SyntheticKind::kRegression, 10000, 5, 3);
  double mean = 0.0;
  for (double y : s.dataset.labels()) mean += y;
  mean /= 10000.0;
  double baseline = 0.0;
  for (double y : s.dataset.labels()) baseline += (y - mean) * (y - mean);
  baseline = std::sqrt(baseline / 10000.0);

  TrainParams p;
  p.num_trees = 20;
  p.epsilon_per_tree = Epsilon::Infinite();
  p.subsample = 1.0;
  const TrainResult r = Train(s.dataset, s.bounds.features, p, 1);
  double sq = 0.0;
  for (size_t i = 0; i < 10000; ++i) {
    const double d = PredictRow(r.model, s.dataset.row(i)) - s.dataset.label(i);
    sq += d * d;
  }
  EXPECT_LT(std::sqrt(sq / 10000.0), baseline);
}

}  // namespace
}  // namespace dpboost
