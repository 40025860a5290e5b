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
#ifndef DPBOOST_DATASET_H_
#define DPBOOST_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpboost/rng.h"
#include "json.hpp"

namespace dpboost {

struct Range {
  double lower = 0.0;
  double upper = 0.0;

  double Clamp(double x) const;
  bool degenerate() const { return !(lower < upper); }
};

// Public per-feature bounds plus the label range. These are treated as
// released constants: nothing here is ever recomputed from private rows.
//
// JSON form:
//   {"features": [{"name": str, "min": num, "max": num}, ...],
//    "label": {"min": num, "max": num}}
struct FeatureBounds {
  std::vector<std::string> names;
  std::vector<Range> features;
  Range label;

  size_t size() const { return features.size(); }

  // Index of `name` in `names`, or -1.
  int Find(const std::string& name) const;

  // Linear maps between [label.lower, label.upper] and [-1, 1]. Raw values
  // are clamped first.
  double NormalizeLabel(double raw) const;
  double DenormalizeLabel(double normalized) const;

  static FeatureBounds FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

FeatureBounds LoadBounds(const std::string& path);
void SaveBounds(const FeatureBounds& bounds, const std::string& path);

// Dense row-major feature matrix with labels normalised to [-1, 1].
// Immutable after construction.
class Dataset {
 public:
  // Throws DataError on non-finite features, labels outside [-1, 1] or
  // mismatched sizes.
  Dataset(std::vector<double> features, size_t num_features,
          std::vector<double> labels,
          std::vector<std::string> feature_names = {});

  size_t num_rows() const { return labels_.size(); }
  size_t num_features() const { return num_features_; }

  std::span<const double> row(size_t i) const {
    return {features_.data() + i * num_features_, num_features_};
  }
  double feature(size_t i, size_t k) const {
    return features_[i * num_features_ + k];
  }
  double label(size_t i) const { return labels_[i]; }
  std::span<const double> labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  // Rows at `indices`, in that order.
  Dataset Select(std::span<const size_t> indices) const;

 private:
  std::vector<double> features_;
  size_t num_features_;
  std::vector<double> labels_;
  std::vector<std::string> names_;
};

struct CsvLoadResult {
  Dataset dataset;
  size_t rejected_rows = 0;
};

// Reads a numeric CSV with one header row. Every column other than
// `label_column` is a feature and must have an entry in `bounds`; feature
// order follows `bounds`. Features are clamped into their bounds and labels
// mapped onto [-1, 1]. Rows with missing, non-numeric or non-finite cells
// are skipped and counted.
//
// Throws InvalidArgument for an unknown label column or a column without
// bounds, DataError for an unreadable file or when no valid row remains.
CsvLoadResult LoadCsv(const std::string& path, const FeatureBounds& bounds,
                      const std::string& label_column);

// Writes `dataset` with denormalised labels, in the layout LoadCsv reads.
void SaveCsv(const Dataset& dataset, const FeatureBounds& bounds,
             const std::string& label_column, const std::string& path);

// floor(gamma * n) distinct indices drawn uniformly without replacement,
// returned in increasing order. Throws InvalidArgument if gamma is outside
// (0, 1] or the sample would be empty.
std::vector<size_t> SampleRowIndices(size_t n, double gamma, RngStream& rng);

Dataset SubsampleRows(const Dataset& dataset, double gamma, RngStream& rng);

// Random split into (train, test) with round(test_fraction * n) test rows.
std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& dataset,
                                           double test_fraction,
                                           RngStream& rng);

enum class SyntheticKind { kClassification, kRegression };

SyntheticKind ParseSyntheticKind(const std::string& text);

struct SyntheticData {
  Dataset dataset;
  FeatureBounds bounds;
};

// Linear-teacher generators. Features are uniform on [-1, 1]^m and a unit
// weight vector w is drawn from the seed.
//   classification: label = sign(w.x + 0.1 z), z ~ N(0, 1), in {-1, +1}.
//   regression:     raw label = w.x + 0.1 z clipped to [-2, 2], published
//                   label bounds [-2, 2], stored normalised.
// Throws InvalidArgument when n or m is 0.
SyntheticData GenerateSynthetic(SyntheticKind kind, size_t n, size_t m,
                                uint64_t seed);

}  // namespace dpboost

#endif  // DPBOOST_DATASET_H_
