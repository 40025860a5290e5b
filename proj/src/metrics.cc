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

#include "dpboost/errors.h"

namespace dpboost {
namespace {

void CheckSizes(std::span<const double> predictions,
                std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw InvalidArgument("predictions and labels differ in length");
  }
  if (labels.empty()) throw InvalidArgument("cannot score an empty dataset");
}

}  // namespace

Metric ParseMetric(const std::string& text) {
  if (text == "rmse") return Metric::kRmse;
  if (text == "accuracy") return Metric::kAccuracy;
  throw InvalidArgument("invalid metric: '" + text +
                        "' (expected rmse or accuracy)");
}

std::string MetricName(Metric metric) {
  return metric == Metric::kRmse ? "rmse" : "accuracy";
}

double Rmse(std::span<const double> predictions,
            std::span<const double> labels) {
  CheckSizes(predictions, labels);
  double sum = 0.0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const double d = predictions[i] - labels[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(labels.size()));
}

double Accuracy(std::span<const double> predictions,
                std::span<const double> labels) {
  CheckSizes(predictions, labels);
  size_t hits = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw InvalidArgument(
          "accuracy needs labels in {-1, +1}; row " + std::to_string(i) +
          " has normalised label " + std::to_string(labels[i]));
    }
    const double predicted = predictions[i] > 0.0 ? 1.0 : -1.0;
    if (predicted == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

std::vector<double> PredictAll(const Ensemble& model, const Dataset& data) {
  std::vector<double> out(data.num_rows());
  for (size_t i = 0; i < out.size(); ++i) out[i] = PredictRow(model, data.row(i));
  return out;
}

double Evaluate(const Ensemble& model, const Dataset& data,
                const FeatureBounds& bounds, Metric metric) {
  std::vector<double> predictions = PredictAll(model, data);
  if (metric == Metric::kAccuracy) return Accuracy(predictions, data.labels());
  std::vector<double> labels(data.num_rows());
  for (size_t i = 0; i < labels.size(); ++i) {
    labels[i] = bounds.DenormalizeLabel(data.label(i));
    predictions[i] = bounds.DenormalizeLabel(predictions[i]);
  }
  return Rmse(predictions, labels);
}

}  // namespace dpboost
