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
#ifndef DPBOOST_METRICS_H_
#define DPBOOST_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "dpboost/dataset.h"
#include "dpboost/model.h"

namespace dpboost {

enum class Metric { kRmse, kAccuracy };

Metric ParseMetric(const std::string& text);
std::string MetricName(Metric metric);

// sqrt(mean((p - y)^2)). Throws InvalidArgument on empty or mismatched input.
double Rmse(std::span<const double> predictions, std::span<const double> labels);

// Fraction of rows where the predicted class (+1 if p > 0, else -1) equals
// the label. Throws InvalidArgument unless every label is -1 or +1.
double Accuracy(std::span<const double> predictions,
                std::span<const double> labels);

// Unclipped model outputs for every row, in the normalised label scale.
std::vector<double> PredictAll(const Ensemble& model, const Dataset& data);

// RMSE is measured after mapping predictions and labels back to the raw
// label range of `bounds`; accuracy reads the normalised labels directly.
double Evaluate(const Ensemble& model, const Dataset& data,
                const FeatureBounds& bounds, Metric metric);

}  // namespace dpboost

#endif  // DPBOOST_METRICS_H_
