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
#include "dpboost/sketch.h"

#include <algorithm>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

std::vector<double> UniformGrid(const Range& r, int count) {
  std::vector<double> t;
  for (int j = 1; j <= count; ++j) {
    t.push_back(r.lower + (r.upper - r.lower) * j / (count + 1));
  }
  return t;
}

}  // namespace

std::vector<double> NoisyHistogram::ClampedWeights() const {
  std::vector<double> w(noisy_weights);
  for (double& x : w) x = std::max(x, 0.0);
  return w;
}

size_t BinIndex(std::span<const double> edges, double value) {
  const size_t bins = edges.size() - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  if (it == edges.begin()) return 0;
  return std::min(static_cast<size_t>(it - edges.begin()) - 1, bins - 1);
}

NoisyHistogram BuildDpHistogram(size_t feature, std::span<const double> values,
                                std::span<const double> weights,
                                const Range& bounds, int num_bins,
                                double max_weight, const Epsilon& epsilon,
                                RngStream& rng) {
  if (num_bins < 2) throw InvalidArgument("histogram needs at least 2 bins");
  if (values.size() != weights.size()) {
    throw InvalidArgument("values and weights differ in length");
  }
  if (!(max_weight > 0.0)) {
    throw InvalidArgument("max_weight must be positive");
  }

  NoisyHistogram h;
  h.feature = feature;
  h.epsilon = epsilon.value();
  if (bounds.degenerate()) {
    h.edges = {bounds.lower, bounds.upper};
    h.noisy_weights = {0.0};
    h.usable = false;
    return h;
  }

  h.edges.resize(num_bins + 1);
  for (int k = 0; k < num_bins; ++k) {
    h.edges[k] = bounds.lower + (bounds.upper - bounds.lower) * k / num_bins;
  }
  h.edges[num_bins] = bounds.upper;

  h.noisy_weights.assign(num_bins, 0.0);
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] >= 0.0 && weights[i] <= max_weight)) {
      throw InvalidArgument("histogram weight outside [0, max_weight]");
    }
    h.noisy_weights[BinIndex(h.edges, values[i])] += weights[i];
  }
  for (double& w : h.noisy_weights) w += LaplaceNoise(max_weight, epsilon, rng);
  return h;
}

SplitCandidates ProposeSplits(const NoisyHistogram& histogram,
                              int max_candidates) {
  if (!histogram.usable) {
    throw InvalidArgument("cannot propose splits from an unusable histogram");
  }
  if (max_candidates < 1) {
    throw InvalidArgument("need at least one split candidate");
  }
  const Range r = histogram.bounds();
  SplitCandidates out;
  out.feature = histogram.feature;

  const auto w = histogram.ClampedWeights();
  std::vector<double> cumulative(w.size() + 1, 0.0);
  for (size_t k = 0; k < w.size(); ++k) cumulative[k + 1] = cumulative[k] + w[k];
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    out.thresholds = UniformGrid(r, max_candidates);
    return out;
  }

  for (int j = 1; j <= max_candidates; ++j) {
    const double target = total * j / (max_candidates + 1);
    // First bin whose right-hand cumulative mass reaches the target; its
    // own mass is positive because the mass before it is below target.
    const auto it =
        std::lower_bound(cumulative.begin() + 1, cumulative.end(), target);
    const size_t k = std::min(static_cast<size_t>(it - cumulative.begin()) - 1,
                              w.size() - 1);
    const double frac =
        w[k] > 0.0 ? std::clamp((target - cumulative[k]) / w[k], 0.0, 1.0)
                   : 0.0;
    const double t =
        histogram.edges[k] + frac * (histogram.edges[k + 1] - histogram.edges[k]);
    if (!(t > r.lower && t < r.upper)) continue;
    if (!out.thresholds.empty() && t <= out.thresholds.back()) continue;
    out.thresholds.push_back(t);
  }
  if (out.thresholds.empty()) out.thresholds = UniformGrid(r, max_candidates);
  return out;
}

}  // namespace dpboost
