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
// Split-candidate proposal from differentially private weight histograms.
//
// Each feature gets an equal-width histogram over its public bounds, and the
// hessian mass of every bin is released through the Laplace mechanism. The
// bins partition the rows, so one histogram costs the per-bin budget once.
// Candidates are the weighted quantiles of the released histogram; deriving
// them reads nothing but the histogram and costs no budget.
#ifndef DPBOOST_SKETCH_H_
#define DPBOOST_SKETCH_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dpboost/dataset.h"
#include "dpboost/mechanisms.h"
#include "dpboost/rng.h"

namespace dpboost {

struct NoisyHistogram {
  size_t feature = 0;
  // B + 1 strictly increasing edges from the public lower to upper bound.
  std::vector<double> edges;
  // Raw released weights; individual entries may be negative.
  std::vector<double> noisy_weights;
  double epsilon = 0.0;
  // False when the public bounds are degenerate (lower == upper).
  bool usable = true;

  size_t num_bins() const { return noisy_weights.size(); }
  Range bounds() const { return {edges.front(), edges.back()}; }

  // Negative weights clamped to 0. Quantile extraction reads this view.
  std::vector<double> ClampedWeights() const;
};

// Bin of `value` under half-open [e_k, e_{k+1}) bins with the last bin
// closed. Values outside the edges land in the first or last bin.
size_t BinIndex(std::span<const double> edges, double value);

// Builds the histogram of `weights` (each in [0, max_weight]) over `values`
// and adds Laplace(max_weight / epsilon) noise to every bin.
//
// Throws InvalidArgument if num_bins < 2, the spans differ in length or a
// weight is outside [0, max_weight]. Degenerate bounds give a single-bin
// histogram with usable = false.
NoisyHistogram BuildDpHistogram(size_t feature, std::span<const double> values,
                                std::span<const double> weights,
                                const Range& bounds, int num_bins,
                                double max_weight, const Epsilon& epsilon,
                                RngStream& rng);

struct SplitCandidates {
  size_t feature = 0;
  // Strictly increasing, all strictly inside the feature's bounds.
  std::vector<double> thresholds;
};

// Weighted quantiles at levels j / (l + 1), j = 1..l, of the clamped
// histogram read as a piecewise-constant density. Duplicates and values on
// the bounds are dropped. When all clamped mass is zero, falls back to l
// evenly spaced thresholds.
//
// Throws InvalidArgument for an unusable histogram or l < 1.
SplitCandidates ProposeSplits(const NoisyHistogram& histogram,
                              int max_candidates);

}  // namespace dpboost

#endif  // DPBOOST_SKETCH_H_
