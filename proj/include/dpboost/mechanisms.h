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
// Pure-DP building blocks: the privacy-budget type, the Laplace and
// exponential mechanisms, and amplification by subsampling.
#ifndef DPBOOST_MECHANISMS_H_
#define DPBOOST_MECHANISMS_H_

#include <cstddef>
#include <span>
#include <string>

#include "dpboost/rng.h"

namespace dpboost {

// A pure-DP privacy budget. Either a positive finite value or the infinite
// sentinel, which turns every mechanism into its noiseless limit (Laplace
// noise becomes 0, the exponential mechanism becomes argmax). Infinite
// budgets are NOT private; they exist for oracle tests and non-DP baselines.
class Epsilon {
 public:
  // Throws InvalidArgument unless value > 0 (+inf is accepted).
  explicit Epsilon(double value);

  static Epsilon Infinite();

  // Parses a positive number or the literal "inf".
  static Epsilon Parse(const std::string& text);

  double value() const { return value_; }
  bool is_infinite() const;

  // Budget share `fraction` of this one; `fraction` must be positive.
  Epsilon Scaled(double fraction) const;

  // "inf" or the shortest round-trip decimal.
  std::string ToString() const;

  friend bool operator==(const Epsilon&, const Epsilon&) = default;

 private:
  double value_;
};

// One draw from Laplace(0, scale) by inverse CDF from a single uniform.
// Throws InvalidArgument if scale is not a positive finite number.
double LaplaceSample(double scale, RngStream& rng);

// Laplace noise calibrated to (sensitivity, epsilon): a draw of scale
// sensitivity / epsilon, or exactly 0 when epsilon is infinite (no draw is
// consumed in that case).
double LaplaceNoise(double sensitivity, const Epsilon& epsilon,
                    RngStream& rng);

// Exponential mechanism: returns index j with probability proportional to
// exp(epsilon * u_j / (2 * sensitivity)).
//
// Sampling is a race: candidate j arrives at time E_j * exp(-w_j) with
// E_j ~ Exp(1) and w_j its log-weight, and the first arrival wins. Only log
// arrival times are compared, so the normalising constant is never formed
// and utilities spanning many orders of magnitude stay finite. Ties resolve
// to the lowest index. With an infinite epsilon returns the first argmax.
//
// Throws InvalidArgument on an empty list, a non-finite utility or a
// non-positive sensitivity.
size_t SelectExponential(std::span<const double> utilities,
                         const Epsilon& epsilon, double sensitivity,
                         RngStream& rng);

// Budget of an epsilon-DP mechanism run on a uniformly subsampled fraction
// gamma of the data, drawn without replacement: log(1 + gamma(e^eps - 1)).
// gamma must lie in (0, 1]. Infinite stays infinite.
Epsilon SubsampledEpsilon(const Epsilon& epsilon, double gamma);

// Inverse of SubsampledEpsilon: the base budget whose amplified value is
// `target`, i.e. log(1 + (e^target - 1) / gamma).
Epsilon RequiredBaseEpsilon(const Epsilon& target, double gamma);

}  // namespace dpboost

#endif  // DPBOOST_MECHANISMS_H_
