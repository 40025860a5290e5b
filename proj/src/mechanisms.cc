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
#include "dpboost/mechanisms.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this exponent the amplification formulas switch to a form that
// avoids overflowing exp().
constexpr double kLargeExponent = 30.0;

void CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("subsampling fraction must lie in (0, 1], got " +
                          std::to_string(gamma));
  }
}

}  // namespace

Epsilon::Epsilon(double value) : value_(value) {
  if (!(value > 0.0)) {
    throw InvalidArgument("epsilon must be positive, got " +
                          std::to_string(value));
  }
}

Epsilon Epsilon::Infinite() { return Epsilon(kInf); }

Epsilon Epsilon::Parse(const std::string& text) {
  if (text == "inf") return Infinite();
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InvalidArgument("cannot parse epsilon '" + text + "'");
  }
  return Epsilon(value);
}

bool Epsilon::is_infinite() const { return std::isinf(value_); }

Epsilon Epsilon::Scaled(double fraction) const {
  if (!(fraction > 0.0)) {
    throw InvalidArgument("budget fraction must be positive");
  }
  return Epsilon(value_ * fraction);
}

std::string Epsilon::ToString() const {
  if (is_infinite()) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, ptr);
}

double LaplaceSample(double scale, RngStream& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("Laplace scale must be positive and finite, got " +
                          std::to_string(scale));
  }
  // u is uniform on (-1/2, 1/2) and never hits either endpoint.
  const double u = rng.Uniform() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

double LaplaceNoise(double sensitivity, const Epsilon& epsilon,
                    RngStream& rng) {
  if (!(sensitivity > 0.0)) {
    throw InvalidArgument("sensitivity must be positive");
  }
  if (epsilon.is_infinite()) return 0.0;
  return LaplaceSample(sensitivity / epsilon.value(), rng);
}

size_t SelectExponential(std::span<const double> utilities,
                         const Epsilon& epsilon, double sensitivity,
                         RngStream& rng) {
  if (utilities.empty()) {
    throw InvalidArgument("exponential mechanism needs at least one candidate");
  }
  if (!(sensitivity > 0.0)) {
    throw InvalidArgument("sensitivity must be positive");
  }
  for (double u : utilities) {
    if (!std::isfinite(u)) {
      throw InvalidArgument("utilities must be finite");
    }
  }

  if (epsilon.is_infinite()) {
    size_t best = 0;
    for (size_t j = 1; j < utilities.size(); ++j) {
      if (utilities[j] > utilities[best]) best = j;
    }
    return best;
  }

  const double scale = epsilon.value() / (2.0 * sensitivity);
  size_t winner = 0;
  double winner_time = kInf;
  for (size_t j = 0; j < utilities.size(); ++j) {
    // log(E_j * exp(-w_j)) with E_j = -log(U).
    const double log_arrival =
        std::log(-std::log(rng.Uniform())) - scale * utilities[j];
    if (log_arrival < winner_time) {
      winner_time = log_arrival;
      winner = j;
    }
  }
  return winner;
}

Epsilon SubsampledEpsilon(const Epsilon& epsilon, double gamma) {
  CheckGamma(gamma);
  if (epsilon.is_infinite()) return epsilon;
  if (gamma == 1.0) return epsilon;
  const double eps = epsilon.value();
  if (eps > kLargeExponent) {
    // Same value rearranged so e^eps is never formed.
    return Epsilon(eps + std::log(gamma + (1.0 - gamma) * std::exp(-eps)));
  }
  return Epsilon(std::log1p(gamma * std::expm1(eps)));
}

Epsilon RequiredBaseEpsilon(const Epsilon& target, double gamma) {
  CheckGamma(gamma);
  if (target.is_infinite()) return target;
  if (gamma == 1.0) return target;
  const double t = target.value();
  if (t > kLargeExponent) {
    return Epsilon(t - std::log(gamma) +
                   std::log1p((gamma - 1.0) * std::exp(-t)));
  }
  return Epsilon(std::log1p(std::expm1(t) / gamma));
}

}  // namespace dpboost
