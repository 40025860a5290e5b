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
#include "dpboost/rng.h"

#include <cmath>
#include <numbers>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveEngineSeed(uint64_t seed, const std::vector<uint64_t>& path) {
  uint64_t h = SplitMix64(seed);
  // Mixing the depth in keeps [a] and [a, 0] apart.
  for (uint64_t id : path) h = SplitMix64(h ^ SplitMix64(id + 1));
  return SplitMix64(h ^ path.size());
}

}  // namespace

RngStream::RngStream(uint64_t seed, std::vector<uint64_t> path)
    : seed_(seed),
      path_(std::move(path)),
      engine_(DeriveEngineSeed(seed_, path_)) {}

RngStream RngStream::Child(std::initializer_list<uint64_t> ids) const {
  std::vector<uint64_t> path = path_;
  path.insert(path.end(), ids.begin(), ids.end());
  return RngStream(seed_, std::move(path));
}

double RngStream::Uniform() {
  // 53 random bits centred in their cell: (k + 0.5) / 2^53.
  const uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

uint64_t RngStream::UniformIndex(uint64_t n) {
  if (n == 0) throw InvalidArgument("UniformIndex: n must be positive");
  // Rejection sampling on the top of the range removes modulo bias.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::StandardNormal() {
  // Box-Muller; the second variate is discarded to keep the stream stateless.
  const double u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dpboost
