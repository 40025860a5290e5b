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
#ifndef DPBOOST_RNG_H_
#define DPBOOST_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace dpboost {

// Identifiers for the second component of a trainer substream path
// ([tree, kind, ...]).
enum StreamKind : uint64_t {
  kSubsampleStream = 1,
  kSketchStream = 2,
  kSplitStream = 3,
  kLeafStream = 4,
};

// A deterministic random stream addressed by (seed, path).
//
// The engine seed is a SplitMix64 fold of the root seed and every path
// element, so sibling paths such as [tree, sketch, 3] and [tree, sketch, 4]
// yield unrelated streams and work can be scheduled in any order without
// changing results. All derived variates are computed from raw 64-bit engine
// output; no implementation-defined std:: distributions are used, so streams
// are identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(uint64_t seed, std::vector<uint64_t> path = {});

  // A fresh stream whose path is this stream's path plus `ids`.
  RngStream Child(std::initializer_list<uint64_t> ids) const;
  RngStream Child(uint64_t id) const { return Child({id}); }

  uint64_t seed() const { return seed_; }
  const std::vector<uint64_t>& path() const { return path_; }

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double Uniform();

  // Uniform integer in [0, n). Requires n > 0.
  uint64_t UniformIndex(uint64_t n);

  double StandardNormal();

 private:
  uint64_t seed_;
  std::vector<uint64_t> path_;
  std::mt19937_64 engine_;
};

}  // namespace dpboost

#endif  // DPBOOST_RNG_H_
