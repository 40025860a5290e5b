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
#ifndef DPBOOST_CONFIG_H_
#define DPBOOST_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpboost/mechanisms.h"
#include "dpboost/params.h"
#include "json.hpp"

namespace dpboost {

// Everything a CLI command reads. Built from a flat JSON object whose keys
// are listed in ConfigKeys(); command-line flags of the same name override
// file values.
//
// The privacy budget is given either as a training total ("epsilon",
// default 1) or directly per tree ("epsilon_per_tree"), not both. A total
// is split evenly across trees after undoing subsampling amplification.
struct RunConfig {
  TrainParams params;
  std::optional<Epsilon> epsilon;
  std::optional<Epsilon> epsilon_per_tree;

  uint64_t seed = 0;
  std::string data;
  std::string bounds;
  std::string label = "label";
  std::string model;
  std::string test;
  std::string out;
  std::string bounds_out;
  std::string metric = "rmse";
  int trials = 1;
  // Training totals for `sweep`.
  std::vector<Epsilon> epsilons;
  // `synth` only.
  std::string kind = "regression";
  size_t rows = 1000;
  size_t features = 10;
};

// All accepted keys, in documentation order.
const std::vector<std::string>& ConfigKeys();

// Sets one key. Throws InvalidArgument naming the key for an unknown key or
// a value of the wrong type or range.
void ApplyConfigValue(RunConfig& config, const std::string& key,
                      const nlohmann::json& value);

// Applies every member of a JSON object.
void ApplyConfigObject(RunConfig& config, const nlohmann::json& object);

// Reads a JSON config file. Throws InvalidArgument if it does not parse.
nlohmann::json LoadConfigFile(const std::string& path);

// Interprets a command-line flag value: JSON when it parses as JSON,
// otherwise the raw text as a string.
nlohmann::json ParseFlagValue(const std::string& text);

// Per-tree budget whose subsampled K-fold composition equals `total`.
// Infinite totals stay infinite; K = 0 returns `total` unchanged.
Epsilon PerTreeEpsilon(const Epsilon& total, int num_trees, double gamma);

// Resolves the budget into config.params.epsilon_per_tree and validates
// the parameters. Throws InvalidArgument naming the offending key.
void FinalizeConfig(RunConfig& config);

}  // namespace dpboost

#endif  // DPBOOST_CONFIG_H_
