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
#include "dpboost/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& key, const std::string& what) {
  throw InvalidArgument("invalid " + key + ": " + what);
}

int64_t AsInt(const std::string& key, const json& v, int64_t lo) {
  if (v.is_number_unsigned() &&
      v.get<uint64_t>() > static_cast<uint64_t>(
                              std::numeric_limits<int64_t>::max())) {
    Bad(key, "out of range");
  }
  if (!v.is_number_integer()) Bad(key, "expected an integer");
  const int64_t x = v.get<int64_t>();
  if (x < lo) Bad(key, "must be >= " + std::to_string(lo));
  return x;
}

int AsInt32(const std::string& key, const json& v, int64_t lo) {
  const int64_t x = AsInt(key, v, lo);
  if (x > std::numeric_limits<int>::max()) Bad(key, "out of range");
  return static_cast<int>(x);
}

double AsNumber(const std::string& key, const json& v) {
  if (!v.is_number()) Bad(key, "expected a number");
  return v.get<double>();
}

std::string AsString(const std::string& key, const json& v) {
  if (!v.is_string()) Bad(key, "expected a string");
  return v.get<std::string>();
}

Epsilon AsEpsilon(const std::string& key, const json& v) {
  try {
    if (v.is_string()) return Epsilon::Parse(v.get<std::string>());
    if (v.is_number()) return Epsilon(v.get<double>());
  } catch (const InvalidArgument& e) {
    Bad(key, e.what());
  }
  Bad(key, "expected a positive number or \"inf\"");
}

std::vector<Epsilon> AsEpsilonList(const std::string& key, const json& v) {
  std::vector<Epsilon> out;
  if (v.is_string()) {
    // Comma-separated form, convenient on the command line.
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(AsEpsilon(key, item));
  } else if (v.is_array()) {
    for (const json& item : v) out.push_back(AsEpsilon(key, item));
  } else {
    out.push_back(AsEpsilon(key, v));
  }
  if (out.empty()) Bad(key, "needs at least one value");
  return out;
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "trees",          "max_depth",       "lambda",         "eta",
      "subsample",      "min_child",       "bins",           "candidates",
      "epsilon",        "epsilon_per_tree", "sketch_fraction", "leaf_fraction",
      "split_fraction", "g_star",          "leaf_mode",      "seed",
      "data",           "bounds",          "label",          "model",
      "test",           "metric",          "trials",         "epsilons",
      "out",            "kind",            "rows",           "features",
      "bounds_out"};
  return keys;
}

void ApplyConfigValue(RunConfig& config, const std::string& key,
                      const json& value) {
  TrainParams& p = config.params;
  if (key == "trees") {
    p.num_trees = AsInt32(key, value, 0);
  } else if (key == "max_depth") {
    p.max_depth = AsInt32(key, value, 0);
  } else if (key == "lambda") {
    p.lambda = AsNumber(key, value);
  } else if (key == "eta") {
    p.eta = AsNumber(key, value);
  } else if (key == "subsample") {
    p.subsample = AsNumber(key, value);
  } else if (key == "min_child") {
    p.min_child = static_cast<size_t>(AsInt(key, value, 1));
  } else if (key == "bins") {
    p.num_bins = AsInt32(key, value, 2);
  } else if (key == "candidates") {
    p.max_candidates = AsInt32(key, value, 1);
  } else if (key == "epsilon") {
    config.epsilon = AsEpsilon(key, value);
  } else if (key == "epsilon_per_tree") {
    config.epsilon_per_tree = AsEpsilon(key, value);
  } else if (key == "sketch_fraction") {
    p.fractions.sketch = AsNumber(key, value);
  } else if (key == "leaf_fraction") {
    p.fractions.leaf = AsNumber(key, value);
  } else if (key == "split_fraction") {
    p.fractions.split = AsNumber(key, value);
  } else if (key == "g_star") {
    p.g_star = AsNumber(key, value);
  } else if (key == "leaf_mode") {
    p.leaf_mode = ParseLeafMode(AsString(key, value));
  } else if (key == "seed") {
    config.seed = static_cast<uint64_t>(AsInt(key, value, 0));
  } else if (key == "data") {
    config.data = AsString(key, value);
  } else if (key == "bounds") {
    config.bounds = AsString(key, value);
  } else if (key == "label") {
    config.label = AsString(key, value);
  } else if (key == "model") {
    config.model = AsString(key, value);
  } else if (key == "test") {
    config.test = AsString(key, value);
  } else if (key == "metric") {
    config.metric = AsString(key, value);
    if (config.metric != "rmse" && config.metric != "accuracy") {
      Bad(key, "expected rmse or accuracy");
    }
  } else if (key == "trials") {
    config.trials = AsInt32(key, value, 1);
  } else if (key == "epsilons") {
    config.epsilons = AsEpsilonList(key, value);
  } else if (key == "out") {
    config.out = AsString(key, value);
  } else if (key == "kind") {
    config.kind = AsString(key, value);
    if (config.kind != "regression" && config.kind != "classification") {
      Bad(key, "expected regression or classification");
    }
  } else if (key == "rows") {
    config.rows = static_cast<size_t>(AsInt(key, value, 1));
  } else if (key == "features") {
    config.features = static_cast<size_t>(AsInt(key, value, 1));
  } else if (key == "bounds_out") {
    config.bounds_out = AsString(key, value);
  } else {
    throw InvalidArgument("unknown config key: " + key);
  }
}

void ApplyConfigObject(RunConfig& config, const json& object) {
  if (!object.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    ApplyConfigValue(config, key, value);
  }
}

json LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config " + path + " parse error at byte " +
                          std::to_string(e.byte));
  }
}

json ParseFlagValue(const std::string& text) {
  json v = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (v.is_discarded()) return text;
  return v;
}

Epsilon PerTreeEpsilon(const Epsilon& total, int num_trees, double gamma) {
  if (total.is_infinite() || num_trees <= 0) return total;
  return RequiredBaseEpsilon(total.Scaled(1.0 / num_trees), gamma);
}

void FinalizeConfig(RunConfig& config) {
  if (config.epsilon && config.epsilon_per_tree) {
    Bad("epsilon", "give either epsilon or epsilon_per_tree, not both");
  }
  TrainParams& p = config.params;
  // Validate first so the amplification inverse sees a legal gamma.
  p.Validate();
  if (config.epsilon_per_tree) {
    p.epsilon_per_tree = *config.epsilon_per_tree;
  } else {
    p.epsilon_per_tree = PerTreeEpsilon(config.epsilon.value_or(Epsilon(1.0)),
                                        p.num_trees, p.subsample);
  }
}

}  // namespace dpboost
