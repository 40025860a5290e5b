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
#ifndef DPBOOST_COMMANDS_H_
#define DPBOOST_COMMANDS_H_

#include <ostream>
#include <string>

#include "dpboost/config.h"
#include "dpboost/dataset.h"
#include "json.hpp"

namespace dpboost {

// Each command takes a finalised config and returns its one-line JSON
// report. Commands whose primary output is a table write it to `out`
// when config.out is empty.

// Trains on config.data and writes config.model.
nlohmann::json CmdTrain(const RunConfig& config);

// Writes one prediction per row of config.data (raw label scale) as CSV
// with header "prediction".
nlohmann::json CmdPredict(const RunConfig& config, std::ostream& out);

// Scores config.model on config.test (or config.data) with config.metric.
nlohmann::json CmdEvaluate(const RunConfig& config);

// For every training total in config.epsilons and trial t, trains with seed
// config.seed + t and scores on config.test, or on a held-out 20% of
// config.data drawn from the same seed. CSV header:
// "epsilon,trial,metric,value".
nlohmann::json CmdSweep(const RunConfig& config, std::ostream& out);

// The privacy report training would produce, without reading any rows. The
// feature count comes from config.bounds when set, else config.features.
nlohmann::json CmdBudget(const RunConfig& config);

// Writes a synthetic dataset to config.out and its bounds to
// config.bounds_out.
nlohmann::json CmdSynth(const RunConfig& config);

// Deterministic 80/20 train/test split used by `sweep`.
std::pair<Dataset, Dataset> HoldoutSplit(const Dataset& data, uint64_t seed);

// Full CLI: parses argv, runs the subcommand, prints the report. Returns
// the process exit code: 0 success, 1 usage or config error, 2 data error,
// 3 internal invariant violation.
int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dpboost

#endif  // DPBOOST_COMMANDS_H_
