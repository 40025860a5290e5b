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
#include "dpboost/commands.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "dpboost/errors.h"
#include "dpboost/metrics.h"
#include "dpboost/model.h"
#include "dpboost/params.h"
#include "dpboost/trainer.h"

namespace dpboost {
namespace {

using nlohmann::json;

// Root path of the holdout split stream; trees use paths starting at their
// index, which never reaches this value.
constexpr uint64_t kHoldoutPath = ~uint64_t{0};
constexpr double kTestFraction = 0.2;

void Require(const std::string& value, const std::string& key) {
  if (value.empty()) throw InvalidArgument("missing required key: " + key);
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LoadedData {
  FeatureBounds bounds;
  Dataset dataset;
  size_t rejected_rows;
};

LoadedData Load(const RunConfig& config, const std::string& path) {
  Require(config.bounds, "bounds");
  FeatureBounds bounds = LoadBounds(config.bounds);
  CsvLoadResult csv = LoadCsv(path, bounds, config.label);
  if (csv.rejected_rows > 0) {
    std::fprintf(stderr, "%s: skipped %zu malformed rows\n", path.c_str(),
                 csv.rejected_rows);
  }
  return {std::move(bounds), std::move(csv.dataset), csv.rejected_rows};
}

void WriteTable(const std::string& path, const std::string& text,
                std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write " + path);
  file << text;
}

}  // namespace

std::pair<Dataset, Dataset> HoldoutSplit(const Dataset& data, uint64_t seed) {
  RngStream rng(seed, {kHoldoutPath});
  auto [train, test] = TrainTestSplit(data, kTestFraction, rng);
  return {std::move(train), std::move(test)};
}

json CmdTrain(const RunConfig& config) {
  Require(config.data, "data");
  Require(config.model, "model");
  const LoadedData d = Load(config, config.data);
  const auto start = std::chrono::steady_clock::now();
  const TrainResult result =
      Train(d.dataset, d.bounds.features, config.params, config.seed);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  SaveModel(result.model, config.model);
  json report = result.report.ToJson();
  report["train_seconds"] = seconds;
  report["rows"] = d.dataset.num_rows();
  report["rejected_rows"] = d.rejected_rows;
  report["model"] = config.model;
  return report;
}

json CmdPredict(const RunConfig& config, std::ostream& out) {
  Require(config.model, "model");
  Require(config.data, "data");
  const Ensemble model = LoadModel(config.model);
  const LoadedData d = Load(config, config.data);
  std::string table = "prediction\n";
  for (double p : PredictAll(model, d.dataset)) {
    table += FormatDouble(d.bounds.DenormalizeLabel(p)) + "\n";
  }
  WriteTable(config.out, table, out);
  return {{"rows", d.dataset.num_rows()},
          {"out", config.out.empty() ? "-" : config.out}};
}

json CmdEvaluate(const RunConfig& config) {
  Require(config.model, "model");
  const std::string& path = config.test.empty() ? config.data : config.test;
  Require(path, "test");
  const Metric metric = ParseMetric(config.metric);
  const Ensemble model = LoadModel(config.model);
  const LoadedData d = Load(config, path);
  return {{"metric", MetricName(metric)},
          {"value", Evaluate(model, d.dataset, d.bounds, metric)},
          {"rows", d.dataset.num_rows()}};
}

json CmdSweep(const RunConfig& config, std::ostream& out) {
  Require(config.data, "data");
  if (config.epsilons.empty()) {
    throw InvalidArgument("missing required key: epsilons");
  }
  const Metric metric = ParseMetric(config.metric);
  const LoadedData d = Load(config, config.data);
  std::optional<LoadedData> fixed_test;
  if (!config.test.empty()) fixed_test = Load(config, config.test);

  std::string table = "epsilon,trial,metric,value\n";
  size_t rows = 0;
  for (const Epsilon& total : config.epsilons) {
    TrainParams params = config.params;
    params.epsilon_per_tree =
        PerTreeEpsilon(total, params.num_trees, params.subsample);
    for (int trial = 0; trial < config.trials; ++trial) {
      const uint64_t seed = config.seed + static_cast<uint64_t>(trial);
      double value;
      if (fixed_test) {
        const TrainResult r = Train(d.dataset, d.bounds.features, params, seed);
        value = Evaluate(r.model, fixed_test->dataset, d.bounds, metric);
      } else {
        const auto [train, test] = HoldoutSplit(d.dataset, seed);
        const TrainResult r = Train(train, d.bounds.features, params, seed);
        value = Evaluate(r.model, test, d.bounds, metric);
      }
      table += total.ToString() + "," + std::to_string(trial) + "," +
               MetricName(metric) + "," + FormatDouble(value) + "\n";
      ++rows;
    }
  }
  WriteTable(config.out, table, out);
  return {{"rows", rows}, {"out", config.out.empty() ? "-" : config.out}};
}

json CmdBudget(const RunConfig& config) {
  const size_t m =
      config.bounds.empty() ? config.features : LoadBounds(config.bounds).size();
  return PreviewPrivacyReport(config.params, m).ToJson();
}

json CmdSynth(const RunConfig& config) {
  Require(config.out, "out");
  Require(config.bounds_out, "bounds_out");
  const SyntheticKind kind = ParseSyntheticKind(config.kind);
  const SyntheticData s =
      GenerateSynthetic(kind, config.rows, config.features, config.seed);
  SaveCsv(s.dataset, s.bounds, config.label, config.out);
  SaveBounds(s.bounds, config.bounds_out);
  return {{"rows", s.dataset.num_rows()},
          {"features", s.dataset.num_features()},
          {"out", config.out},
          {"bounds_out", config.bounds_out}};
}

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private gradient boosted trees"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> flags;

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"train", "Train a model and write it to --model"},
      {"predict", "Predict every row of --data"},
      {"evaluate", "Score a model with --metric"},
      {"sweep", "Train and score over --epsilons and --trials"},
      {"budget", "Preview the privacy report without training"},
      {"synth", "Generate a synthetic dataset"},
  };
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON config file");
    for (const std::string& key : ConfigKeys()) {
      sub->add_option("--" + key, flags[key], "Overrides config key " + key);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig config;
    if (!config_path.empty()) {
      ApplyConfigObject(config, LoadConfigFile(config_path));
    }
    const CLI::App* sub = app.get_subcommands().front();
    for (const std::string& key : ConfigKeys()) {
      if (sub->count("--" + key) > 0) {
        ApplyConfigValue(config, key, ParseFlagValue(flags[key]));
      }
    }
    FinalizeConfig(config);

    json report;
    if (command == "train") {
      report = CmdTrain(config);
    } else if (command == "predict") {
      report = CmdPredict(config, out);
    } else if (command == "evaluate") {
      report = CmdEvaluate(config);
    } else if (command == "sweep") {
      report = CmdSweep(config, out);
    } else if (command == "budget") {
      report = CmdBudget(config);
    } else {
      report = CmdSynth(config);
    }
    // Tables written to stdout already occupy it.
    const bool table_on_stdout =
        (command == "predict" || command == "sweep") && config.out.empty();
    if (table_on_stdout) {
      err << report.dump() << "\n";
    } else {
      out << report.dump() << "\n";
    }
    return 0;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace dpboost
