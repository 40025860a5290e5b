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
#include "dpboost/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string_view>

#include "dpboost/errors.h"

namespace dpboost {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> ParseCell(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(),
                                   value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

Range ParseRange(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max") ||
      !j["min"].is_number() || !j["max"].is_number()) {
    throw DataError("bounds: " + where + " needs numeric \"min\" and \"max\"");
  }
  Range r{j["min"].get<double>(), j["max"].get<double>()};
  if (!(r.lower <= r.upper) || !std::isfinite(r.lower) ||
      !std::isfinite(r.upper)) {
    throw DataError("bounds: " + where + " has min > max");
  }
  return r;
}

}  // namespace

double Range::Clamp(double x) const { return std::clamp(x, lower, upper); }

int FeatureBounds::Find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

double FeatureBounds::NormalizeLabel(double raw) const {
  if (label.degenerate()) return 0.0;
  const double x = label.Clamp(raw);
  const double y = 2.0 * (x - label.lower) / (label.upper - label.lower) - 1.0;
  return std::clamp(y, -1.0, 1.0);
}

double FeatureBounds::DenormalizeLabel(double normalized) const {
  return label.lower + (normalized + 1.0) * 0.5 * (label.upper - label.lower);
}

FeatureBounds FeatureBounds::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("features") ||
      !j["features"].is_array() || !j.contains("label")) {
    throw DataError("bounds: expected {\"features\": [...], \"label\": {...}}");
  }
  FeatureBounds b;
  for (size_t i = 0; i < j["features"].size(); ++i) {
    const auto& f = j["features"][i];
    const std::string where = "features[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string()) {
      throw DataError("bounds: " + where + " needs a string \"name\"");
    }
    b.names.push_back(f["name"].get<std::string>());
    b.features.push_back(ParseRange(f, where));
  }
  b.label = ParseRange(j["label"], "label");
  return b;
}

nlohmann::json FeatureBounds::ToJson() const {
  nlohmann::json features = nlohmann::json::array();
  for (size_t k = 0; k < size(); ++k) {
    features.push_back({{"name", names[k]},
                        {"min", this->features[k].lower},
                        {"max", this->features[k].upper}});
  }
  return {{"features", features},
          {"label", {{"min", label.lower}, {"max", label.upper}}}};
}

FeatureBounds LoadBounds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open bounds file " + path);
  try {
    return FeatureBounds::FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

void SaveBounds(const FeatureBounds& bounds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << bounds.ToJson().dump(2) << "\n";
}

Dataset::Dataset(std::vector<double> features, size_t num_features,
                 std::vector<double> labels,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      num_features_(num_features),
      labels_(std::move(labels)),
      names_(std::move(feature_names)) {
  if (num_features_ == 0) throw DataError("dataset needs at least one feature");
  if (features_.size() != labels_.size() * num_features_) {
    throw DataError("feature matrix size does not match rows x features");
  }
  if (!names_.empty() && names_.size() != num_features_) {
    throw DataError("feature name count does not match feature count");
  }
  for (double x : features_) {
    if (!std::isfinite(x)) throw DataError("non-finite feature value");
  }
  for (double y : labels_) {
    if (!(y >= -1.0 && y <= 1.0)) {
      throw DataError("label outside [-1, 1] after normalisation");
    }
  }
}

Dataset Dataset::Select(std::span<const size_t> indices) const {
  std::vector<double> features;
  features.reserve(indices.size() * num_features_);
  std::vector<double> labels;
  labels.reserve(indices.size());
  for (size_t i : indices) {
    if (i >= num_rows()) throw InvalidArgument("row index out of range");
    auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(std::move(features), num_features_, std::move(labels),
                 names_);
}

CsvLoadResult LoadCsv(const std::string& path, const FeatureBounds& bounds,
                      const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const auto header = SplitCommas(line);

  int label_col = -1;
  // column_of_feature[k] = CSV column holding bounds feature k.
  std::vector<int> column_of_feature(bounds.size(), -1);
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string name(header[c]);
    if (name == label_column) {
      label_col = static_cast<int>(c);
      continue;
    }
    const int k = bounds.Find(name);
    if (k < 0) {
      throw InvalidArgument(path + ": no bounds for feature column '" + name +
                            "'");
    }
    column_of_feature[k] = static_cast<int>(c);
  }
  if (label_col < 0) {
    throw InvalidArgument(path + ": unknown label column '" + label_column +
                          "'");
  }
  for (size_t k = 0; k < bounds.size(); ++k) {
    if (column_of_feature[k] < 0) {
      throw InvalidArgument(path + ": bounds feature '" + bounds.names[k] +
                            "' has no column");
    }
  }

  const size_t m = bounds.size();
  std::vector<double> features;
  std::vector<double> labels;
  std::vector<double> row(header.size());
  size_t rejected = 0;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    const auto cells = SplitCommas(line);
    bool ok = cells.size() == header.size();
    for (size_t c = 0; ok && c < cells.size(); ++c) {
      auto v = ParseCell(cells[c]);
      if (!v) {
        ok = false;
      } else {
        row[c] = *v;
      }
    }
    if (!ok) {
      ++rejected;
      continue;
    }
    for (size_t k = 0; k < m; ++k) {
      features.push_back(bounds.features[k].Clamp(row[column_of_feature[k]]));
    }
    labels.push_back(bounds.NormalizeLabel(row[label_col]));
  }
  if (labels.empty()) {
    throw DataError(path + ": no valid rows (" + std::to_string(rejected) +
                    " rejected)");
  }
  return {Dataset(std::move(features), m, std::move(labels), bounds.names),
          rejected};
}

void SaveCsv(const Dataset& dataset, const FeatureBounds& bounds,
             const std::string& label_column, const std::string& path) {
  if (bounds.size() != dataset.num_features()) {
    throw InvalidArgument("bounds do not match dataset feature count");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (size_t k = 0; k < bounds.size(); ++k) out << bounds.names[k] << ",";
  out << label_column << "\n";
  char buf[32];
  auto write = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
  };
  for (size_t i = 0; i < dataset.num_rows(); ++i) {
    for (double x : dataset.row(i)) {
      write(x);
      out << ",";
    }
    write(bounds.DenormalizeLabel(dataset.label(i)));
    out << "\n";
  }
}

std::vector<size_t> SampleRowIndices(size_t n, double gamma, RngStream& rng) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("subsample fraction must lie in (0, 1]");
  }
  // The small slack keeps products like 0.29 * 100 from flooring to 28.
  const auto k =
      static_cast<size_t>(std::floor(gamma * static_cast<double>(n) + 1e-9));
  if (k == 0) {
    throw InvalidArgument("subsample of " + std::to_string(n) +
                          " rows at fraction " + std::to_string(gamma) +
                          " is empty");
  }
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  if (k < n) {
    // Partial Fisher-Yates: the first k slots end up a uniform k-subset.
    for (size_t i = 0; i < k; ++i) {
      const size_t j = i + rng.UniformIndex(n - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

Dataset SubsampleRows(const Dataset& dataset, double gamma, RngStream& rng) {
  const auto idx = SampleRowIndices(dataset.num_rows(), gamma, rng);
  return dataset.Select(idx);
}

std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& dataset,
                                           double test_fraction,
                                           RngStream& rng) {
  const size_t n = dataset.num_rows();
  const auto n_test =
      static_cast<size_t>(std::llround(test_fraction * static_cast<double>(n)));
  if (!(test_fraction > 0.0 && test_fraction < 1.0) || n_test == 0 ||
      n_test >= n) {
    throw InvalidArgument("test fraction leaves an empty split");
  }
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i + 1 < n; ++i) {
    std::swap(idx[i], idx[i + rng.UniformIndex(n - i)]);
  }
  std::vector<size_t> test(idx.begin(), idx.begin() + n_test);
  std::vector<size_t> train(idx.begin() + n_test, idx.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {dataset.Select(train), dataset.Select(test)};
}

SyntheticKind ParseSyntheticKind(const std::string& text) {
  if (text == "classification") return SyntheticKind::kClassification;
  if (text == "regression") return SyntheticKind::kRegression;
  throw InvalidArgument("synthetic kind must be 'classification' or "
                        "'regression', got '" + text + "'");
}

SyntheticData GenerateSynthetic(SyntheticKind kind, size_t n, size_t m,
                                uint64_t seed) {
  if (n == 0 || m == 0) {
    throw InvalidArgument("synthetic data needs n >= 1 and m >= 1");
  }
  constexpr double kNoise = 0.1;
  RngStream teacher_rng(seed, {0});
  std::vector<double> w(m);
  double norm = 0.0;
  for (double& wk : w) {
    wk = teacher_rng.StandardNormal();
    norm += wk * wk;
  }
  norm = std::sqrt(norm);
  for (double& wk : w) wk /= norm;

  FeatureBounds bounds;
  for (size_t k = 0; k < m; ++k) {
    bounds.names.push_back("x" + std::to_string(k));
    bounds.features.push_back({-1.0, 1.0});
  }
  bounds.label = kind == SyntheticKind::kClassification ? Range{-1.0, 1.0}
                                                        : Range{-2.0, 2.0};

  RngStream row_rng(seed, {1});
  std::vector<double> features(n * m);
  std::vector<double> labels(n);
  for (size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const double x = 2.0 * row_rng.Uniform() - 1.0;
      features[i * m + k] = x;
      dot += w[k] * x;
    }
    const double raw = dot + kNoise * row_rng.StandardNormal();
    labels[i] = kind == SyntheticKind::kClassification
                    ? (raw >= 0.0 ? 1.0 : -1.0)
                    : bounds.NormalizeLabel(raw);
  }
  return {Dataset(std::move(features), m, std::move(labels), bounds.names),
          std::move(bounds)};
}

}  // namespace dpboost
