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
#include "dpboost/accountant.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace dpboost {

void PrivacyAccountant::Charge(std::string label, const Epsilon& epsilon) {
  entries_.push_back({std::move(label), epsilon.value(), std::string()});
}

void PrivacyAccountant::ChargeParallel(std::string group, std::string label,
                                       const Epsilon& epsilon) {
  if (group.empty()) {
    Charge(std::move(label), epsilon);
    return;
  }
  entries_.push_back({std::move(label), epsilon.value(), std::move(group)});
}

void PrivacyAccountant::ChargeSubsampled(std::string label,
                                         const PrivacyAccountant& inner,
                                         double gamma) {
  const double inner_total = inner.Total();
  if (inner_total == 0.0) return;
  Charge(std::move(label), SubsampledEpsilon(Epsilon(inner_total), gamma));
}

double PrivacyAccountant::Total() const {
  std::unordered_map<std::string, double> group_max;
  for (const Entry& e : entries_) {
    if (e.group.empty()) continue;
    auto [it, inserted] = group_max.try_emplace(e.group, e.epsilon);
    if (!inserted) it->second = std::max(it->second, e.epsilon);
  }
  double total = 0.0;
  std::unordered_set<std::string> seen;
  for (const Entry& e : entries_) {
    if (e.group.empty()) {
      total += e.epsilon;
    } else if (seen.insert(e.group).second) {
      total += group_max[e.group];
    }
  }
  return total;
}

bool PrivacyAccountant::non_private() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return std::isinf(e.epsilon); });
}

}  // namespace dpboost
