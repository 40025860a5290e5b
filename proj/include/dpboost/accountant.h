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
#ifndef DPBOOST_ACCOUNTANT_H_
#define DPBOOST_ACCOUNTANT_H_

#include <string>
#include <vector>

#include "dpboost/mechanisms.h"

namespace dpboost {

// Ledger of pure-DP charges under basic composition.
//
// Sequential charges add up. Charges sharing a parallel group act on
// disjoint data and contribute only their maximum. Total() walks the ledger
// in insertion order and adds each group's maximum at the position where the
// group first appears, so two ledgers with the same sequence of
// sequential/group items produce bit-identical totals.
//
// Not thread-safe: callers serialize charging.
class PrivacyAccountant {
 public:
  struct Entry {
    std::string label;
    double epsilon;      // +inf for a non-private charge.
    std::string group;   // Empty for sequential charges.
  };

  void Charge(std::string label, const Epsilon& epsilon);
  void ChargeParallel(std::string group, std::string label,
                      const Epsilon& epsilon);

  // Runs `inner` (an accountant for one mechanism applied to a uniformly
  // subsampled gamma-fraction) through amplification and records the
  // result as a single sequential charge. An empty `inner` charges nothing.
  void ChargeSubsampled(std::string label, const PrivacyAccountant& inner,
                        double gamma);

  // 0 for an empty ledger, +inf if any charge was non-private.
  double Total() const;

  bool non_private() const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

}  // namespace dpboost

#endif  // DPBOOST_ACCOUNTANT_H_
