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
#ifndef DPBOOST_ERRORS_H_
#define DPBOOST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dpboost {

// Root of the library's exception hierarchy. The CLI maps each subclass to
// a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument or configuration value is out of range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data (CSV, bounds, model JSON) is unreadable or malformed.
class DataError : public Error {
 public:
  using Error::Error;
};

// An internal invariant was broken. Always a defect, never a user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dpboost

#endif  // DPBOOST_ERRORS_H_
