// Copyright 2026 The dpkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPKIT_ERRORS_HPP
#define DPKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dpkit {

// Bad argument values: dimension mismatch, non-positive-definite matrix,
// out-of-range fractions and budgets.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sampler was handed a score field with no finite-score cell.
class EmptySupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mechanism was handed a configuration that fails its preconditions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The auditor cannot enumerate the mechanism's output events.
class AuditUnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An experiment was requested outside the regime its analysis covers.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpkit

#endif  // DPKIT_ERRORS_HPP
