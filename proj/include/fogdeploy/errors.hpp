// Copyright 2026 The fogdeploy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fogdeploy {

// Input outside the mathematical domain of a formula (e.g. a user outside
// the coverage disc, an empty SSR).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation applied to a placement/episode in the wrong state (unassigned
// function, stepping a finished episode).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An action that breaks a per-function platform limit.
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// NaN/Inf in network parameters, inputs or losses.
class NumericFault : public std::runtime_error {
 public:
  NumericFault(const std::string& what, long episode = -1)
      : std::runtime_error(what), episode_(episode) {}
  long episode() const { return episode_; }

 private:
  long episode_;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Workload whose configured ranges cannot be hosted even by the cloud.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fogdeploy
