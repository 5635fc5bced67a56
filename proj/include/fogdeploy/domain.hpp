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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fogdeploy {

enum class ResourceKind { kCpu = 0, kRam = 1, kStorage = 2, kNetIo = 3 };

inline constexpr std::array<ResourceKind, 4> kResourceKinds = {
    ResourceKind::kCpu, ResourceKind::kRam, ResourceKind::kStorage,
    ResourceKind::kNetIo};

const char* ToString(ResourceKind kind);

// CPU in cores, RAM and storage in MB, network I/O in KBps.
struct ResourceVector {
  double cpu = 0.0;
  double ram = 0.0;
  double storage = 0.0;
  double net_io = 0.0;

  double operator[](ResourceKind kind) const;
  double& operator[](ResourceKind kind);

  ResourceVector& operator+=(const ResourceVector& other);
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
    return a += b;
  }
  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

  // Componentwise a <= cap.
  bool FitsWithin(const ResourceVector& cap) const;
  bool AllNonNegativeFinite() const;
  bool AllPositiveFinite() const;
};

// Per-function limits imposed by one serverless platform. link_latency is
// the fog-to-cloud latency in ms and only meaningful for the cloud side.
struct EnvironmentLimits {
  ResourceVector per_function_cap;
  double code_size_limit = 0.0;   // MB
  double input_size_limit = 0.0;  // MB
  double link_latency = 0.0;      // ms
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct User {
  std::size_t id = 0;
  Point position;        // km, relative to the fog node
  double latency = 0.0;  // ms
  double priority = 0.0; // derived, in [0, 1]
};

struct FunctionId {
  std::size_t ssr = 0;
  std::size_t index = 0;
  friend bool operator==(const FunctionId&, const FunctionId&) = default;
};

struct ServerlessFunction {
  FunctionId id;
  double code_size = 0.0;   // MB
  double input_size = 0.0;  // MB
  int critical_value = 1;   // 1..5
  ResourceVector base_demand;
  ResourceVector supplementary_demand;
  double priority = 0.0;    // derived

  ResourceVector TotalDemand() const {
    return base_demand + supplementary_demand;
  }
};

struct Ssr {
  std::size_t user_id = 0;
  std::vector<ServerlessFunction> functions;
};

using ImportanceFactors = std::array<double, 4>;

inline constexpr double kDefaultDelta = 0.2;

struct SsrBucket {
  std::vector<User> users;
  std::vector<Ssr> ssrs;
  EnvironmentLimits fog;
  EnvironmentLimits cloud;
  ImportanceFactors importance_factors = {0.25, 0.25, 0.25, 0.25};
  double distance_cap = 100.0;  // km
  double priority_blend = 0.5;
  double delta = kDefaultDelta;

  std::size_t FunctionCount() const;
  const User& UserOf(const Ssr& ssr) const;
  const User& UserOf(std::size_t ssr_index) const {
    return UserOf(ssrs.at(ssr_index));
  }
  const ServerlessFunction& Function(FunctionId id) const {
    return ssrs.at(id.ssr).functions.at(id.index);
  }
  // Bucket-order (SSR-major, function-minor) flat index of each function.
  std::vector<FunctionId> FunctionIds() const;
};

// Fills User::priority and ServerlessFunction::priority from the primary
// fields. Every bucket constructor (generator, JSON loader) calls this once;
// the derived fields are never touched afterwards.
void ComputeDerivedFields(SsrBucket& bucket);

// <f, c> flags of one function. <0,0> is the unassigned state.
struct FunctionState {
  bool on_fog = false;
  bool on_cloud = false;

  bool Assigned() const { return on_fog != on_cloud; }
  bool Valid() const { return !(on_fog && on_cloud); }
  static FunctionState Fog() { return {true, false}; }
  static FunctionState Cloud() { return {false, true}; }
  friend bool operator==(const FunctionState&, const FunctionState&) = default;
};

class Placement {
 public:
  Placement() = default;
  // All functions <0,0>, shaped like the bucket.
  explicit Placement(const SsrBucket& bucket);

  FunctionState& operator[](FunctionId id) { return rows_.at(id.ssr).at(id.index); }
  const FunctionState& operator[](FunctionId id) const {
    return rows_.at(id.ssr).at(id.index);
  }
  const std::vector<FunctionState>& Row(std::size_t ssr) const { return rows_.at(ssr); }
  std::size_t SsrCount() const { return rows_.size(); }
  std::size_t FunctionCount() const;
  std::size_t FogCount() const;

  // Every function has exactly one flag set.
  bool Complete() const;
  bool ShapedLike(const SsrBucket& bucket) const;

  friend bool operator==(const Placement&, const Placement&) = default;

 private:
  std::vector<std::vector<FunctionState>> rows_;
};

// Whether the function satisfies the code-size, input-size and resource
// limits of one platform.
bool FitsPlatform(const ServerlessFunction& fn, const EnvironmentLimits& limits);

// Structural violations of the bucket (empty SSRs, importance factors,
// ranges, duplicate users). Empty when valid.
std::vector<std::string> ValidateBucket(const SsrBucket& bucket);

// Violations of a placement against the bucket: shape, completeness,
// <1,1> states and the per-platform size/input/resource limits.
std::vector<std::string> ValidatePlacement(const SsrBucket& bucket,
                                           const Placement& placement);

}  // namespace fogdeploy
