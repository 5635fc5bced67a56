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

#include "fogdeploy/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

double UserDistance(Point fog, Point user) {
  return std::hypot(user.x - fog.x, user.y - fog.y);
}

double DistancePriority(double distance, double distance_cap) {
  if (!(distance_cap > 0.0)) throw DomainError("distance cap must be positive");
  if (!(distance >= 0.0) || distance > distance_cap) {
    throw DomainError("user outside the fog coverage radius");
  }
  return distance / distance_cap;
}

double LatencyPriority(double latency, std::span<const double> all_latencies) {
  if (all_latencies.empty()) throw DomainError("no latencies to normalize against");
  double max_latency = 0.0;
  for (double l : all_latencies) {
    if (!(l > 0.0)) throw DomainError("latencies must be positive");
    max_latency = std::max(max_latency, l);
  }
  if (!(latency > 0.0)) throw DomainError("latencies must be positive");
  if (latency > max_latency) throw DomainError("latency not among the user latencies");
  return latency / max_latency;
}

double UserPriority(double distance_priority, double latency_priority,
                    double p_omega) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(distance_priority) || !in_unit(latency_priority) || !in_unit(p_omega)) {
    throw DomainError("user priority arguments must lie in [0, 1]");
  }
  return p_omega * distance_priority + latency_priority * (1.0 - p_omega);
}

double FunctionPriority(const ServerlessFunction& fn, const Ssr& ssr, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (ssr.functions.empty()) throw DomainError("empty SSR");
  double max_code = 0.0;
  double max_input = 0.0;
  for (const ServerlessFunction& f : ssr.functions) {
    max_code = std::max(max_code, f.code_size);
    max_input = std::max(max_input, f.input_size);
  }
  if (!(max_code > 0.0) || !(max_input > 0.0)) {
    throw DomainError("degenerate SSR: zero maximum code or input size");
  }
  const double critical = (5.0 - fn.critical_value) / 5.0;
  const double code = (max_code - fn.code_size) / max_code;
  const double input = (max_input - fn.input_size) / max_input;
  return 1.0 / (delta + critical * code * input);
}

}  // namespace fogdeploy
