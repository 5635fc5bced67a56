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

#include <span>

#include "fogdeploy/domain.hpp"

namespace fogdeploy {

// Euclidean distance between the fog node and a user, in km.
double UserDistance(Point fog, Point user);

// d / D. Throws DomainError when the user lies outside the coverage disc.
double DistancePriority(double distance, double distance_cap);

// l / max(all). Throws DomainError on an empty list or non-positive values.
double LatencyPriority(double latency, std::span<const double> all_latencies);

// Blend of distance and latency priority weighted by p_omega.
double UserPriority(double distance_priority, double latency_priority,
                    double p_omega);

// Priority of a function inside its SSR, in [1/(delta+1), 1/delta]. Larger
// means a stronger preference for the fog. The size maxima range over the
// functions of the same SSR, so the result depends on its siblings.
double FunctionPriority(const ServerlessFunction& fn, const Ssr& ssr,
                        double delta = kDefaultDelta);

}  // namespace fogdeploy
