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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "../test_util.hpp"
#include "fogdeploy/errors.hpp"
#include "fogdeploy/rng.hpp"
#include "fogdeploy/scoring.hpp"

namespace fogdeploy {
namespace {

using testing::MakeFunction;

constexpr double kTol = 1e-9;

TEST(UserDistanceTest, Examples) {
  EXPECT_NEAR(UserDistance({0, 0}, {3, 4}), 5.0, kTol);
  EXPECT_NEAR(UserDistance({7, 2}, {7, 2}), 0.0, kTol);
  EXPECT_NEAR(UserDistance({1, 1}, {4, 5}), 5.0, kTol);
}

TEST(UserDistanceTest, SymmetricAndNonNegative) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Point a{rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    const Point b{rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    EXPECT_GE(UserDistance(a, b), 0.0);
    EXPECT_EQ(UserDistance(a, b), UserDistance(b, a));
  }
}

TEST(DistancePriorityTest, Examples) {
  EXPECT_NEAR(DistancePriority(0.0, 100.0), 0.0, kTol);
  EXPECT_NEAR(DistancePriority(100.0, 100.0), 1.0, kTol);
  EXPECT_NEAR(DistancePriority(25.0, 100.0), 0.25, kTol);
}

TEST(DistancePriorityTest, Errors) {
  EXPECT_THROW(DistancePriority(101.0, 100.0), DomainError);
  EXPECT_THROW(DistancePriority(1.0, 0.0), DomainError);
  EXPECT_THROW(DistancePriority(-1.0, 10.0), DomainError);
}

TEST(LatencyPriorityTest, Examples) {
  const std::vector<double> l = {20.0, 80.0, 40.0};
  EXPECT_NEAR(LatencyPriority(80.0, l), 1.0, kTol);
  EXPECT_NEAR(LatencyPriority(20.0, l), 0.25, kTol);
  const std::vector<double> equal = {30.0, 30.0, 30.0};
  for (double v : equal) EXPECT_NEAR(LatencyPriority(v, equal), 1.0, kTol);
}

TEST(LatencyPriorityTest, Errors) {
  EXPECT_THROW(LatencyPriority(1.0, std::vector<double>{}), DomainError);
  EXPECT_THROW(LatencyPriority(1.0, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST(LatencyPriorityTest, RankInvariantUnderScaling) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> l(8);
    for (double& v : l) v = rng.Uniform(5.0, 100.0);
    const double scale = rng.Uniform(0.01, 100.0);
    std::vector<double> scaled(l);
    for (double& v : scaled) v *= scale;
    std::vector<std::size_t> a(l.size()), b(l.size());
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    std::sort(a.begin(), a.end(), [&](auto x, auto y) {
      return LatencyPriority(l[x], l) < LatencyPriority(l[y], l);
    });
    std::sort(b.begin(), b.end(), [&](auto x, auto y) {
      return LatencyPriority(scaled[x], scaled) < LatencyPriority(scaled[y], scaled);
    });
    EXPECT_EQ(a, b);
  }
}

TEST(UserPriorityTest, Examples) {
  EXPECT_NEAR(UserPriority(0.3, 0.9, 1.0), 0.3, kTol);
  EXPECT_NEAR(UserPriority(0.3, 0.9, 0.0), 0.9, kTol);
  EXPECT_NEAR(UserPriority(0.4, 0.8, 0.5), 0.6, kTol);
  EXPECT_THROW(UserPriority(1.2, 0.5, 0.5), DomainError);
  EXPECT_THROW(UserPriority(0.2, 0.5, -0.1), DomainError);
}

TEST(UserPriorityTest, HalfBlendIsMeanAndStaysBetween) {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double pd = rng.Uniform();
    const double pl = rng.Uniform();
    const double w = rng.Uniform();
    EXPECT_NEAR(UserPriority(pd, pl, 0.5), 0.5 * (pd + pl), 1e-15);
    const double p = UserPriority(pd, pl, w);
    EXPECT_GE(p, std::min(pd, pl) - 1e-15);
    EXPECT_LE(p, std::max(pd, pl) + 1e-15);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(UserPriorityTest, GeneratedUsersInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_ssrs = {10, 10};
    cfg.functions_per_ssr = {1, 1};
    for (const User& u : GenerateBucket(cfg).users) {
      ASSERT_GE(u.priority, 0.0);
      ASSERT_LE(u.priority, 1.0);
    }
  }
}

TEST(FunctionPriorityTest, Examples) {
  Ssr ssr;
  ssr.functions = {MakeFunction(100, 500, 1), MakeFunction(500, 2500, 3),
                   MakeFunction(200, 100, 5)};
  EXPECT_NEAR(FunctionPriority(ssr.functions[2], ssr, 0.2), 5.0, kTol);  // q = 5
  EXPECT_NEAR(FunctionPriority(ssr.functions[1], ssr, 0.2), 5.0, kTol);  // K = max K
  // 1 / (0.2 + 0.8 * 0.8 * 0.8)
  EXPECT_NEAR(FunctionPriority(ssr.functions[0], ssr, 0.2), 1.0 / 0.712, kTol);
  EXPECT_NEAR(FunctionPriority(ssr.functions[0], ssr, 0.2), 1.404494382022472, kTol);
}

TEST(FunctionPriorityTest, DegenerateSsrRejected) {
  Ssr ssr;
  ssr.functions = {MakeFunction(0, 500, 1), MakeFunction(0, 100, 1)};
  EXPECT_THROW(FunctionPriority(ssr.functions[0], ssr), DomainError);
  ssr.functions = {MakeFunction(10, 0, 1)};
  EXPECT_THROW(FunctionPriority(ssr.functions[0], ssr), DomainError);
  Ssr empty;
  EXPECT_THROW(FunctionPriority(MakeFunction(1, 1, 1), empty), DomainError);
}

TEST(FunctionPriorityTest, BoundedAndMonotone) {
  Rng rng(17);
  const double delta = 0.2;
  for (int trial = 0; trial < 2000; ++trial) {
    Ssr ssr;
    const int n = static_cast<int>(rng.UniformInt(1, 10));
    for (int j = 0; j < n; ++j) {
      ssr.functions.push_back(MakeFunction(rng.Uniform(10, 500), rng.Uniform(100, 2500),
                                           static_cast<int>(rng.UniformInt(1, 5))));
    }
    for (const auto& fn : ssr.functions) {
      const double p = FunctionPriority(fn, ssr, delta);
      ASSERT_GE(p, 1.0 / (delta + 1.0) - 1e-12);
      ASSERT_LE(p, 1.0 / delta + 1e-12);
    }
    // Raising a critical value never lowers the priority.
    Ssr raised = ssr;
    auto& f = raised.functions[0];
    if (f.critical_value < 5) {
      const double before = FunctionPriority(ssr.functions[0], ssr, delta);
      f.critical_value += 1;
      EXPECT_GE(FunctionPriority(f, raised, delta), before - 1e-12);
    }
    // Growing a size up to (not beyond) the SSR maximum never lowers it.
    Ssr grown = ssr;
    double max_code = 0;
    for (const auto& g : ssr.functions) max_code = std::max(max_code, g.code_size);
    const double before = FunctionPriority(ssr.functions[0], ssr, delta);
    grown.functions[0].code_size = rng.Uniform(ssr.functions[0].code_size, max_code);
    EXPECT_GE(FunctionPriority(grown.functions[0], grown, delta), before - 1e-12);
  }
}

}  // namespace
}  // namespace fogdeploy
