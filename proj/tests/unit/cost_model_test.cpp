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

#include "../test_util.hpp"
#include "fogdeploy/baselines.hpp"
#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/errors.hpp"
#include "fogdeploy/rng.hpp"

namespace fogdeploy {
namespace {

using testing::MakeBucket;
using testing::MakeFunction;

constexpr double kTol = 1e-9;
const ImportanceFactors kUniform = {0.25, 0.25, 0.25, 0.25};

EnvironmentLimits Limits(ResourceVector cap, double link = 0.0) {
  return {cap, 500.0, 2500.0, link};
}

const EnvironmentLimits kFog = Limits({2, 1024, 1024, 2048});
const EnvironmentLimits kCloud = Limits({6, 5120, 10240, 10240}, 40.0);
// Demands at exactly half of each cap.
const ResourceVector kHalfFog{1, 512, 512, 1024};
const ResourceVector kHalfCloud{3, 2560, 5120, 5120};

TEST(PerFunctionCapTest, Selectors) {
  EXPECT_EQ(PerFunctionCap(FunctionState::Fog(), kFog, kCloud), kFog.per_function_cap);
  EXPECT_EQ(PerFunctionCap(FunctionState::Cloud(), kFog, kCloud), kCloud.per_function_cap);
  EXPECT_THROW(PerFunctionCap(FunctionState{}, kFog, kCloud), StateError);
  EXPECT_THROW(PerFunctionCap(FunctionState{true, true}, kFog, kCloud), StateError);
}

TEST(PerFunctionCapTest, SelectorIdentityMatchesWeightedSum) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const bool fog = rng.Bernoulli(0.5);
    const FunctionState s{fog, !fog};
    const ResourceVector got = PerFunctionCap(s, kFog, kCloud);
    for (ResourceKind k : kResourceKinds) {
      const double expect = (s.on_fog ? 1.0 : 0.0) * kFog.per_function_cap[k] +
                            (s.on_cloud ? 1.0 : 0.0) * kCloud.per_function_cap[k];
      EXPECT_EQ(got[k], expect);
    }
  }
}

TEST(TotalDemandTest, Examples) {
  EXPECT_EQ(TotalDemand(MakeFunction(1, 1, 1, {1, 100, 10, 10})), (ResourceVector{1, 100, 10, 10}));
  EXPECT_EQ(TotalDemand(MakeFunction(1, 1, 1, {1, 100, 10, 10}, {1, 50, 20, 30})),
            (ResourceVector{2, 150, 30, 40}));
  EXPECT_EQ(TotalDemand(MakeFunction(1, 1, 1)), ResourceVector{});
}

TEST(SsrDemandTest, Examples) {
  Ssr one;
  one.functions = {MakeFunction(1, 1, 1, {1, 100, 10, 10}, {2, 3, 4, 5})};
  EXPECT_EQ(SsrBaseDemand(one), (ResourceVector{1, 100, 10, 10}));
  EXPECT_EQ(SsrSupplementaryDemand(one), (ResourceVector{2, 3, 4, 5}));

  Ssr two;
  two.functions = {MakeFunction(1, 1, 1, {1, 100, 10, 10}), MakeFunction(1, 1, 1, {2, 200, 20, 20})};
  EXPECT_EQ(SsrBaseDemand(two), (ResourceVector{3, 300, 30, 30}));
  EXPECT_EQ(SsrSupplementaryDemand(two), ResourceVector{});

  EXPECT_THROW(SsrBaseDemand(Ssr{}), DomainError);
  EXPECT_THROW(SsrSupplementaryDemand(Ssr{}), DomainError);
}

TEST(CommLatencyTest, Examples) {
  EXPECT_NEAR(CommLatency(FunctionState::Fog(), 0.6, 0.1), 0.6, kTol);
  EXPECT_NEAR(CommLatency(FunctionState::Cloud(), 0.6, 0.1), 0.7, kTol);
  EXPECT_NEAR(CommLatency(FunctionState::Cloud(), 0.0, 0.0), 0.0, kTol);
  EXPECT_THROW(CommLatency(FunctionState{}, 0.6, 0.1), StateError);
}

TEST(SsrCommLatencyTest, Examples) {
  Ssr one;
  one.functions = {MakeFunction(1, 1, 1)};
  EXPECT_NEAR(SsrCommLatency(one, {FunctionState::Cloud()}, 0.6, 0.1), 0.7, kTol);
  Ssr two;
  two.functions = {MakeFunction(1, 1, 1), MakeFunction(1, 1, 1)};
  EXPECT_NEAR(SsrCommLatency(two, {FunctionState::Fog(), FunctionState::Cloud()}, 0.6, 0.1), 1.3,
              kTol);
  EXPECT_NEAR(SsrCommLatency(two, {FunctionState::Fog(), FunctionState::Fog()}, 0.0, 0.1), 0.0,
              kTol);
  EXPECT_THROW(SsrCommLatency(two, {FunctionState::Fog(), FunctionState{}}, 0.6, 0.1), StateError);
}

TEST(CompLatencyTest, Examples) {
  EXPECT_NEAR(CompLatency({}, FunctionState::Fog(), kFog, kCloud, kUniform, 0.4, 0.4), 0.0, kTol);
  // 3 * 0.5 * 0.25 + 0.5 * 0.25 * 0.4
  EXPECT_NEAR(CompLatency(kHalfFog, FunctionState::Fog(), kFog, kCloud, kUniform, 0.4, 0.9), 0.425,
              kTol);
  EXPECT_NEAR(CompLatency(kHalfCloud, FunctionState::Cloud(), kFog, kCloud, kUniform, 0.9, 0.4),
              0.425, kTol);
  EXPECT_THROW(CompLatency(kHalfFog, FunctionState{}, kFog, kCloud, kUniform, 0.4, 0.4),
               StateError);
}

TEST(SsrCompLatencyTest, Examples) {
  EXPECT_NEAR(SsrCompLatency({0.425}, {3.0}), 0.425, kTol);
  EXPECT_NEAR(SsrCompLatency({0.4, 0.2}, {5.0, 2.5}), 0.5, kTol);
  EXPECT_NEAR(SsrCompLatency({0.0, 0.0, 0.0}, {1.0, 2.0, 5.0}), 0.0, kTol);
}

TEST(SsrObjectiveTest, SumOfCommAndComp) {
  // User at distance 20 of 100 with the maximal latency: P = 0.5*0.2 + 0.5*1 = 0.6.
  // Link latency 40 ms normalizes to 40/50 = 0.8.
  SsrBucket b = MakeBucket({{MakeFunction(100, 500, 3), MakeFunction(200, 1000, 2)}}, {50.0},
                           {Point{20.0, 0.0}});
  Placement p(b);
  p[FunctionId(0, 0)] = FunctionState::Fog();
  p[FunctionId(0, 1)] = FunctionState::Cloud();
  const CostBreakdown c = SsrObjective(b, 0, p);
  EXPECT_NEAR(c.comm, 0.6 + 1.4, kTol);
  EXPECT_NEAR(c.comp, 0.0, kTol);
  EXPECT_NEAR(c.total, 2.0, kTol);

  CostBreakdown manual{1.3, 0.5, 1.3 + 0.5};
  EXPECT_NEAR(manual.total, 1.8, kTol);

  p[FunctionId(0, 0)] = FunctionState{};
  EXPECT_THROW(SsrObjective(b, 0, p), StateError);
}

TEST(SsrObjectiveTest, SingleFunctionIsCommPlusComp) {
  SsrBucket b = MakeBucket({{MakeFunction(100, 500, 3, {1, 512, 512, 1024})}}, {50.0},
                           {Point{20.0, 0.0}});
  Placement p(b);
  p[FunctionId(0, 0)] = FunctionState::Fog();
  // l_i normalizes to 1: comp = 0.375 + 0.125 * 1.
  EXPECT_NEAR(SsrObjective(b, 0, p).total, 0.6 + 0.5, kTol);
}

// Independent recomputation of z_i straight from the formulas.
double ManualObjective(const SsrBucket& b, std::size_t i, const Placement& p) {
  double max_latency = 0;
  for (const User& u : b.users) max_latency = std::max(max_latency, u.latency);
  const User& u = b.UserOf(i);
  const double li = u.latency / max_latency;
  const double lf = b.cloud.link_latency / max_latency;
  double comm = 0;
  double max_priority = 0;
  for (const auto& fn : b.ssrs[i].functions) max_priority = std::max(max_priority, fn.priority);
  double comp = 0;
  for (std::size_t j = 0; j < b.ssrs[i].functions.size(); ++j) {
    const auto& fn = b.ssrs[i].functions[j];
    const bool fog = p[FunctionId{i, j}].on_fog;
    comm += u.priority + (fog ? 0.0 : lf);
    const ResourceVector cap = fog ? b.fog.per_function_cap : b.cloud.per_function_cap;
    const ResourceVector d = fn.base_demand + fn.supplementary_demand;
    double c = 0;
    for (int k = 0; k < 3; ++k) {
      c += d[kResourceKinds[k]] / cap[kResourceKinds[k]] * b.importance_factors[k];
    }
    c += d.net_io / cap.net_io * b.importance_factors[3] * (fog ? li : lf);
    comp += c * fn.priority / max_priority;
  }
  return comm + comp;
}

TEST(SsrObjectiveTest, MatchesIndependentRecomputation) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const SsrBucket b = testing::FogFriendlyBucket(seed, 4, 6);
    Rng rng(seed);
    const Placement p = RandomFeasible(b, rng);
    double sum = 0;
    const BucketObjective obj = EvaluateObjective(b, p);
    ASSERT_EQ(obj.per_ssr.size(), b.ssrs.size());
    for (std::size_t i = 0; i < b.ssrs.size(); ++i) {
      const double z = ManualObjective(b, i, p);
      EXPECT_NEAR(obj.per_ssr[i].total, z, 1e-9);
      EXPECT_NEAR(obj.per_ssr[i].total, obj.per_ssr[i].comm + obj.per_ssr[i].comp, 1e-12);
      EXPECT_GE(obj.per_ssr[i].comm, 0.0);
      EXPECT_GE(obj.per_ssr[i].comp, 0.0);
      sum += z;
    }
    EXPECT_NEAR(obj.sum, sum, 1e-9);
  }
}

TEST(StepCostTest, FogExamples) {
  EXPECT_NEAR(StepCostFog({}, kFog, kUniform, 0.4, 0.6), 0.6, kTol);
  EXPECT_NEAR(StepCostFog(kHalfFog, kFog, kUniform, 0.4, 0.6), 0.375 + 0.05 + 0.6, kTol);
  EXPECT_NEAR(StepCostFog(kHalfFog, kFog, kUniform, 0.4, 0.6), 1.025, kTol);
  EXPECT_NEAR(StepCostFog({}, kFog, kUniform, 0.4, 0.0), 0.0, kTol);
}

TEST(StepCostTest, CloudExamples) {
  EXPECT_NEAR(StepCostCloud({}, kCloud, kUniform, 0.4, 0.1, 0.6), 0.7, kTol);
  EXPECT_NEAR(StepCostCloud(kHalfCloud, kCloud, kUniform, 0.4, 0.1, 0.6), 1.1375, kTol);
  EXPECT_NEAR(StepCostCloud({}, kCloud, kUniform, 0.4, 0.0, 0.0), 0.0, kTol);
}

TEST(StepCostTest, CloudDominatesUnderEqualRatios) {
  Rng rng(2);
  const EnvironmentLimits same = Limits({4, 4096, 4096, 4096});
  for (int i = 0; i < 2000; ++i) {
    const ResourceVector d{rng.Uniform(0, 4), rng.Uniform(0, 4096), rng.Uniform(0, 4096),
                           rng.Uniform(0, 4096)};
    const double li = rng.Uniform(0.05, 1.0);
    const double lf = rng.Uniform(0.0, 2.0);
    const double p = rng.Uniform();
    const double diff = StepCostCloud(d, same, kUniform, li, lf, p) -
                        StepCostFog(d, same, kUniform, li, p);
    EXPECT_NEAR(diff, lf * (1.0 + d.net_io / 4096.0 * 0.25), 1e-12);
    EXPECT_GE(diff, 0.0);
  }
}

TEST(StepCostTest, StrictlyIncreasingInEveryDemand) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    ResourceVector d{rng.Uniform(0, 2), rng.Uniform(0, 1024), rng.Uniform(0, 1024),
                     rng.Uniform(0, 2048)};
    const double li = rng.Uniform(0.05, 1.0);
    const double lf = rng.Uniform(0.0, 1.0);
    const double p = rng.Uniform();
    const double fog = StepCostFog(d, kFog, kUniform, li, p);
    const double cloud = StepCostCloud(d, kCloud, kUniform, li, lf, p);
    for (ResourceKind k : kResourceKinds) {
      ResourceVector more = d;
      more[k] += rng.Uniform(0.01, 1.0) * kFog.per_function_cap[k] * 0.1;
      EXPECT_GT(StepCostFog(more, kFog, kUniform, li, p), fog);
      EXPECT_GT(StepCostCloud(more, kCloud, kUniform, li, lf, p), cloud);
    }
  }
}

SsrBucket MeanCostBucket() {
  // Users at the coverage edge with the maximal latency have priority 1.
  return MakeBucket({{MakeFunction(100, 500, 3)},
                     {MakeFunction(100, 500, 3), MakeFunction(200, 500, 3),
                      MakeFunction(300, 800, 3)}},
                    {100.0, 100.0}, {Point{100.0, 0.0}, Point{0.0, 100.0}});
}

TEST(BucketStepCostTest, MeanOverSsrs) {
  const SsrBucket b = MeanCostBucket();
  const Placement p = FogFirst(b);
  ASSERT_EQ(p.FogCount(), 4u);
  EXPECT_NEAR(SsrStepCost(b, 0, p), 1.0, kTol);
  EXPECT_NEAR(SsrStepCost(b, 1, p), 3.0, kTol);
  EXPECT_NEAR(BucketStepCost(b, p), 2.0, kTol);
  EXPECT_NEAR(TotalStepCost(b, p), 4.0, kTol);
}

TEST(BucketStepCostTest, SingleSsrBucketEqualsSsrCost) {
  const SsrBucket b = testing::FogFriendlyBucket(9, 1, 5);
  ASSERT_EQ(b.ssrs.size(), 1u);
  const Placement p = GreedyCost(b);
  EXPECT_NEAR(BucketStepCost(b, p), SsrStepCost(b, 0, p), 1e-12);
}

TEST(BucketStepCostTest, ZeroDemandZeroPriorityIsFree) {
  // Users at the fog node with latency priority 0 under p_omega = 1.
  SsrBucket b = MakeBucket({{MakeFunction(100, 500, 3)}, {MakeFunction(10, 100, 1)}},
                           {50.0, 50.0}, {Point{0.0, 0.0}, Point{0.0, 0.0}});
  b.priority_blend = 1.0;
  ComputeDerivedFields(b);
  const Placement p = FogFirst(b);
  EXPECT_NEAR(BucketStepCost(b, p), 0.0, kTol);
  EXPECT_NEAR(EvaluateObjective(b, p).sum, 0.0, kTol);
}

TEST(BucketStepCostTest, UnassignedFunctionIsStateError) {
  const SsrBucket b = MeanCostBucket();
  Placement p = FogFirst(b);
  p[FunctionId(1, 2)] = FunctionState{};
  EXPECT_THROW(SsrStepCost(b, 1, p), StateError);
  EXPECT_THROW(BucketStepCost(b, p), StateError);
}

TEST(NormalizationTest, LatenciesNormalizedByBucketMaximum) {
  const SsrBucket b = MakeBucket({{MakeFunction(100, 500, 3)}, {MakeFunction(100, 500, 3)}},
                                 {20.0, 80.0});
  EXPECT_NEAR(NormalizedUserLatency(b, b.users[0]), 0.25, kTol);
  EXPECT_NEAR(NormalizedLinkLatency(b), 0.5, kTol);
}

}  // namespace
}  // namespace fogdeploy
