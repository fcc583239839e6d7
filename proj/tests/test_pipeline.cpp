// Copyright 2026 The meshplan Authors
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

#include <random>

#include "meshplan/candidates.hpp"
#include "meshplan/demand.hpp"
#include "meshplan/pipeline.hpp"
#include "support.hpp"

namespace meshplan {
namespace {

using testing::blank_scenario;

Scenario fixture(const char* name) {
  return load_scenario_file(std::string(MESHPLAN_FIXTURES) + "/" + name);
}

NetworkPlan chain_plan(Scenario& s, int users) {
  s = blank_scenario(1, 3, 50.0, 0, 30.0);
  s.grid.at(2).interest = true;
  s.grid.at(2).users = users;
  s.grid.at(2).profile = "video_streaming";
  const testing::CandidateSet c = testing::candidates_at(s, 150.0);
  std::vector<CandidateSite> chosen{c.ocp[0], c.ocp[2]};
  return finalize_plan(chosen, c.links, s, scenario_demand(s));
}

TEST(Verify, FeasiblePlanPasses) {
  Scenario s;
  const NetworkPlan plan = chain_plan(s, 10);
  const VerificationReport r = verify(plan, s);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.violation_count(), 0);
}

TEST(Verify, OverloadedLinkIsNamed) {
  Scenario s;
  const NetworkPlan plan = chain_plan(s, 500);  // 100 Mbit/s over one 54 Mbit/s hop
  const VerificationReport r = verify(plan, s);
  EXPECT_TRUE(r.coverage_ok);
  EXPECT_FALSE(r.throughput_ok);
  ASSERT_EQ(r.overloaded_links.size(), 1u);
  EXPECT_EQ(r.overloaded_links[0], (std::pair<std::string, std::string>{"GW", "O2"}));
}

TEST(Verify, MissingCellIsNamed) {
  Scenario s;
  NetworkPlan plan = chain_plan(s, 0);
  plan.coverage.erase(2);
  const VerificationReport r = verify(plan, s);
  EXPECT_FALSE(r.coverage_ok);
  EXPECT_EQ(r.uncovered_cells, std::vector<CellIndex>{2});
}

TEST(Verify, BackhaulLimit) {
  Scenario s;
  const NetworkPlan plan = chain_plan(s, 10);
  s.solver.gateway_backhaul_kbps = 1000.0;
  const VerificationReport r = verify(plan, s);
  EXPECT_TRUE(r.backhaul_exceeded);
  EXPECT_FALSE(r.throughput_ok);
}

TEST(DesignLoop, GatewayOnlyVerifiesInOneIteration) {
  const DesignReport r = run_design_loop(fixture("gateway_only.json"));
  EXPECT_EQ(r.outcome, LoopOutcome::kVerified);
  EXPECT_EQ(r.iterations_used(), 1);
  ASSERT_TRUE(r.plan.has_value());
  EXPECT_EQ(r.plan->ids(), std::vector<std::string>{"GW"});
}

TEST(DesignLoop, TwoIterationsWhenLongHopIsTooSlow) {
  const DesignReport r = run_design_loop(fixture("two_iteration.json"));
  EXPECT_EQ(r.outcome, LoopOutcome::kVerified);
  ASSERT_EQ(r.iterations_used(), 2);
  EXPECT_FALSE(r.trace[0].throughput_ok);
  EXPECT_TRUE(r.trace[1].throughput_ok);
  EXPECT_LT(r.trace[1].link_range_m, r.trace[0].link_range_m);
}

TEST(DesignLoop, UncoverableCellStopsAtFirstIteration) {
  const DesignReport r = run_design_loop(fixture("infeasible_coverage.json"));
  EXPECT_EQ(r.outcome, LoopOutcome::kInfeasibleCoverage);
  EXPECT_EQ(r.iterations_used(), 1);
  EXPECT_EQ(r.uncoverable_cells, std::vector<CellIndex>{0});
  EXPECT_FALSE(r.plan.has_value());
}

TEST(DesignLoop, VillageVerifies) {
  const DesignReport r = run_design_loop(fixture("village.json"));
  EXPECT_TRUE(r.verified()) << r.cause;
  ASSERT_TRUE(r.verification.has_value());
  EXPECT_TRUE(r.verification->ok());
}

TEST(DesignLoop, BudgetExhaustedWhenDemandNeverFits) {
  Scenario s = blank_scenario(1, 3, 50.0, 0, 30.0);
  s.grid.at(2).interest = true;
  s.grid.at(2).users = 1000;
  s.grid.at(2).profile = "video_streaming";
  s.loop.max_iterations = 4;
  const DesignReport r = run_design_loop(s);
  EXPECT_EQ(r.outcome, LoopOutcome::kIterationBudgetExhausted);
  EXPECT_LE(r.iterations_used(), 4);
  ASSERT_TRUE(r.plan.has_value());
  EXPECT_FALSE(r.cause.empty());
}

TEST(DesignLoop, OverridesApply) {
  const Scenario s = fixture("two_iteration.json");
  LoopOverrides o;
  o.max_iterations = 1;
  const DesignReport one = run_design_loop(s, o);
  EXPECT_EQ(one.iterations_used(), 1);
  EXPECT_FALSE(one.verified());
  o = {};
  o.link_range_m = 80.0;
  const DesignReport shorter = run_design_loop(s, o);
  EXPECT_EQ(shorter.initial_link_range_m, 80.0);
  EXPECT_EQ(shorter.trace[0].link_range_m, 80.0);
}

TEST(DesignLoop, InitialRangeDefaultsToEffectiveRange) {
  Scenario s = blank_scenario(2, 2, 50.0, 0, 50.0);
  EXPECT_EQ(initial_link_range(s), 150.0);
  s.loop.initial_link_range_m = 120.0;
  EXPECT_EQ(initial_link_range(s), 120.0);
}

TEST(DesignLoop, PropertiesOnRandomScenarios) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 60; ++i) {
    testing::RandomSpec spec;
    spec.max_side = 8;
    spec.max_users = 20;
    Scenario s = testing::random_scenario(rng, spec);
    s.loop.max_iterations = 1 + static_cast<int>(rng() % 8);
    const DesignReport r = run_design_loop(s);

    ASSERT_GE(r.iterations_used(), 1);
    EXPECT_LE(r.iterations_used(), s.loop.max_iterations);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      EXPECT_EQ(r.trace[k].iteration, static_cast<int>(k) + 1);
      EXPECT_GE(r.trace[k].link_range_m, s.loop.min_range_fraction * r.initial_link_range_m - 1e-9);
      if (k > 0) {
        EXPECT_LT(r.trace[k].link_range_m, r.trace[k - 1].link_range_m);
        EXPECT_EQ(r.trace[k].indoor_candidates, r.trace[0].indoor_candidates);
      }
    }
    EXPECT_EQ(static_cast<int>(r.indoor_candidates.size()), r.trace[0].indoor_candidates);

    if (r.verified()) {
      ASSERT_TRUE(r.plan.has_value());
      const VerificationReport again = verify(*r.plan, s);
      EXPECT_TRUE(again.ok());
      EXPECT_TRUE(testing::topology_reaches_all(*r.plan));
    }
    const DesignReport twice = run_design_loop(s);
    EXPECT_EQ(trace_csv(twice), trace_csv(r));
  }
}

TEST(TraceCsv, OneRowPerIteration) {
  const DesignReport r = run_design_loop(fixture("two_iteration.json"));
  const std::string csv = trace_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("iteration,", 0), 0u);
}

}  // namespace
}  // namespace meshplan
