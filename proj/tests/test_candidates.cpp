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

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "meshplan/candidates.hpp"
#include "meshplan/demand.hpp"
#include "meshplan/propagation.hpp"
#include "support.hpp"

namespace meshplan {
namespace {

using testing::blank_scenario;

std::set<CellIndex> cells_of(const std::vector<CandidateSite>& sites) {
  std::set<CellIndex> out;
  for (const auto& s : sites) {
    if (!s.gateway) out.insert(s.cell);
  }
  return out;
}

TEST(IdentifyIcp, Filters) {
  Scenario s = blank_scenario(2, 3, 50.0, 0, 50.0);
  s.solver.reliability_threshold = 0.9;
  s.grid.at(3).placement = false;
  s.grid.at(3).kind = NodeKind::kNone;
  s.grid.at(4).kind = NodeKind::kOutdoor;
  s.indoor_sites = {{1, 6.0, false, 1.0},   // no grid power
                    {2, 6.0, true, 0.95},   // passes every filter
                    {3, 6.0, true, 1.0},    // placement forbidden
                    {4, 6.0, true, 1.0},    // outdoor-only cell
                    {5, 6.0, true, 0.5}};   // unreliable
  std::vector<IcpExclusion> excluded;
  const auto icp = identify_icp(s, &excluded);
  ASSERT_EQ(icp.size(), 1u);
  EXPECT_EQ(icp[0].cell, 2);
  EXPECT_EQ(icp[0].id, "I2");
  EXPECT_TRUE(icp[0].grid_power);
  EXPECT_EQ(icp[0].antenna_height_m, 6.0);
  ASSERT_EQ(excluded.size(), 4u);
  EXPECT_EQ(excluded[0].reason, "no grid power");
}

TEST(GenerateOcp, RangeBelowCellSizeGivesOnlyGateway) {
  const Scenario s = blank_scenario(4, 4, 50.0, 5, 50.0);
  const auto ocp = generate_ocp(s, 49.0);
  ASSERT_EQ(ocp.size(), 1u);
  EXPECT_EQ(ocp[0].id, kGatewayId);
}

TEST(GenerateOcp, StripChainReachability) {
  const Scenario s = blank_scenario(1, 5, 100.0, 0, 50.0);
  const auto ocp = generate_ocp(s, 150.0);
  EXPECT_EQ(ocp.size(), 5u);
  EXPECT_EQ(cells_of(ocp), (std::set<CellIndex>{1, 2, 3, 4}));
  for (const auto& site : ocp) {
    if (!site.gateway) {
      EXPECT_EQ(site.antenna_height_m, s.mast_height_m);
    }
  }
}

TEST(GenerateOcp, LakeCellsExcludedAndCanCutTheChain) {
  Scenario s = blank_scenario(1, 5, 100.0, 0, 50.0);
  s.grid.at(2).placement = false;
  s.grid.at(2).kind = NodeKind::kNone;
  EXPECT_EQ(cells_of(generate_ocp(s, 150.0)), (std::set<CellIndex>{1}));
  EXPECT_EQ(cells_of(generate_ocp(s, 200.0)), (std::set<CellIndex>{1, 3, 4}));
}

// BFS over cell centers, written against the grid directly.
std::set<CellIndex> bfs_oracle(const Scenario& s, double range) {
  std::set<CellIndex> relay;
  for (const auto& site : identify_icp(s)) relay.insert(site.cell);
  auto open = [&](CellIndex c) {
    const Cell& x = s.grid.cells[static_cast<std::size_t>(c)];
    return c != s.grid.gateway && x.placement && (x.kind == NodeKind::kOutdoor || x.kind == NodeKind::kBoth);
  };
  std::set<CellIndex> seen{s.grid.gateway};
  std::deque<CellIndex> q{s.grid.gateway};
  while (!q.empty()) {
    const CellIndex v = q.front();
    q.pop_front();
    for (CellIndex w = 0; w < s.grid.size(); ++w) {
      if (seen.count(w) || !(open(w) || relay.count(w))) continue;
      const double dr = s.grid.row(v) - s.grid.row(w), dc = s.grid.col(v) - s.grid.col(w);
      if (s.grid.cell_size_m * std::sqrt(dr * dr + dc * dc) <= range) {
        seen.insert(w);
        q.push_back(w);
      }
    }
  }
  std::set<CellIndex> out;
  for (CellIndex c : seen) {
    if (open(c)) out.insert(c);
  }
  return out;
}

TEST(GenerateOcp, MatchesBfsOracleAndIsConnectedOverFlatTerrain) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 80; ++i) {
    testing::RandomSpec spec;
    spec.max_side = 10;
    Scenario s = testing::random_scenario(rng, spec);
    s.environment.global = Environment::kFreeSpace;
    const double range = 40.0 + static_cast<double>(rng() % 110);
    const testing::CandidateSet c = testing::candidates_at(s, range);
    EXPECT_EQ(cells_of(c.ocp), bfs_oracle(s, range));
    for (const auto& site : c.ocp) {
      const Cell& cell = s.grid.at(site.cell);
      if (!site.gateway) {
        EXPECT_TRUE(cell.placement && allows_outdoor(cell.kind));
      }
    }

    NetworkPlan all;
    all.selected = c.ocp;
    all.selected.insert(all.selected.end(), c.icp.begin(), c.icp.end());
    std::set<std::string> seen{kGatewayId};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Link& l : c.links) {
        if (seen.count(l.a) != seen.count(l.b)) {
          seen.insert(l.a);
          seen.insert(l.b);
          grew = true;
        }
      }
    }
    for (const auto& site : c.ocp) EXPECT_TRUE(seen.count(site.id)) << site.id;
  }
}

TEST(FeasibleLinks, HundredMetersFlatFreeSpaceRunsAtPeakRate) {
  const Scenario s = blank_scenario(1, 3, 50.0, 0, 50.0);
  const auto ocp = generate_ocp(s, 150.0);
  const auto links = feasible_links(ocp, s, 150.0);
  auto it = std::find_if(links.begin(), links.end(), [](const Link& l) { return l.a == "GW" && l.b == "O2"; });
  ASSERT_NE(it, links.end());
  EXPECT_EQ(it->distance_m, 100.0);
  EXPECT_EQ(it->rate_mbps, 54.0);
}

TEST(FeasibleLinks, OutOfRangePairAbsent) {
  const Scenario s = blank_scenario(1, 4, 50.0, 0, 50.0);
  const auto ocp = generate_ocp(s, 150.0);
  const auto links = feasible_links(ocp, s, 120.0);
  for (const Link& l : links) EXPECT_LE(l.distance_m, 120.0);
  EXPECT_EQ(links.size(), 5u);  // 0-1 0-2 1-2 1-3 2-3
}

TEST(FeasibleLinks, BlockingHillRemovesLink) {
  Scenario s = blank_scenario(1, 9, 15.0, 0, 30.0);
  for (CellIndex c : {3, 4, 5}) s.grid.at(c).elevation_m = 9.5;
  const CandidateSite a = gateway_site(s);
  CandidateSite b;
  b.id = "O8";
  b.cell = 8;
  b.antenna_height_m = 10.0;
  const ElevationProfile p = synthesize_profile(s.grid, 0, 8, 10.0, 10.0);
  ASSERT_LT(los_clearance(p, 2400.0).worst_fraction, 0.6);
  EXPECT_FALSE(evaluate_link(a, b, s, 150.0).has_value());
  for (CellIndex c : {3, 4, 5}) s.grid.at(c).elevation_m = 0.0;
  EXPECT_TRUE(evaluate_link(a, b, s, 150.0).has_value());
}

TEST(FeasibleLinks, WorseEndpointEnvironmentSetsTheRate) {
  Scenario s = blank_scenario(1, 3, 60.0, 0, 50.0);
  const auto ocp = generate_ocp(s, 150.0);
  const double free_rate = evaluate_link(ocp[0], ocp[2], s, 150.0)->rate_mbps;
  s.environment.overrides[2] = Environment::kBuilt;
  const double built_rate = evaluate_link(ocp[0], ocp[2], s, 150.0)->rate_mbps;
  const PathLossModel built = path_loss_model(s.environment, Environment::kBuilt);
  EXPECT_EQ(built_rate, rate_from_rx(s.radio, link_budget(s.radio, path_loss_db(built, 120.0, 2400.0))));
  EXPECT_LT(built_rate, free_rate);
}

TEST(FeasibleLinks, SymmetricNoSelfLinksAndMonotoneInRange) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 40; ++i) {
    testing::RandomSpec spec;
    spec.max_side = 8;
    spec.hill_p = 0.3;
    const Scenario s = testing::random_scenario(rng, spec);
    const testing::CandidateSet c = testing::candidates_at(s, 150.0);
    std::vector<CandidateSite> all = c.ocp;
    all.insert(all.end(), c.icp.begin(), c.icp.end());
    std::vector<CandidateSite> reversed(all.rbegin(), all.rend());
    const auto forward = feasible_links(all, s, 150.0);
    const auto backward = feasible_links(reversed, s, 150.0);
    ASSERT_EQ(forward.size(), backward.size());
    std::set<std::pair<std::string, std::string>> wide;
    for (std::size_t k = 0; k < forward.size(); ++k) {
      EXPECT_NE(forward[k].a, forward[k].b);
      EXPECT_LT(forward[k].a, forward[k].b);
      EXPECT_EQ(forward[k].a, backward[k].a);
      EXPECT_EQ(forward[k].b, backward[k].b);
      EXPECT_GT(forward[k].rate_mbps, 0.0);
      wide.insert({forward[k].a, forward[k].b});
    }
    for (const Link& l : feasible_links(all, s, 90.0)) EXPECT_TRUE(wide.count({l.a, l.b}));
  }
}

TEST(GatewaySite, UsesDeclaredBuildingHeight) {
  Scenario s = blank_scenario(2, 2, 50.0, 3, 50.0);
  EXPECT_EQ(gateway_site(s).antenna_height_m, 10.0);
  s.indoor_sites = {{3, 7.5, true, 1.0}};
  EXPECT_EQ(gateway_site(s).antenna_height_m, 7.5);
  EXPECT_TRUE(identify_icp(s).empty());
}

TEST(SiteId, PaddedToGridWidth) {
  const Scenario s = blank_scenario(10, 20, 50.0, 0, 50.0);
  EXPECT_EQ(site_id(s.grid, SiteKind::kOutdoor, 7), "O007");
  EXPECT_EQ(site_id(s.grid, SiteKind::kIndoor, 199), "I199");
}

TEST(CandidatesCsv, HeaderAndRows) {
  const Scenario s = blank_scenario(1, 3, 50.0, 0, 50.0);
  const std::string csv = candidates_csv(generate_ocp(s, 150.0), s.grid);
  EXPECT_EQ(csv, "id,row,col,kind,height\nGW,0,0,indoor,10\nO1,0,1,outdoor,10\nO2,0,2,outdoor,10\n");
}

}  // namespace
}  // namespace meshplan
