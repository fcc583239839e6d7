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

#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "meshplan/candidates.hpp"
#include "meshplan/coloring.hpp"
#include "meshplan/demand.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

inline constexpr double kUnboundedHeadroom = std::numeric_limits<double>::infinity();

struct PlanMetrics {
  int outdoor_count = 0;
  int indoor_count = 0;  // includes the gateway
  double gateway_aggregate_kbps = 0.0;
  double unserved_kbps = 0.0;  // demand on cells no selected site covers
  double min_link_headroom_kbps = kUnboundedHeadroom;
  int residual_conflicts = 0;
  int radio_overflows = 0;
  bool load_feasible = true;
  std::vector<double> link_load_kbps;      // parallel to NetworkPlan::topology
  std::vector<double> link_capacity_kbps;  // parallel to NetworkPlan::topology
  std::vector<int> collision_domain;       // parallel to NetworkPlan::topology
  std::map<int, double> channel_utilization;

  int total_count() const { return outdoor_count + indoor_count; }
};

/// (outdoor, total) after one local-search pass.
struct SearchStep {
  int outdoor = 0;
  int total = 0;
};

struct NetworkPlan {
  std::vector<CandidateSite> selected;  // sorted by id, always includes "GW"
  std::vector<Link> topology;           // tree rooted at "GW", sorted by (a, b)
  std::map<CellIndex, std::string> coverage;  // interest cell -> serving site
  PlanMetrics metrics;
  std::vector<SearchStep> search_trace;

  const CandidateSite* find(const std::string& id) const;
  int outdoor_count() const;
  int total_count() const { return static_cast<int>(selected.size()); }
  std::vector<std::string> ids() const;
};

/// Interest cells within coverage radius of each site (same order as `sites`).
std::vector<std::vector<CellIndex>> coverage_sets(std::span<const CandidateSite> sites,
                                                  const Scenario& s);

/// Greedy weighted set cover, shortest-path connectivity repair and local
/// search, minimizing (outdoor count, total count) then maximizing headroom.
/// `ocp` is the output of generate_ocp (gateway first). Throws PlanningError
/// kInfeasible or kDisconnected.
NetworkPlan select_nodes(const Scenario& s, std::span<const CandidateSite> icp,
                         std::span<const CandidateSite> ocp, std::span<const Link> links);

/// Exhaustive lexicographic optimum over candidate subsets, requiring load
/// feasibility. Throws PlanningError kTooLarge, kInfeasible, kDisconnected or
/// kLoadInfeasible.
NetworkPlan brute_force_plan(const Scenario& s, std::span<const CandidateSite> icp,
                             std::span<const CandidateSite> ocp, std::span<const Link> links);

/// Links conflict when they share an endpoint or their midpoints lie within
/// the interference range. Vertex i is plan.topology[i].
ConflictGraph link_conflict_graph(const NetworkPlan& plan, const Scenario& s);

/// Colors the topology links from the scenario channel set under the
/// per-node radio budget; records residual conflicts and radio overflows.
NetworkPlan assign_channels(NetworkPlan plan, const Scenario& s);

/// Routes demand up the tree to "GW" and checks each link against its
/// collision-domain share of capacity. Throws kNotATree.
PlanMetrics evaluate_plan(const NetworkPlan& plan, const DemandMap& demand, const Scenario& s);

/// Assembles a plan over a chosen site set: hop-count tree from "GW"
/// (higher-rate parent wins ties) and nearest-site coverage. Channels unset.
NetworkPlan build_plan(std::span<const CandidateSite> chosen, std::span<const Link> links,
                       const Scenario& s);

/// build_plan + assign_channels + evaluate_plan.
NetworkPlan finalize_plan(std::span<const CandidateSite> chosen, std::span<const Link> links,
                          const Scenario& s, const DemandMap& demand);

/// Lexicographic plan order: fewer outdoor, fewer total, more headroom,
/// then smaller sorted id sequence. True when `a` is strictly better.
bool plan_better(const NetworkPlan& a, const NetworkPlan& b);

}  // namespace meshplan
