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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "meshplan/candidates.hpp"
#include "meshplan/coloring.hpp"
#include "meshplan/planner.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan::testing {

/// Flat free-space grid, 802.11g, default profiles, no interest cells.
Scenario blank_scenario(int rows, int cols, double cell_size_m, CellIndex gateway,
                        double coverage_radius_m);

struct CandidateSet {
  double link_range_m = 0.0;
  std::vector<CandidateSite> icp;
  std::vector<CandidateSite> ocp;  // gateway first
  std::vector<Link> links;
};

/// ICP, OCP and feasible links at `range`, or at the loop's initial range.
CandidateSet candidates_at(const Scenario& s, std::optional<double> range = std::nullopt);

struct RandomSpec {
  int min_side = 2;
  int max_side = 6;
  double cell_size_lo = 30.0;
  double cell_size_hi = 60.0;
  double interest_p = 0.3;
  double placement_p = 0.35;  // share of cells open to outdoor nodes
  int max_indoor_sites = 3;
  int max_users = 3;
  double hill_p = 0.0;  // share of cells raised by a few meters
  std::optional<int> max_candidates;  // cap on ICP + OCP excluding the gateway
};

/// Seeded random scenario. Placement beyond `max_candidates` is closed off.
Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec);

/// Free-space loss from the electromagnetic definition 20 log10(4 pi d / lambda).
double friis_reference_loss_db(double distance_m, double frequency_mhz);

/// First Fresnel radius solved from the half-wavelength excess-path condition.
double fresnel_reference_radius(double d1_m, double d2_m, double frequency_mhz);

/// Straight-ray clearance over an explicit profile, recomputed sample by sample.
double clearance_reference(std::span<const double> distance_m, std::span<const double> ground_m,
                           double tx_top_m, double rx_top_m, double frequency_mhz);

/// Every selected site reachable from the gateway over plan.topology.
bool topology_reaches_all(const NetworkPlan& plan);

/// Conflicting pairs sharing a channel, counted from scratch.
int recount_conflicts(const ConflictGraph& g, std::span<const int> channel);

/// Minimum same-channel conflicting pairs over every assignment.
int exhaustive_min_conflicts(const ConflictGraph& g, std::span<const int> channels);

/// Uniform random graph with `n` vertices and edge probability `p`.
ConflictGraph random_graph(std::mt19937_64& rng, int n, double p);

/// Number of candidate sites excluding the gateway.
int candidate_count(const CandidateSet& c);

}  // namespace meshplan::testing
