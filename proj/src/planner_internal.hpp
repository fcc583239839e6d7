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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "meshplan/planner.hpp"

namespace meshplan::detail {

// Candidate universe in id order; sites[0] is always the gateway.
struct Universe {
  std::vector<CandidateSite> sites;
  std::vector<Link> links;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor site, link index)
  std::vector<CellIndex> interest;                    // ordinal -> cell
  std::vector<double> weight;                         // ordinal -> greedy weight
  std::vector<std::vector<int>> covers;               // site -> interest ordinals
  std::vector<std::vector<int>> coverers;             // interest ordinal -> sites

  int size() const { return static_cast<int>(sites.size()); }
  int interest_count() const { return static_cast<int>(interest.size()); }
};

Universe make_universe(const Scenario& s, std::span<const CandidateSite> icp,
                       std::span<const CandidateSite> ocp, std::span<const Link> links);

// Sites reachable from the gateway over all feasible links.
std::vector<char> reachable_from_gateway(const Universe& u);

// Throws PlanningError when some interest cell has no coverer at all
// (kInfeasible) or only coverers cut off from the gateway (kDisconnected).
void check_coverable(const Universe& u);

bool throughput_ok(const PlanMetrics& m, const Scenario& s);

std::vector<CandidateSite> pick(const Universe& u, const std::vector<int>& members);

}  // namespace meshplan::detail
