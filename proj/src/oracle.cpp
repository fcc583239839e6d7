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

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshplan/error.hpp"
#include "meshplan/planner.hpp"
#include "planner_internal.hpp"

namespace meshplan {

namespace {

constexpr int kHardLimit = 20;

struct Subset {
  std::uint32_t mask = 0;
  int outdoor = 0;
  int total = 0;
};

bool covers_all(const detail::Universe& u, std::uint32_t mask) {
  for (int k = 0; k < u.interest_count(); ++k) {
    const auto& who = u.coverers[static_cast<std::size_t>(k)];
    const bool hit = std::any_of(who.begin(), who.end(), [&](int i) {
      return i == 0 || (mask >> (i - 1) & 1U);
    });
    if (!hit) return false;
  }
  return true;
}

bool connected(const detail::Universe& u, std::uint32_t mask) {
  auto in = [&](int i) { return i == 0 || (mask >> (i - 1) & 1U); };
  std::vector<char> seen(u.sites.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& [w, li] : u.adj[static_cast<std::size_t>(v)]) {
      if (!in(w) || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      ++count;
      queue.push_back(w);
    }
  }
  return count == 1 + __builtin_popcount(mask);
}

}  // namespace

NetworkPlan brute_force_plan(const Scenario& s, std::span<const CandidateSite> icp,
                             std::span<const CandidateSite> ocp, std::span<const Link> links) {
  const detail::Universe u = detail::make_universe(s, icp, ocp, links);
  const int free_sites = u.size() - 1;
  const int limit = std::min(s.solver.oracle_limit, kHardLimit);
  if (free_sites > limit) {
    throw PlanningError(ErrorCode::kTooLarge,
                        std::to_string(free_sites) + " candidates exceed the exhaustive limit of " +
                            std::to_string(limit),
                        {}, {});
  }
  detail::check_coverable(u);

  std::vector<Subset> feasible;
  const std::uint32_t end = 1U << free_sites;
  for (std::uint32_t mask = 0; mask < end; ++mask) {
    if (!covers_all(u, mask) || !connected(u, mask)) continue;
    Subset sub{mask, 0, 1 + __builtin_popcount(mask)};
    for (int i = 1; i < u.size(); ++i) {
      if ((mask >> (i - 1) & 1U) && u.sites[static_cast<std::size_t>(i)].outdoor()) ++sub.outdoor;
    }
    feasible.push_back(sub);
  }
  if (feasible.empty()) {
    throw PlanningError(ErrorCode::kDisconnected, "no connected covering subset exists", {}, {});
  }
  std::stable_sort(feasible.begin(), feasible.end(), [](const Subset& a, const Subset& b) {
    return std::pair(a.outdoor, a.total) < std::pair(b.outdoor, b.total);
  });

  const DemandMap demand = scenario_demand(s);
  std::size_t i = 0;
  while (i < feasible.size()) {
    std::size_t j = i;
    std::optional<NetworkPlan> best;
    while (j < feasible.size() && feasible[j].outdoor == feasible[i].outdoor &&
           feasible[j].total == feasible[i].total) {
      std::vector<int> members{0};
      for (int k = 1; k < u.size(); ++k) {
        if (feasible[j].mask >> (k - 1) & 1U) members.push_back(k);
      }
      NetworkPlan plan = finalize_plan(detail::pick(u, members), u.links, s, demand);
      if (detail::throughput_ok(plan.metrics, s) && (!best || plan_better(plan, *best))) {
        best = std::move(plan);
      }
      ++j;
    }
    if (best) return std::move(*best);
    i = j;
  }
  throw PlanningError(ErrorCode::kLoadInfeasible,
                      "every connected covering subset overloads some link", {}, {});
}

}  // namespace meshplan
