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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>

#include "meshplan/pipeline.hpp"

namespace meshplan::testing {

Scenario blank_scenario(int rows, int cols, double cell_size_m, CellIndex gateway,
                        double coverage_radius_m) {
  Scenario s;
  s.grid.rows = rows;
  s.grid.cols = cols;
  s.grid.cell_size_m = cell_size_m;
  s.grid.gateway = gateway;
  s.grid.cells.assign(static_cast<std::size_t>(rows * cols), Cell{});
  s.radio = radio_80211g();
  s.coverage_radius_m = coverage_radius_m;
  s.demand_profiles = default_app_profiles();
  return s;
}

CandidateSet candidates_at(const Scenario& s, std::optional<double> range) {
  CandidateSet c;
  c.link_range_m = range.value_or(initial_link_range(s));
  c.icp = identify_icp(s);
  c.ocp = generate_ocp(s, c.link_range_m);
  std::vector<CandidateSite> all = c.ocp;
  all.insert(all.end(), c.icp.begin(), c.icp.end());
  c.links = feasible_links(all, s, c.link_range_m);
  return c;
}

int candidate_count(const CandidateSet& c) {
  return static_cast<int>(c.icp.size() + c.ocp.size()) - 1;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

}  // namespace

Scenario random_scenario(std::mt19937_64& rng, const RandomSpec& spec) {
  const int rows = spec.min_side + pick(rng, spec.max_side - spec.min_side + 1);
  const int cols = spec.min_side + pick(rng, spec.max_side - spec.min_side + 1);
  const double cs = uniform(rng, spec.cell_size_lo, spec.cell_size_hi);
  const CellIndex gw = pick(rng, rows * cols);
  const double radius = std::min(150.0, cs * uniform(rng, 0.8, 1.6));
  Scenario s = blank_scenario(rows, cols, cs, gw, radius);
  static constexpr Environment kEnv[] = {Environment::kFreeSpace, Environment::kFreeSpace,
                                         Environment::kFoliage, Environment::kBuilt};
  s.environment.global = kEnv[pick(rng, 4)];
  s.solver.rng_seed = rng();

  bool any_interest = false;
  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    Cell& cell = s.grid.at(c);
    cell.interest = chance(rng, spec.interest_p);
    any_interest = any_interest || cell.interest;
    if (c != gw && !chance(rng, spec.placement_p)) {
      cell.placement = false;
      cell.kind = NodeKind::kNone;
    }
    if (chance(rng, spec.hill_p)) cell.elevation_m = uniform(rng, 1.0, 6.0);
    if (cell.interest) {
      cell.dispersion = uniform(rng, 0.5, 2.0);
      cell.growth = uniform(rng, 0.8, 1.5);
      cell.users = pick(rng, spec.max_users + 1);
      if (cell.users > 0) cell.profile = chance(rng, 0.5) ? "web_browsing" : "email";
    }
  }
  if (!any_interest) s.grid.at(pick(rng, s.grid.size())).interest = true;

  const int sites = pick(rng, spec.max_indoor_sites + 1);
  std::set<CellIndex> used;
  for (int i = 0; i < sites; ++i) {
    const CellIndex c = pick(rng, s.grid.size());
    if (c == gw || used.count(c)) continue;
    used.insert(c);
    Cell& cell = s.grid.at(c);
    cell.placement = true;
    cell.kind = chance(rng, 0.7) ? NodeKind::kBoth : NodeKind::kIndoor;
    s.indoor_sites.push_back({c, uniform(rng, 3.0, 9.0), chance(rng, 0.85), uniform(rng, 0.7, 1.0)});
  }
  std::sort(s.indoor_sites.begin(), s.indoor_sites.end(),
            [](const IndoorSite& a, const IndoorSite& b) { return a.cell < b.cell; });

  if (spec.max_candidates) {
    while (true) {
      const CandidateSet c = candidates_at(s);
      if (candidate_count(c) <= *spec.max_candidates) break;
      std::vector<CandidateSite> pool(c.ocp.begin() + 1, c.ocp.end());
      pool.insert(pool.end(), c.icp.begin(), c.icp.end());
      const CandidateSite victim = pool[static_cast<std::size_t>(pick(rng, static_cast<int>(pool.size())))];
      if (victim.indoor()) {
        std::erase_if(s.indoor_sites, [&](const IndoorSite& x) { return x.cell == victim.cell; });
      } else {
        Cell& cell = s.grid.at(victim.cell);
        const bool building = std::any_of(s.indoor_sites.begin(), s.indoor_sites.end(),
                                          [&](const IndoorSite& x) { return x.cell == victim.cell; });
        if (building) {
          cell.kind = NodeKind::kIndoor;
        } else {
          cell.placement = false;
          cell.kind = NodeKind::kNone;
        }
      }
    }
  }
  return s;
}

double friis_reference_loss_db(double distance_m, double frequency_mhz) {
  const double lambda = 299792458.0 / (frequency_mhz * 1e6);
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / lambda);
}

double fresnel_reference_radius(double d1_m, double d2_m, double frequency_mhz) {
  const double lambda = 299792458.0 / (frequency_mhz * 1e6);
  if (d1_m <= 0.0 || d2_m <= 0.0) return 0.0;
  auto excess = [&](double r) {
    return std::hypot(d1_m, r) + std::hypot(d2_m, r) - (d1_m + d2_m) - lambda / 2.0;
  };
  double lo = 0.0;
  double hi = std::max(d1_m, d2_m);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double clearance_reference(std::span<const double> distance_m, std::span<const double> ground_m,
                           double tx_top_m, double rx_top_m, double frequency_mhz) {
  const double length = distance_m.back();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < distance_m.size(); ++i) {
    const double d = distance_m[i];
    const double ray = tx_top_m + (rx_top_m - tx_top_m) * d / length;
    const double r = fresnel_reference_radius(d, length - d, frequency_mhz);
    worst = std::min(worst, (ray - ground_m[i]) / r);
  }
  return worst;
}

bool topology_reaches_all(const NetworkPlan& plan) {
  std::set<std::string> seen{kGatewayId};
  std::deque<std::string> queue{kGatewayId};
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    for (const Link& l : plan.topology) {
      const std::string* other = l.a == v ? &l.b : l.b == v ? &l.a : nullptr;
      if (other && seen.insert(*other).second) queue.push_back(*other);
    }
  }
  for (const auto& site : plan.selected) {
    if (!seen.count(site.id)) return false;
  }
  return plan.find(kGatewayId) != nullptr;
}

int recount_conflicts(const ConflictGraph& g, std::span<const int> channel) {
  int n = 0;
  for (int u = 0; u < g.size(); ++u) {
    for (int v = u + 1; v < g.size(); ++v) {
      if (g.adjacent(u, v) && channel[static_cast<std::size_t>(u)] == channel[static_cast<std::size_t>(v)]) ++n;
    }
  }
  return n;
}

int exhaustive_min_conflicts(const ConflictGraph& g, std::span<const int> channels) {
  const int n = g.size();
  const int k = static_cast<int>(channels.size());
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  std::vector<int> channel(static_cast<std::size_t>(n));
  int best = std::numeric_limits<int>::max();
  while (true) {
    for (int i = 0; i < n; ++i) channel[static_cast<std::size_t>(i)] = channels[static_cast<std::size_t>(digit[static_cast<std::size_t>(i)])];
    best = std::min(best, recount_conflicts(g, channel));
    int i = 0;
    while (i < n && ++digit[static_cast<std::size_t>(i)] == k) digit[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return best;
}

ConflictGraph random_graph(std::mt19937_64& rng, int n, double p) {
  ConflictGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (chance(rng, p)) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace meshplan::testing
