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

#include "meshplan/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <tuple>

#include "meshplan/demand.hpp"
#include "meshplan/propagation.hpp"

namespace meshplan {

const char* to_string(SiteKind kind) { return kind == SiteKind::kIndoor ? "indoor" : "outdoor"; }

std::string site_id(const RegionGrid& grid, SiteKind kind, CellIndex cell) {
  int width = 1;
  for (int n = std::max(grid.size() - 1, 0); n >= 10; n /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*d", kind == SiteKind::kIndoor ? 'I' : 'O', width, cell);
  return buf;
}

CandidateSite gateway_site(const Scenario& s) {
  CandidateSite gw;
  gw.id = kGatewayId;
  gw.cell = s.grid.gateway;
  gw.kind = SiteKind::kIndoor;
  gw.gateway = true;
  gw.grid_power = true;
  gw.power_reliability = 1.0;
  gw.antenna_height_m = s.mast_height_m;
  for (const IndoorSite& b : s.indoor_sites) {
    if (b.cell == s.grid.gateway) {
      gw.antenna_height_m = b.height_m;
      gw.power_reliability = b.power_reliability;
      break;
    }
  }
  return gw;
}

std::vector<CandidateSite> identify_icp(const Scenario& s, std::vector<IcpExclusion>* excluded) {
  std::vector<CandidateSite> out;
  auto reject = [&](std::size_t i, std::string why) {
    if (excluded) excluded->push_back({i, std::move(why)});
  };
  for (std::size_t i = 0; i < s.indoor_sites.size(); ++i) {
    const IndoorSite& b = s.indoor_sites[i];
    if (!s.grid.contains(b.cell)) {
      reject(i, "cell out of range");
      continue;
    }
    if (b.cell == s.grid.gateway) {
      reject(i, "hosts the gateway");
      continue;
    }
    if (!b.grid_power) {
      reject(i, "no grid power");
      continue;
    }
    if (b.power_reliability < s.solver.reliability_threshold) {
      reject(i, "grid power reliability below threshold");
      continue;
    }
    const Cell& cell = s.grid.at(b.cell);
    if (!cell.placement || !allows_indoor(cell.kind)) {
      reject(i, "cell does not allow an indoor node");
      continue;
    }
    const std::string id = site_id(s.grid, SiteKind::kIndoor, b.cell);
    if (std::any_of(out.begin(), out.end(), [&](const CandidateSite& c) { return c.id == id; })) {
      reject(i, "duplicate building on the same cell");
      continue;
    }
    CandidateSite site;
    site.id = id;
    site.cell = b.cell;
    site.kind = SiteKind::kIndoor;
    site.antenna_height_m = b.height_m;
    site.grid_power = true;
    site.power_reliability = b.power_reliability;
    out.push_back(std::move(site));
  }
  std::sort(out.begin(), out.end(),
            [](const CandidateSite& x, const CandidateSite& y) { return x.id < y.id; });
  return out;
}

std::vector<CandidateSite> generate_ocp(const Scenario& s, double link_range_m) {
  const RegionGrid& g = s.grid;
  std::vector<char> outdoor_ok(static_cast<std::size_t>(g.size()), 0);
  std::vector<char> relay_ok(static_cast<std::size_t>(g.size()), 0);
  for (CellIndex i = 0; i < g.size(); ++i) {
    const Cell& c = g.at(i);
    outdoor_ok[i] = c.placement && allows_outdoor(c.kind) && i != g.gateway;
    relay_ok[i] = outdoor_ok[i];
  }
  for (const CandidateSite& icp : identify_icp(s)) relay_ok[icp.cell] = 1;

  std::vector<char> reached(static_cast<std::size_t>(g.size()), 0);
  std::deque<CellIndex> frontier{g.gateway};
  reached[g.gateway] = 1;
  const int reach = link_range_m > 0.0 ? static_cast<int>(std::floor(link_range_m / g.cell_size_m)) : -1;
  while (!frontier.empty() && reach >= 0) {
    const CellIndex cur = frontier.front();
    frontier.pop_front();
    const int r0 = g.row(cur);
    const int c0 = g.col(cur);
    for (int r = std::max(0, r0 - reach); r <= std::min(g.rows - 1, r0 + reach); ++r) {
      for (int c = std::max(0, c0 - reach); c <= std::min(g.cols - 1, c0 + reach); ++c) {
        const CellIndex next = g.index(r, c);
        if (reached[next] || !relay_ok[next]) continue;
        if (cell_distance(g, cur, next) > link_range_m) continue;
        reached[next] = 1;
        frontier.push_back(next);
      }
    }
  }

  std::vector<CandidateSite> out{gateway_site(s)};
  for (CellIndex i = 0; i < g.size(); ++i) {
    if (!reached[i] || !outdoor_ok[i]) continue;
    CandidateSite site;
    site.id = site_id(g, SiteKind::kOutdoor, i);
    site.cell = i;
    site.kind = SiteKind::kOutdoor;
    site.antenna_height_m = s.mast_height_m;
    site.grid_power = false;
    site.power_reliability = 0.0;
    out.push_back(std::move(site));
  }
  return out;
}

std::optional<Link> evaluate_link(const CandidateSite& x, const CandidateSite& y,
                                  const Scenario& s, double link_range_m) {
  if (x.id == y.id) return std::nullopt;
  const double distance = cell_distance(s.grid, x.cell, y.cell);
  if (distance > link_range_m) return std::nullopt;

  const double freq = s.radio.frequency_mhz;
  if (distance > 0.0) {
    const ElevationProfile profile =
        synthesize_profile(s.grid, x.cell, y.cell, x.antenna_height_m, y.antenna_height_m);
    if (!los_clearance(profile, freq).clear(s.environment.clearance_threshold)) return std::nullopt;
  }

  const Environment ex = s.environment.at(x.cell);
  const Environment ey = s.environment.at(y.cell);
  const Environment worse = s.environment.exponent(ey) > s.environment.exponent(ex) ? ey : ex;
  const PathLossModel model = path_loss_model(s.environment, worse);
  const double loss = path_loss_db(model, std::max(distance, model.reference_distance_m), freq);
  const double rate = rate_from_rx(s.radio, link_budget(s.radio, loss));
  if (!(rate > 0.0)) return std::nullopt;

  Link link;
  link.a = std::min(x.id, y.id);
  link.b = std::max(x.id, y.id);
  link.distance_m = distance;
  link.rate_mbps = rate;
  return link;
}

std::vector<Link> feasible_links(std::span<const CandidateSite> sites, const Scenario& s,
                                 double link_range_m) {
  std::vector<Link> links;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (auto link = evaluate_link(sites[i], sites[j], s, link_range_m)) {
        links.push_back(std::move(*link));
      }
    }
  }
  std::sort(links.begin(), links.end(), [](const Link& l, const Link& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });
  return links;
}

std::string candidates_csv(std::span<const CandidateSite> sites, const RegionGrid& grid) {
  std::ostringstream out;
  out << "id,row,col,kind,height\n";
  for (const CandidateSite& site : sites) {
    out << site.id << ',' << grid.row(site.cell) << ',' << grid.col(site.cell) << ','
        << to_string(site.kind) << ',' << site.antenna_height_m << '\n';
  }
  return out.str();
}

}  // namespace meshplan
