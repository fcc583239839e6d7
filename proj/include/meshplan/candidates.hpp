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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meshplan/scenario.hpp"

namespace meshplan {

inline constexpr const char* kGatewayId = "GW";

enum class SiteKind { kIndoor, kOutdoor };

const char* to_string(SiteKind kind);

struct CandidateSite {
  std::string id;
  CellIndex cell = 0;
  SiteKind kind = SiteKind::kOutdoor;
  double antenna_height_m = 0.0;
  bool grid_power = false;
  double power_reliability = 0.0;
  bool gateway = false;

  bool indoor() const { return kind == SiteKind::kIndoor; }
  bool outdoor() const { return kind == SiteKind::kOutdoor; }
  /// Cost class used for the bill of materials.
  const char* cost_class() const { return indoor() ? "indoor" : "outdoor"; }
};

/// A backbone link between two candidate sites, `a` < `b` by id.
struct Link {
  std::string a;
  std::string b;
  double distance_m = 0.0;
  double rate_mbps = 0.0;
  std::optional<int> channel;
  double load_kbps = 0.0;
};

/// Site ids are zero-padded so lexicographic order matches cell order.
std::string site_id(const RegionGrid& grid, SiteKind kind, CellIndex cell);

/// The landline node. Counts as indoor; its antenna sits on the declared
/// building at the gateway cell if one exists, otherwise on a standard mast.
CandidateSite gateway_site(const Scenario& s);

struct IcpExclusion {
  std::size_t site_index = 0;  // into Scenario::indoor_sites
  std::string reason;
};

/// Indoor candidates: grid-powered, reliable enough, on an indoor-capable cell.
std::vector<CandidateSite> identify_icp(const Scenario& s,
                                        std::vector<IcpExclusion>* excluded = nullptr);

/// Breadth-first expansion from the gateway in hops of at most `link_range_m`.
/// Indoor candidates may relay the expansion but are not returned. The
/// result starts with the gateway site.
std::vector<CandidateSite> generate_ocp(const Scenario& s, double link_range_m);

/// Every radio-feasible pair within range, sorted by (a, b).
std::vector<Link> feasible_links(std::span<const CandidateSite> sites, const Scenario& s,
                                 double link_range_m);

/// Evaluates one site pair; nullopt when out of range, obstructed or no rate.
std::optional<Link> evaluate_link(const CandidateSite& x, const CandidateSite& y,
                                  const Scenario& s, double link_range_m);

/// CSV with header "id,row,col,kind,height".
std::string candidates_csv(std::span<const CandidateSite> sites, const RegionGrid& grid);

}  // namespace meshplan
