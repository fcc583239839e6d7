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

#include "meshplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "meshplan/error.hpp"

namespace meshplan {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kNone: return "none";
    case NodeKind::kIndoor: return "indoor";
    case NodeKind::kOutdoor: return "outdoor";
    case NodeKind::kBoth: return "both";
  }
  return "none";
}

const char* to_string(Environment env) {
  switch (env) {
    case Environment::kFreeSpace: return "free_space";
    case Environment::kFoliage: return "foliage";
    case Environment::kBuilt: return "built";
  }
  return "free_space";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "none") return NodeKind::kNone;
  if (text == "indoor") return NodeKind::kIndoor;
  if (text == "outdoor") return NodeKind::kOutdoor;
  if (text == "both") return NodeKind::kBoth;
  return std::nullopt;
}

std::optional<Environment> parse_environment(std::string_view text) {
  if (text == "free_space") return Environment::kFreeSpace;
  if (text == "foliage") return Environment::kFoliage;
  if (text == "built") return Environment::kBuilt;
  return std::nullopt;
}

const char* to_string(Component c) {
  switch (c) {
    case Component::kIndoorRouter: return "indoor_router";
    case Component::kOutdoorRouter: return "outdoor_router";
    case Component::kMast: return "mast";
    case Component::kSolarKit: return "solar_kit";
    case Component::kBattery: return "battery";
    case Component::kInstallationIndoor: return "installation_indoor";
    case Component::kInstallationOutdoor: return "installation_outdoor";
    case Component::kCabling: return "cabling";
  }
  return "cabling";
}

std::optional<Component> parse_component(std::string_view text) {
  for (Component c : kAllComponents) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

double cell_distance(const RegionGrid& grid, CellIndex a, CellIndex b) {
  if (!grid.contains(a) || !grid.contains(b)) {
    throw Error(ErrorCode::kRange, "cell index out of range");
  }
  const double dr = grid.row(a) - grid.row(b);
  const double dc = grid.col(a) - grid.col(b);
  return grid.cell_size_m * std::sqrt(dr * dr + dc * dc);
}

RadioTechnology radio_80211g() {
  RadioTechnology r;
  r.name = "802.11g";
  r.max_range_m = 150.0;
  r.frequency_mhz = 2400.0;
  r.rate_table = {{-94, 6000},  {-91, 9000},  {-90, 12000}, {-86, 18000},
                  {-83, 24000}, {-77, 36000}, {-74, 48000}, {-72, 54000}};
  r.max_rate_kbps = 54000.0;
  return r;
}

RadioTechnology radio_80211n() {
  RadioTechnology r;
  r.name = "802.11n";
  r.max_range_m = 250.0;
  r.frequency_mhz = 2400.0;
  r.rate_table = {{-89, 15000},  {-86, 30000},  {-84, 45000},  {-81, 60000},
                  {-78, 90000},  {-74, 120000}, {-72, 135000}, {-70, 150000},
                  {-67, 200000}, {-64, 248000}};
  r.max_rate_kbps = 248000.0;
  return r;
}

std::optional<RadioTechnology> radio_preset(std::string_view name) {
  if (name == "802.11g") return radio_80211g();
  if (name == "802.11n") return radio_80211n();
  return std::nullopt;
}

std::vector<AppProfile> default_app_profiles() {
  return {
      {"text_messaging", 1.0, true, false},
      {"email", 100.0, true, false},
      {"web_browsing", 100.0, true, false},
      {"audio_streaming", 160.0, false, false},
      {"voip", 100.0, false, false},
      {"video_streaming", 200.0, false, false},
      {"peer_to_peer", 0.0, true, true},
  };
}

const AppProfile* Scenario::find_profile(std::string_view name) const {
  for (const auto& p : demand_profiles) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool ValidationReport::has_errors() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.severity == Severity::kError; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& issue : issues) {
    out << (issue.severity == Severity::kError ? "error" : "warning") << ": "
        << issue.code;
    if (issue.cell) out << " [cell " << *issue.cell << "]";
    out << ": " << issue.message << "\n";
  }
  return out.str();
}

namespace {

class Collector {
 public:
  explicit Collector(ValidationReport& r) : report_(r) {}

  void error(std::string code, std::string msg, std::optional<CellIndex> cell = {}) {
    report_.issues.push_back({Severity::kError, std::move(code), std::move(msg), cell});
  }
  void warning(std::string code, std::string msg, std::optional<CellIndex> cell = {}) {
    report_.issues.push_back({Severity::kWarning, std::move(code), std::move(msg), cell});
  }

 private:
  ValidationReport& report_;
};

bool valid_distribution(const PriceDistribution& d) {
  const bool finite = std::isfinite(d.lo) && std::isfinite(d.mode) && std::isfinite(d.hi);
  return finite && d.lo >= 0.0 && d.lo <= d.mode && d.mode <= d.hi;
}

void check_grid(const Scenario& s, Collector& out) {
  const RegionGrid& g = s.grid;
  if (g.rows <= 0 || g.cols <= 0) out.error("grid.size", "rows and cols must be positive");
  if (static_cast<long>(g.cells.size()) != static_cast<long>(g.rows) * g.cols) {
    out.error("grid.cells", "cell count does not match rows x cols");
    return;
  }
  if (!(g.cell_size_m > 0.0) || !std::isfinite(g.cell_size_m)) {
    out.error("grid.cell_size", "cell_size must be positive");
  }
  if (!g.contains(g.gateway)) {
    out.error("grid.gateway", "gateway index out of range");
  } else if (!g.at(g.gateway).placement) {
    out.error("grid.gateway", "gateway cell does not allow placement", g.gateway);
  }
  for (CellIndex i = 0; i < g.size(); ++i) {
    const Cell& c = g.at(i);
    if (!c.placement && c.kind != NodeKind::kNone) {
      out.error("cell.kind", "placement is forbidden but node kind is '" +
                                 std::string(to_string(c.kind)) + "'", i);
    }
    if (!(c.dispersion >= 0.0) || !std::isfinite(c.dispersion)) {
      out.error("cell.dispersion", "dispersion factor must be >= 0", i);
    }
    if (!(c.growth >= 0.0) || !std::isfinite(c.growth)) {
      out.error("cell.growth", "growth factor must be >= 0", i);
    }
    if (!std::isfinite(c.elevation_m)) out.error("cell.elevation", "elevation must be finite", i);
    if (c.users < 0) out.error("cell.users", "users must be >= 0", i);
    if (!c.profile.empty() && s.find_profile(c.profile) == nullptr) {
      out.error("cell.profile", "unknown demand profile '" + c.profile + "'", i);
    }
    if (c.users > 0 && c.profile.empty()) {
      out.error("cell.profile", "cell has users but no demand profile", i);
    }
    if (c.users > 0 && !c.interest) {
      out.warning("cell.demand", "demand on a non-interest cell is served only if covered", i);
    }
  }
  for (const auto& [cell, env] : s.environment.overrides) {
    if (!g.contains(cell)) out.error("environment.overrides", "override cell out of range");
  }
}

void check_radio(const RadioTechnology& r, Collector& out) {
  if (!(r.max_range_m > 0.0)) out.error("radio.max_range", "max_range must be positive");
  if (!(r.frequency_mhz > 0.0)) out.error("radio.frequency", "frequency must be positive");
  if (r.rate_table.empty()) {
    out.error("radio.rate_table", "rate table is empty");
    return;
  }
  for (std::size_t i = 1; i < r.rate_table.size(); ++i) {
    if (!(r.rate_table[i].sensitivity_dbm > r.rate_table[i - 1].sensitivity_dbm) ||
        !(r.rate_table[i].rate_kbps > r.rate_table[i - 1].rate_kbps)) {
      out.error("radio.rate_table",
                "rate table must be sorted by sensitivity with strictly increasing rates");
      break;
    }
  }
  if (!(r.rate_table.front().rate_kbps > 0.0)) {
    out.error("radio.rate_table", "rates must be positive");
  }
  if (r.max_rate_kbps != r.rate_table.back().rate_kbps) {
    out.error("radio.max_rate", "max_rate must equal the largest rate in the table");
  }
}

void check_parameters(const Scenario& s, Collector& out) {
  const auto& env = s.environment;
  for (double n : env.exponents) {
    if (!(n >= 2.0)) {
      out.error("environment.exponent", "path loss exponent must be >= 2");
      break;
    }
  }
  if (!(env.reference_distance_m > 0.0)) {
    out.error("environment.reference_distance", "reference distance must be positive");
  }
  if (!(env.clearance_threshold >= 0.0)) {
    out.error("environment.clearance_threshold", "clearance threshold must be >= 0");
  }
  if (!(s.mast_height_m > 0.0)) out.error("mast_height", "mast height must be positive");
  if (!(s.coverage_radius_m > 0.0) || s.coverage_radius_m > s.radio.max_range_m) {
    out.error("coverage_radius", "coverage radius must be in (0, radio max_range]");
  }
  for (std::size_t i = 0; i < s.indoor_sites.size(); ++i) {
    const IndoorSite& site = s.indoor_sites[i];
    const std::string label = "indoor site #" + std::to_string(i);
    if (!s.grid.contains(site.cell)) {
      out.error("indoor_site.cell", label + " references a cell out of range");
      continue;
    }
    if (!s.grid.at(site.cell).placement) {
      out.error("indoor_site.placement", label + " sits on a cell that forbids placement",
                site.cell);
    }
    if (!(site.height_m > 0.0)) out.error("indoor_site.height", label + " height must be positive", site.cell);
    if (!(site.power_reliability >= 0.0 && site.power_reliability <= 1.0)) {
      out.error("indoor_site.reliability", label + " reliability must be in [0, 1]", site.cell);
    }
  }
  for (const auto& p : s.demand_profiles) {
    if (!(p.rate_kbps >= 0.0)) out.error("demand_profile.rate", "profile '" + p.name + "' has negative rate");
  }
  for (const auto& [component, dist] : s.cost_model.prices) {
    if (!valid_distribution(dist)) {
      out.error("cost_model.price", std::string("invalid price distribution for ") +
                                        to_string(component));
    }
  }
  if (s.cost_model.trials < 1) out.error("cost_model.trials", "trials must be >= 1");

  const auto& sp = s.solver;
  if (sp.oracle_limit < 0 || sp.oracle_limit > 20) out.error("solver.oracle_limit", "oracle_limit must be in [0, 20]");
  if (sp.local_search_passes < 0) out.error("solver.local_search_passes", "must be >= 0");
  if (!(sp.indoor_bias > 1.0)) out.error("solver.indoor_bias", "indoor bias must be > 1");
  if (sp.radios_per_node < 1) out.error("solver.radios_per_node", "must be >= 1");
  if (sp.channels.empty()) out.error("solver.channels", "channel set is empty");
  if (!(sp.utilization_factor > 0.0 && sp.utilization_factor <= 1.0)) {
    out.error("solver.utilization_factor", "utilization factor must be in (0, 1]");
  }
  if (!(sp.reliability_threshold >= 0.0 && sp.reliability_threshold <= 1.0)) {
    out.error("solver.reliability_threshold", "reliability threshold must be in [0, 1]");
  }
  if (sp.interference_range_m && !(*sp.interference_range_m >= 0.0)) {
    out.error("solver.interference_range", "interference range must be >= 0");
  }

  const auto& lp = s.loop;
  if (!(lp.range_reduction_factor > 0.0 && lp.range_reduction_factor < 1.0)) {
    out.error("loop.range_reduction_factor", "factor must be in (0, 1)");
  }
  if (lp.max_iterations < 1) out.error("loop.max_iterations", "must be >= 1");
  if (!(lp.min_range_fraction > 0.0 && lp.min_range_fraction <= 1.0)) {
    out.error("loop.min_range_fraction", "must be in (0, 1]");
  }
  if (lp.initial_link_range_m && !(*lp.initial_link_range_m > 0.0)) {
    out.error("loop.initial_link_range", "initial link range must be positive");
  }
}

void check_reachability(const Scenario& s, Collector& out) {
  const RegionGrid& g = s.grid;
  if (!(g.cell_size_m > 0.0)) return;
  std::vector<CellIndex> hosts;
  for (CellIndex i = 0; i < g.size(); ++i) {
    if (g.at(i).placement) hosts.push_back(i);
  }
  for (CellIndex i = 0; i < g.size(); ++i) {
    if (!g.at(i).interest) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (CellIndex h : hosts) nearest = std::min(nearest, cell_distance(g, i, h));
    if (nearest > s.radio.max_range_m) {
      out.warning("reachability", "unreachable interest area", i);
    }
  }
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report;
  Collector out(report);
  check_grid(s, out);
  check_radio(s.radio, out);
  check_parameters(s, out);
  if (static_cast<long>(s.grid.cells.size()) == static_cast<long>(s.grid.rows) * s.grid.cols) {
    check_reachability(s, out);
  }
  return report;
}

}  // namespace meshplan
