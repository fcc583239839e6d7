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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meshplan {

/// Row-major index of a grid cell.
using CellIndex = int;

enum class NodeKind { kNone, kIndoor, kOutdoor, kBoth };
enum class Environment { kFreeSpace, kFoliage, kBuilt };

const char* to_string(NodeKind kind);
const char* to_string(Environment env);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<Environment> parse_environment(std::string_view text);

inline bool allows_indoor(NodeKind k) { return k == NodeKind::kIndoor || k == NodeKind::kBoth; }
inline bool allows_outdoor(NodeKind k) { return k == NodeKind::kOutdoor || k == NodeKind::kBoth; }

/// One elementary area of the region.
struct Cell {
  bool interest = false;
  bool placement = true;
  NodeKind kind = NodeKind::kBoth;
  double elevation_m = 0.0;
  double dispersion = 1.0;  // d_i
  double growth = 1.0;      // g_i
  int users = 0;
  std::string profile;

  double weight() const { return dispersion * growth; }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform square grid; cell centers are the candidate positions.
struct RegionGrid {
  int rows = 0;
  int cols = 0;
  double cell_size_m = 0.0;
  std::vector<Cell> cells;
  CellIndex gateway = 0;

  int size() const { return rows * cols; }
  bool contains(CellIndex i) const { return i >= 0 && i < size(); }
  CellIndex index(int row, int col) const { return row * cols + col; }
  int row(CellIndex i) const { return i / cols; }
  int col(CellIndex i) const { return i % cols; }
  const Cell& at(CellIndex i) const { return cells.at(static_cast<std::size_t>(i)); }
  Cell& at(CellIndex i) { return cells.at(static_cast<std::size_t>(i)); }

  /// Center of cell `i` in meters from the grid origin (x along columns).
  Point center(CellIndex i) const {
    return {(col(i) + 0.5) * cell_size_m, (row(i) + 0.5) * cell_size_m};
  }

  friend bool operator==(const RegionGrid&, const RegionGrid&) = default;
};

/// Cell-center distance in meters. Throws kRange on a bad index.
double cell_distance(const RegionGrid& grid, CellIndex a, CellIndex b);

struct RateStep {
  double sensitivity_dbm = 0.0;
  double rate_kbps = 0.0;

  double rate_mbps() const { return rate_kbps / 1000.0; }

  friend bool operator==(const RateStep&, const RateStep&) = default;
};

struct RadioTechnology {
  std::string name;
  double max_range_m = 0.0;
  double max_rate_kbps = 0.0;
  double frequency_mhz = 2400.0;
  double tx_power_dbm = 20.0;
  double antenna_gain_tx_dbi = 5.0;
  double antenna_gain_rx_dbi = 5.0;
  double cable_loss_db = 2.0;
  std::vector<RateStep> rate_table;  // ascending sensitivity, ascending rate

  double max_rate_mbps() const { return max_rate_kbps / 1000.0; }
  double lowest_rate_mbps() const {
    return rate_table.empty() ? 0.0 : rate_table.front().rate_mbps();
  }

  friend bool operator==(const RadioTechnology&, const RadioTechnology&) = default;
};

/// Bundled technology profiles: 150 m / 54 Mbit/s and 250 m / 248 Mbit/s.
RadioTechnology radio_80211g();
RadioTechnology radio_80211n();
std::optional<RadioTechnology> radio_preset(std::string_view name);

struct EnvironmentConfig {
  Environment global = Environment::kFreeSpace;
  std::array<double, 3> exponents{2.0, 2.7, 3.2};  // free space, foliage, built
  double reference_distance_m = 1.0;
  std::optional<double> reference_loss_db;
  double clearance_threshold = 0.6;
  std::map<CellIndex, Environment> overrides;

  Environment at(CellIndex cell) const {
    auto it = overrides.find(cell);
    return it == overrides.end() ? global : it->second;
  }
  double exponent(Environment env) const { return exponents[static_cast<std::size_t>(env)]; }

  friend bool operator==(const EnvironmentConfig&, const EnvironmentConfig&) = default;
};

struct IndoorSite {
  CellIndex cell = 0;
  double height_m = 0.0;
  bool grid_power = true;
  double power_reliability = 1.0;

  friend bool operator==(const IndoorSite&, const IndoorSite&) = default;
};

struct AppProfile {
  std::string name;
  double rate_kbps = 0.0;
  bool latency_tolerant = true;
  // Soaks up whatever capacity is left; carries no planned load.
  bool cap_filling = false;

  friend bool operator==(const AppProfile&, const AppProfile&) = default;
};

/// Planning values at the upper end of the usual per-user ranges.
std::vector<AppProfile> default_app_profiles();

enum class Component {
  kIndoorRouter,
  kOutdoorRouter,
  kMast,
  kSolarKit,
  kBattery,
  kInstallationIndoor,
  kInstallationOutdoor,
  kCabling,
};
inline constexpr std::array<Component, 8> kAllComponents{
    Component::kIndoorRouter,       Component::kOutdoorRouter,
    Component::kMast,               Component::kSolarKit,
    Component::kBattery,            Component::kInstallationIndoor,
    Component::kInstallationOutdoor, Component::kCabling};

const char* to_string(Component c);
std::optional<Component> parse_component(std::string_view text);

struct PriceDistribution {
  enum class Kind { kPoint, kUniform, kTriangular };
  Kind kind = Kind::kPoint;
  double lo = 0.0;
  double mode = 0.0;
  double hi = 0.0;

  static PriceDistribution point(double v) { return {Kind::kPoint, v, v, v}; }
  static PriceDistribution uniform(double lo, double hi) {
    return {Kind::kUniform, lo, (lo + hi) / 2.0, hi};
  }
  static PriceDistribution triangular(double lo, double mode, double hi) {
    return {Kind::kTriangular, lo, mode, hi};
  }

  friend bool operator==(const PriceDistribution&, const PriceDistribution&) = default;
};

struct CostModel {
  std::string currency = "units";
  std::map<Component, PriceDistribution> prices;  // missing -> point(0)
  int trials = 10000;

  PriceDistribution price(Component c) const {
    auto it = prices.find(c);
    return it == prices.end() ? PriceDistribution::point(0.0) : it->second;
  }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct SolverParams {
  bool coverage_weighting = true;
  int local_search_passes = 8;
  std::uint64_t rng_seed = 1;
  int oracle_limit = 12;
  double indoor_bias = 2.0;
  int radios_per_node = 2;
  std::optional<double> interference_range_m;  // default 2 x coverage radius
  double utilization_factor = 0.5;
  std::vector<int> channels{1, 6, 11};
  double reliability_threshold = 0.0;
  std::optional<double> gateway_backhaul_kbps;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

struct LoopParams {
  double range_reduction_factor = 0.9;
  int max_iterations = 20;
  double min_range_fraction = 0.4;
  std::optional<double> initial_link_range_m;

  friend bool operator==(const LoopParams&, const LoopParams&) = default;
};

struct Scenario {
  RegionGrid grid;
  RadioTechnology radio;
  EnvironmentConfig environment;
  std::vector<IndoorSite> indoor_sites;
  double mast_height_m = 10.0;
  double coverage_radius_m = 0.0;
  std::vector<AppProfile> demand_profiles;
  CostModel cost_model;
  SolverParams solver;
  LoopParams loop;

  const AppProfile* find_profile(std::string_view name) const;
  double interference_range_m() const {
    return solver.interference_range_m.value_or(2.0 * coverage_radius_m);
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses a JSON scenario document. Throws Error with kSyntax (byte offset
/// in the message), kSchema (missing/unknown key, wrong type) or kRange.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

/// Canonical JSON form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

enum class Severity { kError, kWarning };

struct Issue {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  std::optional<CellIndex> cell;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool empty() const { return issues.empty(); }
  bool has_errors() const;
  std::string to_text() const;
};

ValidationReport validate_scenario(const Scenario& s);

}  // namespace meshplan
