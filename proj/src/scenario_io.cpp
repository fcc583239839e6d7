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

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "meshplan/error.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, path + ": " + what);
}

[[noreturn]] void range_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kRange, path + ": " + what);
}

// Read-only view of one JSON object that rejects keys nobody asked for.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
  }

  ~StrictObject() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) schema_error(path_ + "." + key, "unknown key");
    }
  }

  StrictObject(const StrictObject&) = delete;
  StrictObject& operator=(const StrictObject&) = delete;

  const std::string& path() const { return path_; }
  std::string sub(const std::string& key) const { return path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) schema_error(sub(key), "missing required key");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    return v ? as_number(*v, sub(key)) : fallback;
  }
  double required_number(const std::string& key) { return as_number(require(key), sub(key)); }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return std::nullopt;
    return as_number(*v, sub(key));
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = find(key);
    return v ? as_integer(*v, sub(key)) : fallback;
  }
  long long required_integer(const std::string& key) { return as_integer(require(key), sub(key)); }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) schema_error(sub(key), "expected a boolean");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) schema_error(sub(key), "expected a string");
    return v->get<std::string>();
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<double>();
  }

  static long long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    if (v.is_number_unsigned() && v.get<unsigned long long>() > 0x7fffffffffffffffULL) {
      range_error(path, "integer too large");
    }
    return v.get<long long>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Cell references are a row-major integer or a [row, col] pair.
CellIndex parse_cell_ref(const json& v, const RegionGrid& grid, const std::string& path) {
  long long index = 0;
  if (v.is_array()) {
    if (v.size() != 2) schema_error(path, "expected [row, col]");
    const long long r = StrictObject::as_integer(v[0], path + "[0]");
    const long long c = StrictObject::as_integer(v[1], path + "[1]");
    if (r < 0 || r >= grid.rows || c < 0 || c >= grid.cols) range_error(path, "cell out of range");
    index = r * grid.cols + c;
  } else {
    index = StrictObject::as_integer(v, path);
  }
  if (index < 0 || index >= grid.size()) range_error(path, "cell index out of range");
  return static_cast<CellIndex>(index);
}

Cell parse_cell(const json& j, const std::string& path) {
  StrictObject o(j, path);
  Cell c;
  c.interest = o.boolean("interest", false);
  c.placement = o.boolean("placement", true);
  const NodeKind kind_default = c.placement ? NodeKind::kBoth : NodeKind::kNone;
  const std::string kind = o.string("kind", to_string(kind_default));
  auto parsed = parse_node_kind(kind);
  if (!parsed) schema_error(o.sub("kind"), "expected none|indoor|outdoor|both");
  c.kind = *parsed;
  c.elevation_m = o.number("elev_m", 0.0);
  c.dispersion = o.number("d", 1.0);
  c.growth = o.number("g", 1.0);
  const long long users = o.integer("users", 0);
  if (users < 0) range_error(o.sub("users"), "users must be >= 0");
  if (users > 1000000000LL) range_error(o.sub("users"), "users too large");
  c.users = static_cast<int>(users);
  c.profile = o.string("profile", "");
  return c;
}

RegionGrid parse_grid(const json& j) {
  StrictObject o(j, "grid");
  RegionGrid g;
  const long long rows = o.required_integer("rows");
  const long long cols = o.required_integer("cols");
  if (rows <= 0 || cols <= 0) range_error("grid", "rows and cols must be positive");
  if (rows * cols > 4000000) range_error("grid", "grid too large");
  g.rows = static_cast<int>(rows);
  g.cols = static_cast<int>(cols);
  g.cell_size_m = o.required_number("cell_size_m");
  if (!(g.cell_size_m > 0.0)) range_error(o.sub("cell_size_m"), "cell size must be positive");
  if (const json* cells = o.find("cells")) {
    if (!cells->is_array()) schema_error(o.sub("cells"), "expected an array");
    if (static_cast<long long>(cells->size()) != rows * cols) {
      range_error(o.sub("cells"), "expected rows x cols = " + std::to_string(rows * cols) +
                                      " cells, got " + std::to_string(cells->size()));
    }
    g.cells.reserve(cells->size());
    for (std::size_t i = 0; i < cells->size(); ++i) {
      g.cells.push_back(parse_cell((*cells)[i], o.sub("cells") + "[" + std::to_string(i) + "]"));
    }
  } else {
    g.cells.assign(static_cast<std::size_t>(rows * cols), Cell{});
  }
  g.gateway = parse_cell_ref(o.require("gateway"), g, o.sub("gateway"));
  return g;
}

RadioTechnology parse_radio(const json& j) {
  if (j.is_string()) {
    auto preset = radio_preset(j.get<std::string>());
    if (!preset) schema_error("radio", "unknown preset '" + j.get<std::string>() + "'");
    return *preset;
  }
  StrictObject o(j, "radio");
  RadioTechnology r = radio_80211g();
  const std::string preset = o.string("preset", "");
  if (!preset.empty()) {
    auto p = radio_preset(preset);
    if (!p) schema_error(o.sub("preset"), "unknown preset '" + preset + "'");
    r = *p;
  }
  r.max_range_m = o.number("max_range_m", r.max_range_m);
  r.frequency_mhz = o.number("frequency_mhz", r.frequency_mhz);
  r.tx_power_dbm = o.number("tx_power_dbm", r.tx_power_dbm);
  r.antenna_gain_tx_dbi = o.number("antenna_gain_tx_dbi", r.antenna_gain_tx_dbi);
  r.antenna_gain_rx_dbi = o.number("antenna_gain_rx_dbi", r.antenna_gain_rx_dbi);
  r.cable_loss_db = o.number("cable_loss_db", r.cable_loss_db);
  bool custom_table = false;
  if (const json* table = o.find("rate_table")) {
    if (!table->is_array()) schema_error(o.sub("rate_table"), "expected an array");
    r.rate_table.clear();
    for (std::size_t i = 0; i < table->size(); ++i) {
      StrictObject step((*table)[i], o.sub("rate_table") + "[" + std::to_string(i) + "]");
      r.rate_table.push_back({step.required_number("sensitivity_dbm"),
                              step.required_number("rate_kbps")});
    }
    custom_table = true;
  }
  const std::optional<double> max_rate = o.optional_number("max_rate_kbps");
  if (max_rate) {
    r.max_rate_kbps = *max_rate;
  } else if (custom_table) {
    r.max_rate_kbps = r.rate_table.empty() ? 0.0 : r.rate_table.back().rate_kbps;
  }
  r.name = o.string("name", custom_table && preset.empty() ? "custom" : r.name);
  return r;
}

Environment parse_env_name(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected an environment class string");
  auto env = parse_environment(v.get<std::string>());
  if (!env) schema_error(path, "expected free_space|foliage|built");
  return *env;
}

EnvironmentConfig parse_environment_config(const json& j, const RegionGrid& grid) {
  EnvironmentConfig e;
  if (j.is_string()) {
    e.global = parse_env_name(j, "environment");
    return e;
  }
  StrictObject o(j, "environment");
  if (const json* cls = o.find("class")) e.global = parse_env_name(*cls, o.sub("class"));
  if (const json* ex = o.find("exponents")) {
    StrictObject eo(*ex, o.sub("exponents"));
    for (Environment env : {Environment::kFreeSpace, Environment::kFoliage, Environment::kBuilt}) {
      auto& slot = e.exponents[static_cast<std::size_t>(env)];
      slot = eo.number(to_string(env), slot);
    }
  }
  e.reference_distance_m = o.number("reference_distance_m", e.reference_distance_m);
  e.reference_loss_db = o.optional_number("reference_loss_db");
  e.clearance_threshold = o.number("clearance_threshold", e.clearance_threshold);
  if (const json* ov = o.find("overrides")) {
    if (!ov->is_array()) schema_error(o.sub("overrides"), "expected an array");
    for (std::size_t i = 0; i < ov->size(); ++i) {
      const std::string path = o.sub("overrides") + "[" + std::to_string(i) + "]";
      StrictObject item((*ov)[i], path);
      const CellIndex cell = parse_cell_ref(item.require("cell"), grid, item.sub("cell"));
      e.overrides[cell] = parse_env_name(item.require("class"), item.sub("class"));
    }
  }
  return e;
}

std::vector<IndoorSite> parse_indoor_sites(const json& j, const RegionGrid& grid) {
  if (!j.is_array()) schema_error("indoor_sites", "expected an array");
  std::vector<IndoorSite> sites;
  for (std::size_t i = 0; i < j.size(); ++i) {
    StrictObject o(j[i], "indoor_sites[" + std::to_string(i) + "]");
    IndoorSite s;
    s.cell = parse_cell_ref(o.require("cell"), grid, o.sub("cell"));
    s.height_m = o.required_number("height_m");
    s.grid_power = o.boolean("grid_power", true);
    s.power_reliability = o.number("reliability", 1.0);
    sites.push_back(s);
  }
  return sites;
}

std::vector<AppProfile> parse_profiles(const json& j) {
  if (!j.is_array()) schema_error("demand_profiles", "expected an array");
  std::vector<AppProfile> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    StrictObject o(j[i], "demand_profiles[" + std::to_string(i) + "]");
    AppProfile p;
    p.name = o.string("name", "");
    if (p.name.empty()) schema_error(o.sub("name"), "missing required key");
    if (!names.insert(p.name).second) schema_error(o.sub("name"), "duplicate profile '" + p.name + "'");
    p.cap_filling = o.boolean("cap_filling", false);
    p.rate_kbps = p.cap_filling ? o.number("rate_kbps", 0.0) : o.required_number("rate_kbps");
    p.latency_tolerant = o.boolean("latency_tolerant", true);
    out.push_back(p);
  }
  return out;
}

PriceDistribution parse_price(const json& j, const std::string& path) {
  if (j.is_number()) return PriceDistribution::point(j.get<double>());
  StrictObject o(j, path);
  const std::string type = o.string("type", "point");
  if (type == "point") return PriceDistribution::point(o.required_number("value"));
  if (type == "uniform") {
    return PriceDistribution::uniform(o.required_number("lo"), o.required_number("hi"));
  }
  if (type == "triangular") {
    return PriceDistribution::triangular(o.required_number("lo"), o.required_number("mode"),
                                         o.required_number("hi"));
  }
  schema_error(o.sub("type"), "expected point|uniform|triangular");
}

CostModel parse_cost_model(const json& j) {
  StrictObject o(j, "cost_model");
  CostModel m;
  m.currency = o.string("currency", m.currency);
  const long long trials = o.integer("trials", m.trials);
  if (trials < 1 || trials > 100000000LL) range_error(o.sub("trials"), "trials must be in [1, 1e8]");
  m.trials = static_cast<int>(trials);
  if (const json* comps = o.find("components")) {
    if (!comps->is_object()) schema_error(o.sub("components"), "expected an object");
    for (const auto& [key, value] : comps->items()) {
      auto c = parse_component(key);
      if (!c) schema_error(o.sub("components") + "." + key, "unknown component class");
      m.prices[*c] = parse_price(value, o.sub("components") + "." + key);
    }
  }
  return m;
}

SolverParams parse_solver(const json& j) {
  StrictObject o(j, "solver");
  SolverParams p;
  p.coverage_weighting = o.boolean("coverage_weighting", p.coverage_weighting);
  p.local_search_passes = static_cast<int>(o.integer("local_search_passes", p.local_search_passes));
  if (const json* seed = o.find("seed")) {
    if (!seed->is_number_integer() || (seed->is_number_integer() && !seed->is_number_unsigned() &&
                                       seed->get<long long>() < 0)) {
      schema_error(o.sub("seed"), "expected a nonnegative integer");
    }
    p.rng_seed = seed->get<std::uint64_t>();
  }
  p.oracle_limit = static_cast<int>(o.integer("oracle_limit", p.oracle_limit));
  p.indoor_bias = o.number("indoor_bias", p.indoor_bias);
  p.radios_per_node = static_cast<int>(o.integer("radios_per_node", p.radios_per_node));
  p.interference_range_m = o.optional_number("interference_range_m");
  p.utilization_factor = o.number("utilization_factor", p.utilization_factor);
  if (const json* ch = o.find("channels")) {
    if (!ch->is_array()) schema_error(o.sub("channels"), "expected an array");
    p.channels.clear();
    for (std::size_t i = 0; i < ch->size(); ++i) {
      p.channels.push_back(static_cast<int>(
          StrictObject::as_integer((*ch)[i], o.sub("channels") + "[" + std::to_string(i) + "]")));
    }
  }
  p.reliability_threshold = o.number("reliability_threshold", p.reliability_threshold);
  p.gateway_backhaul_kbps = o.optional_number("gateway_backhaul_kbps");
  return p;
}

LoopParams parse_loop(const json& j) {
  StrictObject o(j, "loop");
  LoopParams p;
  p.range_reduction_factor = o.number("range_reduction_factor", p.range_reduction_factor);
  p.max_iterations = static_cast<int>(o.integer("max_iterations", p.max_iterations));
  p.min_range_fraction = o.number("min_range_fraction", p.min_range_fraction);
  p.initial_link_range_m = o.optional_number("initial_link_range_m");
  return p;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntax,
                "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }

  Scenario s;
  {
    StrictObject top(doc, "scenario");
    s.grid = parse_grid(top.require("grid"));
    s.radio = radio_80211g();
    if (const json* r = top.find("radio")) s.radio = parse_radio(*r);
    if (const json* e = top.find("environment")) s.environment = parse_environment_config(*e, s.grid);
    if (const json* sites = top.find("indoor_sites")) s.indoor_sites = parse_indoor_sites(*sites, s.grid);
    s.mast_height_m = top.number("mast_height_m", 10.0);
    s.coverage_radius_m = top.number("coverage_radius_m", s.radio.max_range_m * 0.5);
    s.demand_profiles = default_app_profiles();
    if (const json* p = top.find("demand_profiles")) s.demand_profiles = parse_profiles(*p);
    if (const json* c = top.find("cost_model")) s.cost_model = parse_cost_model(*c);
    if (const json* sp = top.find("solver")) s.solver = parse_solver(*sp);
    if (const json* lp = top.find("loop")) s.loop = parse_loop(*lp);
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return parse_scenario(buf.str());
}

namespace {

json price_to_json(const PriceDistribution& d) {
  switch (d.kind) {
    case PriceDistribution::Kind::kPoint: return {{"type", "point"}, {"value", d.lo}};
    case PriceDistribution::Kind::kUniform: return {{"type", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
    case PriceDistribution::Kind::kTriangular:
      return {{"type", "triangular"}, {"lo", d.lo}, {"mode", d.mode}, {"hi", d.hi}};
  }
  return nullptr;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  json cells = json::array();
  for (const Cell& c : s.grid.cells) {
    cells.push_back({{"interest", c.interest},
                     {"placement", c.placement},
                     {"kind", to_string(c.kind)},
                     {"elev_m", c.elevation_m},
                     {"d", c.dispersion},
                     {"g", c.growth},
                     {"users", c.users},
                     {"profile", c.profile}});
  }
  json grid = {{"rows", s.grid.rows},
               {"cols", s.grid.cols},
               {"cell_size_m", s.grid.cell_size_m},
               {"gateway", s.grid.gateway},
               {"cells", std::move(cells)}};

  json table = json::array();
  for (const RateStep& step : s.radio.rate_table) {
    table.push_back({{"sensitivity_dbm", step.sensitivity_dbm}, {"rate_kbps", step.rate_kbps}});
  }
  json radio = {{"name", s.radio.name},
                {"max_range_m", s.radio.max_range_m},
                {"max_rate_kbps", s.radio.max_rate_kbps},
                {"frequency_mhz", s.radio.frequency_mhz},
                {"tx_power_dbm", s.radio.tx_power_dbm},
                {"antenna_gain_tx_dbi", s.radio.antenna_gain_tx_dbi},
                {"antenna_gain_rx_dbi", s.radio.antenna_gain_rx_dbi},
                {"cable_loss_db", s.radio.cable_loss_db},
                {"rate_table", std::move(table)}};

  const auto& env = s.environment;
  json overrides = json::array();
  for (const auto& [cell, cls] : env.overrides) {
    overrides.push_back({{"cell", cell}, {"class", to_string(cls)}});
  }
  json environment = {{"class", to_string(env.global)},
                      {"exponents",
                       {{"free_space", env.exponents[0]},
                        {"foliage", env.exponents[1]},
                        {"built", env.exponents[2]}}},
                      {"reference_distance_m", env.reference_distance_m},
                      {"clearance_threshold", env.clearance_threshold},
                      {"overrides", std::move(overrides)}};
  if (env.reference_loss_db) environment["reference_loss_db"] = *env.reference_loss_db;

  json sites = json::array();
  for (const IndoorSite& site : s.indoor_sites) {
    sites.push_back({{"cell", site.cell},
                     {"height_m", site.height_m},
                     {"grid_power", site.grid_power},
                     {"reliability", site.power_reliability}});
  }

  json profiles = json::array();
  for (const AppProfile& p : s.demand_profiles) {
    profiles.push_back({{"name", p.name},
                        {"rate_kbps", p.rate_kbps},
                        {"latency_tolerant", p.latency_tolerant},
                        {"cap_filling", p.cap_filling}});
  }

  json components = json::object();
  for (const auto& [c, d] : s.cost_model.prices) components[to_string(c)] = price_to_json(d);
  json cost = {{"currency", s.cost_model.currency},
               {"trials", s.cost_model.trials},
               {"components", std::move(components)}};

  const auto& sp = s.solver;
  json solver = {{"coverage_weighting", sp.coverage_weighting},
                 {"local_search_passes", sp.local_search_passes},
                 {"seed", sp.rng_seed},
                 {"oracle_limit", sp.oracle_limit},
                 {"indoor_bias", sp.indoor_bias},
                 {"radios_per_node", sp.radios_per_node},
                 {"utilization_factor", sp.utilization_factor},
                 {"channels", sp.channels},
                 {"reliability_threshold", sp.reliability_threshold}};
  if (sp.interference_range_m) solver["interference_range_m"] = *sp.interference_range_m;
  if (sp.gateway_backhaul_kbps) solver["gateway_backhaul_kbps"] = *sp.gateway_backhaul_kbps;

  json loop = {{"range_reduction_factor", s.loop.range_reduction_factor},
               {"max_iterations", s.loop.max_iterations},
               {"min_range_fraction", s.loop.min_range_fraction}};
  if (s.loop.initial_link_range_m) loop["initial_link_range_m"] = *s.loop.initial_link_range_m;

  json doc = {{"grid", std::move(grid)},
              {"radio", std::move(radio)},
              {"environment", std::move(environment)},
              {"indoor_sites", std::move(sites)},
              {"mast_height_m", s.mast_height_m},
              {"coverage_radius_m", s.coverage_radius_m},
              {"demand_profiles", std::move(profiles)},
              {"cost_model", std::move(cost)},
              {"solver", std::move(solver)},
              {"loop", std::move(loop)}};
  return doc.dump(2) + "\n";
}

}  // namespace meshplan
