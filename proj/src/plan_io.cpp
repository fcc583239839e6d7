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

#include "meshplan/plan_io.hpp"

#include <cmath>
#include <json.hpp>

#include "meshplan/error.hpp"

namespace meshplan {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kFormat, std::string("plan is missing \"") + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kFormat, std::string("plan field \"") + key + "\" has the wrong type");
  }
}

json site_json(const CandidateSite& site, const PlanDocument& doc) {
  return {{"id", site.id},
          {"kind", to_string(site.kind)},
          {"cell", site.cell},
          {"row", doc.cols > 0 ? site.cell / doc.cols : 0},
          {"col", doc.cols > 0 ? site.cell % doc.cols : 0},
          {"antenna_height_m", site.antenna_height_m},
          {"grid_power", site.grid_power},
          {"gateway", site.gateway}};
}

}  // namespace

PlanDocument make_document(const NetworkPlan& plan, const Scenario& s) {
  PlanDocument doc;
  doc.rows = s.grid.rows;
  doc.cols = s.grid.cols;
  doc.cell_size_m = s.grid.cell_size_m;
  doc.gateway = s.grid.gateway;
  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    if (s.grid.at(c).interest) doc.interest.push_back({c, s.grid.at(c).weight()});
  }
  doc.plan = plan;
  return doc;
}

std::string plan_to_json(const PlanDocument& doc) {
  const NetworkPlan& plan = doc.plan;
  const PlanMetrics& m = plan.metrics;
  json j;
  json interest = json::array();
  for (const auto& ic : doc.interest) interest.push_back({{"cell", ic.cell}, {"weight", ic.weight}});
  j["grid"] = {{"rows", doc.rows},
               {"cols", doc.cols},
               {"cell_size_m", doc.cell_size_m},
               {"gateway", doc.gateway},
               {"interest", interest}};

  json selected = json::array();
  for (const auto& site : plan.selected) selected.push_back(site_json(site, doc));
  j["selected"] = selected;

  json links = json::array();
  for (std::size_t i = 0; i < plan.topology.size(); ++i) {
    const Link& l = plan.topology[i];
    json lj = {{"a", l.a},
               {"b", l.b},
               {"distance_m", l.distance_m},
               {"rate_mbps", l.rate_mbps},
               {"channel", l.channel ? json(*l.channel) : json(nullptr)},
               {"load_kbps", l.load_kbps}};
    if (i < m.link_capacity_kbps.size()) lj["capacity_kbps"] = m.link_capacity_kbps[i];
    if (i < m.collision_domain.size()) lj["collision_domain"] = m.collision_domain[i];
    links.push_back(lj);
  }
  j["links"] = links;

  json coverage = json::object();
  for (const auto& [cell, id] : plan.coverage) coverage[std::to_string(cell)] = id;
  j["coverage"] = coverage;

  json util = json::object();
  for (const auto& [ch, u] : m.channel_utilization) util[std::to_string(ch)] = u;
  j["metrics"] = {{"outdoor_count", m.outdoor_count},
                  {"indoor_count", m.indoor_count},
                  {"total_count", plan.total_count()},
                  {"gateway_aggregate_kbps", m.gateway_aggregate_kbps},
                  {"unserved_kbps", m.unserved_kbps},
                  {"min_link_headroom_kbps", finite_or_null(m.min_link_headroom_kbps)},
                  {"residual_conflicts", m.residual_conflicts},
                  {"radio_overflows", m.radio_overflows},
                  {"load_feasible", m.load_feasible},
                  {"channel_utilization", util}};

  json trace = json::array();
  for (const auto& step : plan.search_trace) trace.push_back({step.outdoor, step.total});
  j["search_trace"] = trace;
  return j.dump(2) + "\n";
}

std::string plan_to_json(const NetworkPlan& plan, const Scenario& s) {
  return plan_to_json(make_document(plan, s));
}

PlanDocument plan_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSyntax, std::string("plan is not valid JSON at byte ") +
                                        std::to_string(e.byte));
  }
  PlanDocument doc;
  const json& grid = member(j, "grid");
  doc.rows = get<int>(grid, "rows");
  doc.cols = get<int>(grid, "cols");
  doc.cell_size_m = get<double>(grid, "cell_size_m");
  doc.gateway = get<int>(grid, "gateway");
  if (doc.rows < 1 || doc.cols < 1 || !(doc.cell_size_m > 0.0)) {
    throw Error(ErrorCode::kFormat, "plan grid has no positive extent");
  }
  const int cells = doc.rows * doc.cols;
  auto in_grid = [&](int c) {
    if (c < 0 || c >= cells) throw Error(ErrorCode::kFormat, "cell index outside the plan grid");
    return c;
  };
  for (const auto& ic : member(grid, "interest")) {
    doc.interest.push_back({in_grid(get<int>(ic, "cell")), get<double>(ic, "weight")});
  }

  NetworkPlan& plan = doc.plan;
  for (const auto& sj : member(j, "selected")) {
    CandidateSite site;
    site.id = get<std::string>(sj, "id");
    const auto kind = get<std::string>(sj, "kind");
    if (kind != "indoor" && kind != "outdoor") throw Error(ErrorCode::kFormat, "unknown site kind " + kind);
    site.kind = kind == "indoor" ? SiteKind::kIndoor : SiteKind::kOutdoor;
    site.cell = in_grid(get<int>(sj, "cell"));
    site.antenna_height_m = get<double>(sj, "antenna_height_m");
    site.grid_power = get<bool>(sj, "grid_power");
    site.gateway = get<bool>(sj, "gateway");
    plan.selected.push_back(std::move(site));
  }
  for (const auto& lj : member(j, "links")) {
    Link l;
    l.a = get<std::string>(lj, "a");
    l.b = get<std::string>(lj, "b");
    if (!plan.find(l.a) || !plan.find(l.b)) {
      throw Error(ErrorCode::kFormat, "link " + l.a + "-" + l.b + " names an unselected site");
    }
    l.distance_m = get<double>(lj, "distance_m");
    l.rate_mbps = get<double>(lj, "rate_mbps");
    const json& ch = member(lj, "channel");
    if (!ch.is_null()) l.channel = get<int>(lj, "channel");
    l.load_kbps = get<double>(lj, "load_kbps");
    if (lj.contains("capacity_kbps")) plan.metrics.link_capacity_kbps.push_back(get<double>(lj, "capacity_kbps"));
    if (lj.contains("collision_domain")) plan.metrics.collision_domain.push_back(get<int>(lj, "collision_domain"));
    plan.metrics.link_load_kbps.push_back(l.load_kbps);
    plan.topology.push_back(std::move(l));
  }
  for (const auto& [key, value] : member(j, "coverage").items()) {
    int cell = 0;
    try {
      cell = in_grid(std::stoi(key));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kFormat, "coverage key " + key + " is not a cell index");
    }
    if (!value.is_string()) throw Error(ErrorCode::kFormat, "coverage value must be a site id");
    plan.coverage[cell] = value.get<std::string>();
  }
  const json& mj = member(j, "metrics");
  PlanMetrics& m = plan.metrics;
  m.outdoor_count = get<int>(mj, "outdoor_count");
  m.indoor_count = get<int>(mj, "indoor_count");
  m.gateway_aggregate_kbps = get<double>(mj, "gateway_aggregate_kbps");
  m.unserved_kbps = get<double>(mj, "unserved_kbps");
  const json& head = member(mj, "min_link_headroom_kbps");
  m.min_link_headroom_kbps = head.is_null() ? kUnboundedHeadroom : get<double>(mj, "min_link_headroom_kbps");
  m.residual_conflicts = get<int>(mj, "residual_conflicts");
  m.radio_overflows = get<int>(mj, "radio_overflows");
  m.load_feasible = get<bool>(mj, "load_feasible");
  for (const auto& [key, value] : member(mj, "channel_utilization").items()) {
    m.channel_utilization[std::stoi(key)] = value.get<double>();
  }
  if (j.contains("search_trace")) {
    for (const auto& step : j.at("search_trace")) {
      if (!step.is_array() || step.size() != 2) throw Error(ErrorCode::kFormat, "bad search_trace entry");
      plan.search_trace.push_back({step[0].get<int>(), step[1].get<int>()});
    }
  }
  return doc;
}

namespace {

json cost_json(const BillOfMaterials& bom, const CostModel& model, const CostEstimate& e) {
  json lines = json::object();
  for (const auto& [c, q] : bom.quantity) lines[to_string(c)] = q;
  return {{"bill_of_materials", lines},
          {"currency", e.currency},
          {"point_total", point_total(bom, model)},
          {"mean", e.mean},
          {"stddev", e.stddev},
          {"p5", e.p5},
          {"p50", e.p50},
          {"p95", e.p95},
          {"trials", e.trials},
          {"seed", e.seed}};
}

}  // namespace

std::string cost_to_json(const BillOfMaterials& bom, const CostModel& model, const CostEstimate& e) {
  return cost_json(bom, model, e).dump(2) + "\n";
}

std::string report_to_json(const DesignReport& report, const Scenario& s,
                           const std::optional<CostEstimate>& cost) {
  json j;
  j["outcome"] = to_string(report.outcome);
  j["verified"] = report.verified();
  j["cause"] = report.cause;
  j["iterations_used"] = report.iterations_used();
  j["max_iterations"] = s.loop.max_iterations;
  j["initial_link_range_m"] = report.initial_link_range_m;
  j["indoor_candidates"] = report.indoor_candidates;
  j["uncoverable_cells"] = report.uncoverable_cells;
  j["unreachable_sites"] = report.unreachable_sites;

  json trace = json::array();
  for (const auto& r : report.trace) {
    trace.push_back({{"iteration", r.iteration},
                     {"link_range_m", r.link_range_m},
                     {"indoor_candidates", r.indoor_candidates},
                     {"outdoor_candidates", r.outdoor_candidates},
                     {"feasible_links", r.feasible_links},
                     {"planned", r.planned},
                     {"coverage_ok", r.coverage_ok},
                     {"throughput_ok", r.throughput_ok},
                     {"violations", r.violations},
                     {"outdoor_count", r.outdoor_count},
                     {"total_count", r.total_count},
                     {"min_link_headroom_kbps", r.planned ? finite_or_null(r.min_link_headroom_kbps) : json(nullptr)},
                     {"residual_conflicts", r.residual_conflicts},
                     {"note", r.note}});
  }
  j["trace"] = trace;

  if (report.verification) {
    const auto& v = *report.verification;
    json overloaded = json::array();
    for (const auto& [a, b] : v.overloaded_links) overloaded.push_back({{"a", a}, {"b", b}});
    j["verification"] = {{"coverage_ok", v.coverage_ok},
                         {"throughput_ok", v.throughput_ok},
                         {"uncovered_cells", v.uncovered_cells},
                         {"overloaded_links", overloaded},
                         {"backhaul_exceeded", v.backhaul_exceeded}};
  } else {
    j["verification"] = nullptr;
  }
  if (report.plan) {
    j["plan_summary"] = {{"outdoor_count", report.plan->metrics.outdoor_count},
                         {"total_count", report.plan->total_count()},
                         {"links", report.plan->topology.size()}};
  } else {
    j["plan_summary"] = nullptr;
  }
  if (cost && report.plan) {
    j["cost"] = cost_json(bill_of_materials(*report.plan), s.cost_model, *cost);
  } else {
    j["cost"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string validation_to_json(const ValidationReport& report) {
  json issues = json::array();
  for (const auto& issue : report.issues) {
    issues.push_back({{"severity", issue.severity == Severity::kError ? "error" : "warning"},
                      {"code", issue.code},
                      {"message", issue.message},
                      {"cell", issue.cell ? json(*issue.cell) : json(nullptr)}});
  }
  return json{{"issues", issues}, {"ok", report.empty()}}.dump(2) + "\n";
}

}  // namespace meshplan
