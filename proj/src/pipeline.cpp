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

#include "meshplan/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "meshplan/demand.hpp"
#include "meshplan/error.hpp"
#include "meshplan/propagation.hpp"

namespace meshplan {

const char* to_string(LoopOutcome outcome) {
  switch (outcome) {
    case LoopOutcome::kVerified: return "Verified";
    case LoopOutcome::kInfeasibleCoverage: return "InfeasibleCoverage";
    case LoopOutcome::kDisconnected: return "Disconnected";
    case LoopOutcome::kIterationBudgetExhausted: return "IterationBudgetExhausted";
  }
  return "unknown";
}

VerificationReport verify(const NetworkPlan& plan, const Scenario& s) {
  VerificationReport report;
  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    if (!s.grid.at(c).interest) continue;
    bool served = false;
    if (auto it = plan.coverage.find(c); it != plan.coverage.end()) {
      const CandidateSite* site = plan.find(it->second);
      served = site && cell_distance(s.grid, site->cell, c) <= s.coverage_radius_m;
    }
    if (!served) report.uncovered_cells.push_back(c);
  }
  report.coverage_ok = report.uncovered_cells.empty();

  const auto& capacity = plan.metrics.link_capacity_kbps;
  for (std::size_t i = 0; i < plan.topology.size(); ++i) {
    const Link& l = plan.topology[i];
    const double cap = i < capacity.size() ? capacity[i] : 0.0;
    if (l.load_kbps > cap * (1.0 + 1e-12)) report.overloaded_links.emplace_back(l.a, l.b);
  }
  if (s.solver.gateway_backhaul_kbps &&
      plan.metrics.gateway_aggregate_kbps > *s.solver.gateway_backhaul_kbps) {
    report.backhaul_exceeded = true;
  }
  report.throughput_ok = report.overloaded_links.empty() && !report.backhaul_exceeded;
  return report;
}

Scenario apply_overrides(Scenario s, const LoopOverrides& overrides) {
  if (overrides.seed) s.solver.rng_seed = *overrides.seed;
  if (overrides.max_iterations) s.loop.max_iterations = *overrides.max_iterations;
  if (overrides.link_range_m) s.loop.initial_link_range_m = *overrides.link_range_m;
  return s;
}

double initial_link_range(const Scenario& s) {
  if (s.loop.initial_link_range_m) return *s.loop.initial_link_range_m;
  const PathLossModel model = path_loss_model(s.environment, s.environment.global);
  return effective_range(model, s.radio, s.radio.lowest_rate_mbps());
}

namespace {

using Score = std::tuple<bool, bool, int>;

Score score(const IterationRecord& r) { return {r.coverage_ok, r.throughput_ok, -r.violations}; }

}  // namespace

DesignReport run_design_loop(const Scenario& base, const LoopOverrides& overrides) {
  const Scenario s = apply_overrides(base, overrides);
  if (s.loop.max_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");

  DesignReport report;
  report.initial_link_range_m = initial_link_range(s);
  const double floor = report.initial_link_range_m * s.loop.min_range_fraction;
  const std::vector<CandidateSite> icp = identify_icp(s);
  for (const auto& site : icp) report.indoor_candidates.push_back(site.id);
  const DemandMap demand = scenario_demand(s);

  std::optional<Score> best_score;
  double range = report.initial_link_range_m;
  for (int iteration = 1; iteration <= s.loop.max_iterations; ++iteration) {
    if (iteration > 1) range *= s.loop.range_reduction_factor;
    if (range < floor * (1.0 - 1e-12)) {
      report.cause = "link range fell below the floor";
      break;
    }
    IterationRecord rec;
    rec.iteration = iteration;
    rec.link_range_m = range;
    rec.indoor_candidates = static_cast<int>(icp.size());

    const std::vector<CandidateSite> ocp = generate_ocp(s, range);
    rec.outdoor_candidates = static_cast<int>(ocp.size()) - 1;
    std::vector<CandidateSite> sites = ocp;
    sites.insert(sites.end(), icp.begin(), icp.end());
    const std::vector<Link> links = feasible_links(sites, s, range);
    rec.feasible_links = static_cast<int>(links.size());

    NetworkPlan plan;
    try {
      plan = select_nodes(s, icp, ocp, links);
    } catch (const PlanningError& e) {
      rec.note = e.what();
      report.trace.push_back(rec);
      if (iteration == 1) {
        report.outcome = e.code() == ErrorCode::kInfeasible ? LoopOutcome::kInfeasibleCoverage
                                                            : LoopOutcome::kDisconnected;
        report.uncoverable_cells = e.cells();
        report.unreachable_sites = e.sites();
      } else {
        report.outcome = LoopOutcome::kIterationBudgetExhausted;
      }
      report.cause = e.what();
      return report;
    }

    auto search = std::move(plan.search_trace);
    plan = finalize_plan(plan.selected, links, s, demand);
    plan.search_trace = std::move(search);
    const VerificationReport v = verify(plan, s);
    rec.planned = true;
    rec.coverage_ok = v.coverage_ok;
    rec.throughput_ok = v.throughput_ok;
    rec.violations = v.violation_count();
    rec.outdoor_count = plan.metrics.outdoor_count;
    rec.total_count = plan.total_count();
    rec.min_link_headroom_kbps = plan.metrics.min_link_headroom_kbps;
    rec.residual_conflicts = plan.metrics.residual_conflicts;
    report.trace.push_back(rec);

    if (!best_score || score(rec) > *best_score) {
      best_score = score(rec);
      report.plan = plan;
      report.verification = v;
    }
    if (v.ok()) {
      report.outcome = LoopOutcome::kVerified;
      report.plan = std::move(plan);
      report.verification = v;
      report.cause.clear();
      return report;
    }
  }
  report.outcome = LoopOutcome::kIterationBudgetExhausted;
  if (report.cause.empty()) report.cause = "iteration budget exhausted";
  return report;
}

std::string trace_csv(const DesignReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "iteration,link_range_m,indoor_candidates,outdoor_candidates,feasible_links,planned,"
         "coverage_ok,throughput_ok,violations,outdoor_count,total_count,min_link_headroom_kbps,"
         "residual_conflicts\n";
  for (const auto& r : report.trace) {
    out << r.iteration << ',' << r.link_range_m << ',' << r.indoor_candidates << ','
        << r.outdoor_candidates << ',' << r.feasible_links << ',' << (r.planned ? 1 : 0) << ','
        << (r.coverage_ok ? 1 : 0) << ',' << (r.throughput_ok ? 1 : 0) << ',' << r.violations << ','
        << r.outdoor_count << ',' << r.total_count << ',';
    if (r.planned && std::isfinite(r.min_link_headroom_kbps)) out << r.min_link_headroom_kbps;
    out << ',' << r.residual_conflicts << '\n';
  }
  return out.str();
}

}  // namespace meshplan
