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

#include "meshplan/meshplan.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "meshplan/candidates.hpp"
#include "meshplan/cost.hpp"
#include "meshplan/error.hpp"
#include "meshplan/export.hpp"
#include "meshplan/pipeline.hpp"
#include "meshplan/plan_io.hpp"
#include "meshplan/scenario.hpp"

struct meshplan_scenario {
  meshplan::Scenario value;
};

struct meshplan_report {
  meshplan::Scenario scenario;
  meshplan::DesignReport value;
  std::optional<meshplan::CostEstimate> cost;
};

namespace {

thread_local std::string g_last_error;

meshplan_status to_status(meshplan::ErrorCode code) {
  using meshplan::ErrorCode;
  switch (code) {
    case ErrorCode::kIo: return MESHPLAN_ERR_IO;
    case ErrorCode::kSyntax: return MESHPLAN_ERR_SYNTAX;
    case ErrorCode::kSchema: return MESHPLAN_ERR_SCHEMA;
    case ErrorCode::kRange: return MESHPLAN_ERR_RANGE;
    case ErrorCode::kInvalidArgument: return MESHPLAN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInfeasible: return MESHPLAN_ERR_INFEASIBLE;
    case ErrorCode::kDisconnected: return MESHPLAN_ERR_DISCONNECTED;
    case ErrorCode::kLoadInfeasible: return MESHPLAN_ERR_LOAD_INFEASIBLE;
    case ErrorCode::kTooLarge: return MESHPLAN_ERR_TOO_LARGE;
    case ErrorCode::kNotATree: return MESHPLAN_ERR_NOT_A_TREE;
    case ErrorCode::kFormat: return MESHPLAN_ERR_FORMAT;
  }
  return MESHPLAN_ERR_INTERNAL;
}

meshplan_status fail(meshplan_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename F>
meshplan_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const meshplan::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MESHPLAN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MESHPLAN_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

meshplan::LoopOverrides convert(const meshplan_overrides* o) {
  meshplan::LoopOverrides out;
  if (!o) return out;
  if (o->has_seed) out.seed = o->seed;
  if (o->max_iterations > 0) out.max_iterations = o->max_iterations;
  if (o->link_range_m > 0.0) out.link_range_m = o->link_range_m;
  return out;
}

#define MESHPLAN_REQUIRE(cond) \
  if (!(cond)) return fail(MESHPLAN_ERR_INVALID_ARGUMENT, "null argument: " #cond)

}  // namespace

extern "C" {

const char* meshplan_last_error(void) { return g_last_error.c_str(); }

const char* meshplan_status_name(meshplan_status status) {
  switch (status) {
    case MESHPLAN_OK: return "ok";
    case MESHPLAN_ERR_IO: return "io";
    case MESHPLAN_ERR_SYNTAX: return "syntax";
    case MESHPLAN_ERR_SCHEMA: return "schema";
    case MESHPLAN_ERR_RANGE: return "range";
    case MESHPLAN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MESHPLAN_ERR_INFEASIBLE: return "infeasible";
    case MESHPLAN_ERR_DISCONNECTED: return "disconnected";
    case MESHPLAN_ERR_LOAD_INFEASIBLE: return "load_infeasible";
    case MESHPLAN_ERR_TOO_LARGE: return "too_large";
    case MESHPLAN_ERR_NOT_A_TREE: return "not_a_tree";
    case MESHPLAN_ERR_FORMAT: return "format";
    case MESHPLAN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* meshplan_version(void) { return "0.1.0"; }

void meshplan_string_free(char* text) { std::free(text); }

meshplan_status meshplan_scenario_load_file(const char* path, meshplan_scenario** out) {
  MESHPLAN_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    *out = new meshplan_scenario{meshplan::load_scenario_file(path)};
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_scenario_parse(const char* json, size_t length, meshplan_scenario** out) {
  MESHPLAN_REQUIRE(json && out);
  *out = nullptr;
  return guarded([&] {
    *out = new meshplan_scenario{meshplan::parse_scenario(std::string_view(json, length))};
    return MESHPLAN_OK;
  });
}

void meshplan_scenario_free(meshplan_scenario* scenario) { delete scenario; }

meshplan_status meshplan_scenario_serialize(const meshplan_scenario* scenario, char** out_json) {
  MESHPLAN_REQUIRE(scenario && out_json);
  return guarded([&] {
    *out_json = dup(meshplan::serialize_scenario(scenario->value));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_scenario_validate(const meshplan_scenario* scenario, int* out_issues,
                                           int* out_errors, char** out_text) {
  MESHPLAN_REQUIRE(scenario);
  return guarded([&] {
    const meshplan::ValidationReport report = meshplan::validate_scenario(scenario->value);
    int errors = 0;
    for (const auto& issue : report.issues) errors += issue.severity == meshplan::Severity::kError;
    if (out_issues) *out_issues = static_cast<int>(report.issues.size());
    if (out_errors) *out_errors = errors;
    if (out_text) *out_text = dup(report.to_text());
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_candidates_csv(const meshplan_scenario* scenario, char** out_csv) {
  MESHPLAN_REQUIRE(scenario && out_csv);
  return guarded([&] {
    const meshplan::Scenario& s = scenario->value;
    std::vector<meshplan::CandidateSite> sites =
        meshplan::generate_ocp(s, meshplan::initial_link_range(s));
    const auto icp = meshplan::identify_icp(s);
    sites.insert(sites.end(), icp.begin(), icp.end());
    *out_csv = dup(meshplan::candidates_csv(sites, s.grid));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_design(const meshplan_scenario* scenario,
                                const meshplan_overrides* overrides, meshplan_report** out) {
  MESHPLAN_REQUIRE(scenario && out);
  *out = nullptr;
  return guarded([&] {
    auto report = std::make_unique<meshplan_report>();
    const meshplan::LoopOverrides o = convert(overrides);
    report->scenario = meshplan::apply_overrides(scenario->value, o);
    report->value = meshplan::run_design_loop(report->scenario);
    if (report->value.plan) {
      const auto& s = report->scenario;
      report->cost = meshplan::estimate_cost(meshplan::bill_of_materials(*report->value.plan),
                                            s.cost_model, s.cost_model.trials, s.solver.rng_seed);
    }
    *out = report.release();
    return MESHPLAN_OK;
  });
}

void meshplan_report_free(meshplan_report* report) { delete report; }

int meshplan_report_verified(const meshplan_report* report) {
  return report && report->value.verified() ? 1 : 0;
}

meshplan_outcome meshplan_report_outcome(const meshplan_report* report) {
  if (!report) return MESHPLAN_ITERATION_BUDGET_EXHAUSTED;
  switch (report->value.outcome) {
    case meshplan::LoopOutcome::kVerified: return MESHPLAN_VERIFIED;
    case meshplan::LoopOutcome::kInfeasibleCoverage: return MESHPLAN_INFEASIBLE_COVERAGE;
    case meshplan::LoopOutcome::kDisconnected: return MESHPLAN_DISCONNECTED;
    case meshplan::LoopOutcome::kIterationBudgetExhausted: break;
  }
  return MESHPLAN_ITERATION_BUDGET_EXHAUSTED;
}

int meshplan_report_iterations(const meshplan_report* report) {
  return report ? report->value.iterations_used() : 0;
}

const char* meshplan_report_cause(const meshplan_report* report) {
  return report ? report->value.cause.c_str() : "";
}

meshplan_status meshplan_report_plan_json(const meshplan_report* report, char** out) {
  MESHPLAN_REQUIRE(report && out);
  if (!report->value.plan) return fail(MESHPLAN_ERR_INFEASIBLE, "report holds no plan");
  return guarded([&] {
    *out = dup(meshplan::plan_to_json(*report->value.plan, report->scenario));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_report_json(const meshplan_report* report, char** out) {
  MESHPLAN_REQUIRE(report && out);
  return guarded([&] {
    *out = dup(meshplan::report_to_json(report->value, report->scenario, report->cost));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_report_trace_csv(const meshplan_report* report, char** out) {
  MESHPLAN_REQUIRE(report && out);
  return guarded([&] {
    *out = dup(meshplan::trace_csv(report->value));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_report_cost_json(const meshplan_report* report, char** out) {
  MESHPLAN_REQUIRE(report && out);
  if (!report->cost) return fail(MESHPLAN_ERR_INFEASIBLE, "report holds no plan to price");
  return guarded([&] {
    const auto& s = report->scenario;
    *out = dup(meshplan::cost_to_json(meshplan::bill_of_materials(*report->value.plan),
                                      s.cost_model, *report->cost));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_oracle(const meshplan_scenario* scenario,
                                const meshplan_overrides* overrides, char** out_plan) {
  MESHPLAN_REQUIRE(scenario && out_plan);
  return guarded([&] {
    const meshplan::Scenario s = meshplan::apply_overrides(scenario->value, convert(overrides));
    const double range = meshplan::initial_link_range(s);
    const auto icp = meshplan::identify_icp(s);
    const auto ocp = meshplan::generate_ocp(s, range);
    std::vector<meshplan::CandidateSite> sites = ocp;
    sites.insert(sites.end(), icp.begin(), icp.end());
    const auto links = meshplan::feasible_links(sites, s, range);
    const meshplan::NetworkPlan plan = meshplan::brute_force_plan(s, icp, ocp, links);
    *out_plan = dup(meshplan::plan_to_json(plan, s));
    return MESHPLAN_OK;
  });
}

meshplan_status meshplan_export_plan(const char* plan_json, size_t length,
                                     meshplan_export_format format, char** out) {
  MESHPLAN_REQUIRE(plan_json && out);
  return guarded([&] {
    const meshplan::PlanDocument doc = meshplan::plan_from_json(std::string_view(plan_json, length));
    meshplan::ExportFormat f;
    switch (format) {
      case MESHPLAN_EXPORT_SVG: f = meshplan::ExportFormat::kSvg; break;
      case MESHPLAN_EXPORT_GEOJSON: f = meshplan::ExportFormat::kGeoJson; break;
      case MESHPLAN_EXPORT_CSV: f = meshplan::ExportFormat::kCsv; break;
      default: return fail(MESHPLAN_ERR_INVALID_ARGUMENT, "unknown export format");
    }
    *out = dup(meshplan::export_plan(doc, f));
    return MESHPLAN_OK;
  });
}

}  // extern "C"
