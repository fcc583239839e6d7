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

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "meshplan/meshplan.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

struct CString {
  char* ptr = nullptr;
  ~CString() { meshplan_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct ScenarioHandle {
  meshplan_scenario* ptr = nullptr;
  ~ScenarioHandle() { meshplan_scenario_free(ptr); }
};

struct ReportHandle {
  meshplan_report* ptr = nullptr;
  ~ReportHandle() { meshplan_report_free(ptr); }
};

int report_error(meshplan_status status) {
  std::cerr << "meshplan: " << meshplan_status_name(status) << ": " << meshplan_last_error() << "\n";
  return kExitError;
}

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "meshplan: io: cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int load(const std::string& path, ScenarioHandle& h) {
  const meshplan_status st = meshplan_scenario_load_file(path.c_str(), &h.ptr);
  return st == MESHPLAN_OK ? kExitOk : report_error(st);
}

struct PlanOptions {
  std::string input;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iterations;
  std::optional<double> link_range;
  bool trace_csv = false;
  bool quiet = false;
};

meshplan_overrides overrides(const PlanOptions& o) {
  meshplan_overrides ov{};
  if (o.seed) {
    ov.has_seed = 1;
    ov.seed = *o.seed;
  }
  ov.max_iterations = o.max_iterations.value_or(0);
  ov.link_range_m = o.link_range.value_or(0.0);
  return ov;
}

int cmd_validate(const std::string& input) {
  ScenarioHandle h;
  if (int rc = load(input, h)) return rc;
  int issues = 0;
  CString text;
  const meshplan_status st = meshplan_scenario_validate(h.ptr, &issues, nullptr, &text.ptr);
  if (st != MESHPLAN_OK) return report_error(st);
  if (issues == 0) {
    std::cout << "ok: scenario admissible\n";
    return kExitOk;
  }
  std::cout << text.str();
  return kExitInfeasible;
}

int cmd_plan(const PlanOptions& o) {
  ScenarioHandle h;
  if (int rc = load(o.input, h)) return rc;
  int errors = 0;
  CString text;
  meshplan_status st = meshplan_scenario_validate(h.ptr, nullptr, &errors, &text.ptr);
  if (st != MESHPLAN_OK) return report_error(st);
  if (errors > 0) {
    std::cerr << "meshplan: scenario is not admissible\n" << text.str();
    return kExitError;
  }

  ReportHandle r;
  const meshplan_overrides ov = overrides(o);
  st = meshplan_design(h.ptr, &ov, &r.ptr);
  if (st != MESHPLAN_OK) return report_error(st);

  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) {
    std::cerr << "meshplan: io: cannot create " << o.out_dir << ": " << ec.message() << "\n";
    return kExitError;
  }
  const std::filesystem::path dir(o.out_dir);
  CString report;
  if ((st = meshplan_report_json(r.ptr, &report.ptr)) != MESHPLAN_OK) return report_error(st);
  if (!write_file(dir / "report.json", report.str())) return kExitError;
  CString plan;
  if (meshplan_report_plan_json(r.ptr, &plan.ptr) == MESHPLAN_OK) {
    if (!write_file(dir / "plan.json", plan.str())) return kExitError;
  }
  if (o.trace_csv) {
    CString trace;
    if ((st = meshplan_report_trace_csv(r.ptr, &trace.ptr)) != MESHPLAN_OK) return report_error(st);
    if (!write_file(dir / "trace.csv", trace.str())) return kExitError;
  }

  const bool verified = meshplan_report_verified(r.ptr) != 0;
  if (!o.quiet) {
    std::cout << (verified ? "verified" : "not verified") << " after "
              << meshplan_report_iterations(r.ptr) << " iteration(s)";
    const std::string cause = meshplan_report_cause(r.ptr);
    if (!cause.empty()) std::cout << ": " << cause;
    std::cout << "\n";
  }
  return verified ? kExitOk : kExitInfeasible;
}

int cmd_export(const std::string& input, const std::string& format, const std::string& output) {
  const auto text = read_file(input);
  if (!text) {
    std::cerr << "meshplan: io: cannot read " << input << "\n";
    return kExitError;
  }
  static const std::map<std::string, meshplan_export_format> kFormats{
      {"svg", MESHPLAN_EXPORT_SVG}, {"geojson", MESHPLAN_EXPORT_GEOJSON}, {"csv", MESHPLAN_EXPORT_CSV}};
  CString out;
  const meshplan_status st =
      meshplan_export_plan(text->data(), text->size(), kFormats.at(format), &out.ptr);
  if (st != MESHPLAN_OK) return report_error(st);
  if (output.empty()) {
    std::cout << out.str();
    return kExitOk;
  }
  return write_file(output, out.str()) ? kExitOk : kExitError;
}

int cmd_oracle(const PlanOptions& o, const std::string& output) {
  ScenarioHandle h;
  if (int rc = load(o.input, h)) return rc;
  CString plan;
  const meshplan_overrides ov = overrides(o);
  const meshplan_status st = meshplan_oracle(h.ptr, &ov, &plan.ptr);
  switch (st) {
    case MESHPLAN_OK: break;
    case MESHPLAN_ERR_INFEASIBLE:
    case MESHPLAN_ERR_DISCONNECTED:
    case MESHPLAN_ERR_LOAD_INFEASIBLE:
      report_error(st);
      return kExitInfeasible;
    default: return report_error(st);
  }
  if (output.empty()) {
    std::cout << plan.str();
    return kExitOk;
  }
  return write_file(output, plan.str()) ? kExitOk : kExitError;
}

int cmd_candidates(const std::string& input) {
  ScenarioHandle h;
  if (int rc = load(input, h)) return rc;
  CString csv;
  const meshplan_status st = meshplan_candidates_csv(h.ptr, &csv.ptr);
  if (st != MESHPLAN_OK) return report_error(st);
  std::cout << csv.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rural wireless mesh network planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", meshplan_version());

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", validate_input, "Scenario JSON")->required();

  PlanOptions plan_opts;
  auto* plan = app.add_subcommand("plan", "Run the design loop and write plan.json and report.json");
  plan->add_option("file", plan_opts.input, "Scenario JSON")->required();
  plan->add_option("-o,--out", plan_opts.out_dir, "Output directory")->required();
  plan->add_option("--seed", plan_opts.seed, "Local-search seed");
  plan->add_option("--max-iter", plan_opts.max_iterations, "Iteration budget")->check(CLI::PositiveNumber);
  plan->add_option("--link-range", plan_opts.link_range, "Initial link range in meters")
      ->check(CLI::PositiveNumber);
  plan->add_flag("--trace-csv", plan_opts.trace_csv, "Also write trace.csv");
  plan->add_flag("-q,--quiet", plan_opts.quiet, "Print nothing on success");

  std::string export_input;
  std::string export_format;
  std::string export_output;
  auto* exp = app.add_subcommand("export", "Render a plan as svg, geojson or csv");
  exp->add_option("plan", export_input, "Plan JSON")->required();
  exp->add_option("--format", export_format, "svg | geojson | csv")
      ->required()
      ->check(CLI::IsMember({"svg", "geojson", "csv"}));
  exp->add_option("-o,--out", export_output, "Output file (stdout when omitted)");

  PlanOptions oracle_opts;
  std::string oracle_output;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small scenarios");
  oracle->add_option("file", oracle_opts.input, "Scenario JSON")->required();
  oracle->add_option("--link-range", oracle_opts.link_range, "Link range in meters")
      ->check(CLI::PositiveNumber);
  oracle->add_option("-o,--out", oracle_output, "Output file (stdout when omitted)");

  std::string candidates_input;
  auto* candidates = app.add_subcommand("candidates", "List indoor and outdoor candidate sites");
  candidates->add_option("file", candidates_input, "Scenario JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (*validate) return cmd_validate(validate_input);
  if (*plan) return cmd_plan(plan_opts);
  if (*exp) return cmd_export(export_input, export_format, export_output);
  if (*oracle) return cmd_oracle(oracle_opts, oracle_output);
  if (*candidates) return cmd_candidates(candidates_input);
  return kExitError;
}
