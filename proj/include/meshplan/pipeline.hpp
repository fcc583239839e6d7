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
#include <string>
#include <utility>
#include <vector>

#include "meshplan/candidates.hpp"
#include "meshplan/planner.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

enum class LoopOutcome {
  kVerified,
  kInfeasibleCoverage,
  kDisconnected,
  kIterationBudgetExhausted,
};

const char* to_string(LoopOutcome outcome);

struct VerificationReport {
  bool coverage_ok = true;
  bool throughput_ok = true;
  std::vector<CellIndex> uncovered_cells;
  std::vector<std::pair<std::string, std::string>> overloaded_links;
  bool backhaul_exceeded = false;

  bool ok() const { return coverage_ok && throughput_ok; }
  int violation_count() const {
    return static_cast<int>(uncovered_cells.size() + overloaded_links.size()) +
           (backhaul_exceeded ? 1 : 0);
  }
};

/// Checks an evaluated plan: each interest cell served by a selected site
/// within coverage radius, each link load within its capacity share and the
/// gateway aggregate within the backhaul limit when one is set.
VerificationReport verify(const NetworkPlan& plan, const Scenario& s);

struct IterationRecord {
  int iteration = 0;
  double link_range_m = 0.0;
  int indoor_candidates = 0;
  int outdoor_candidates = 0;
  int feasible_links = 0;
  bool planned = false;  // false when selection failed at this range
  bool coverage_ok = false;
  bool throughput_ok = false;
  int violations = 0;
  int outdoor_count = 0;
  int total_count = 0;
  double min_link_headroom_kbps = 0.0;
  int residual_conflicts = 0;
  std::string note;
};

struct DesignReport {
  LoopOutcome outcome = LoopOutcome::kIterationBudgetExhausted;
  std::string cause;
  double initial_link_range_m = 0.0;
  std::vector<IterationRecord> trace;
  std::vector<std::string> indoor_candidates;  // ids, shared by every iteration
  std::optional<NetworkPlan> plan;  // verified plan, or the best attempt
  std::optional<VerificationReport> verification;
  std::vector<CellIndex> uncoverable_cells;
  std::vector<std::string> unreachable_sites;

  bool verified() const { return outcome == LoopOutcome::kVerified; }
  int iterations_used() const { return static_cast<int>(trace.size()); }
};

struct LoopOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iterations;
  std::optional<double> link_range_m;
};

/// Scenario with overrides applied.
Scenario apply_overrides(Scenario s, const LoopOverrides& overrides);

/// Range the loop starts from: the configured value, otherwise the
/// effective range of the global environment at the lowest table rate.
double initial_link_range(const Scenario& s);

/// Candidate generation, selection, channel assignment, evaluation and
/// verification, repeated with geometrically shrinking link range.
DesignReport run_design_loop(const Scenario& s, const LoopOverrides& overrides = {});

/// Per-iteration trace as CSV.
std::string trace_csv(const DesignReport& report);

}  // namespace meshplan
