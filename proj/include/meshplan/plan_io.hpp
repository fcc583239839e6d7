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
#include <string_view>
#include <vector>

#include "meshplan/cost.hpp"
#include "meshplan/pipeline.hpp"
#include "meshplan/planner.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

struct InterestCell {
  CellIndex cell = 0;
  double weight = 1.0;
};

/// A plan together with the grid geometry needed to draw it.
struct PlanDocument {
  int rows = 0;
  int cols = 0;
  double cell_size_m = 0.0;
  CellIndex gateway = 0;
  std::vector<InterestCell> interest;
  NetworkPlan plan;
};

PlanDocument make_document(const NetworkPlan& plan, const Scenario& s);

/// Canonical plan JSON: sorted keys, sites and links in id order, no
/// timestamps. An infinite headroom is written as null.
std::string plan_to_json(const PlanDocument& doc);
std::string plan_to_json(const NetworkPlan& plan, const Scenario& s);

/// Throws kSyntax on malformed JSON and kFormat on a structurally bad plan.
PlanDocument plan_from_json(std::string_view text);

std::string cost_to_json(const BillOfMaterials& bom, const CostModel& model, const CostEstimate& e);

/// Loop outcome, per-iteration trace, verification findings and, when
/// given, the cost estimate of the returned plan.
std::string report_to_json(const DesignReport& report, const Scenario& s,
                           const std::optional<CostEstimate>& cost);

std::string validation_to_json(const ValidationReport& report);

}  // namespace meshplan
