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

#include <cstdint>
#include <map>
#include <string>

#include "meshplan/planner.hpp"
#include "meshplan/scenario.hpp"

namespace meshplan {

struct BillOfMaterials {
  std::map<Component, int> quantity;  // zero-quantity lines are omitted

  int at(Component c) const {
    auto it = quantity.find(c);
    return it == quantity.end() ? 0 : it->second;
  }
};

/// Indoor nodes (the gateway included) take an indoor router and an indoor
/// installation; outdoor nodes add mast, solar kit, battery and outdoor
/// installation to an outdoor router.
BillOfMaterials bill_of_materials(const NetworkPlan& plan);

struct CostEstimate {
  double mean = 0.0;
  double stddev = 0.0;
  double p5 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string currency;
};

/// Total under the mode of every distribution.
double point_total(const BillOfMaterials& bom, const CostModel& model);

/// Monte Carlo over independent per-component prices. Trial t draws from a
/// substream keyed by (seed, t), so results do not depend on trial order.
/// Throws kInvalidArgument for trials < 1 or malformed distributions.
CostEstimate estimate_cost(const BillOfMaterials& bom, const CostModel& model, int trials,
                           std::uint64_t seed);

/// Inverse-CDF draw for u in [0, 1).
double sample_price(const PriceDistribution& d, double u);

std::string cost_table(const BillOfMaterials& bom, const CostModel& model, const CostEstimate& e);

}  // namespace meshplan
