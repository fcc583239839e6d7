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

#include <vector>

#include "meshplan/scenario.hpp"

namespace meshplan {

/// users x per-user rate, in kbit/s.
double area_demand(const Cell& cell, const AppProfile& profile);

struct DemandMap {
  std::vector<double> load_kbps;  // indexed by cell

  double total_kbps() const;
};

/// Offered load per cell. Cap-filling profiles contribute nothing. Throws
/// kInvalidArgument on a dangling profile reference.
DemandMap scenario_demand(const Scenario& s);

/// Received power in dBm for a given path loss.
double link_budget(const RadioTechnology& radio, double loss_db);

/// Highest table rate (Mbit/s) whose sensitivity is <= rx_dbm, or 0.
double rate_from_rx(const RadioTechnology& radio, double rx_dbm);

}  // namespace meshplan
