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

#include "meshplan/demand.hpp"

#include <algorithm>
#include <numeric>

#include "meshplan/error.hpp"

namespace meshplan {

double area_demand(const Cell& cell, const AppProfile& profile) {
  return static_cast<double>(cell.users) * profile.rate_kbps;
}

double DemandMap::total_kbps() const {
  return std::accumulate(load_kbps.begin(), load_kbps.end(), 0.0);
}

DemandMap scenario_demand(const Scenario& s) {
  DemandMap map;
  map.load_kbps.assign(s.grid.cells.size(), 0.0);
  for (std::size_t i = 0; i < s.grid.cells.size(); ++i) {
    const Cell& cell = s.grid.cells[i];
    if (cell.users == 0) continue;
    if (cell.profile.empty()) continue;
    const AppProfile* profile = s.find_profile(cell.profile);
    if (profile == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "cell " + std::to_string(i) +
                                                   " references unknown profile '" +
                                                   cell.profile + "'");
    }
    if (profile->cap_filling) continue;
    map.load_kbps[i] = area_demand(cell, *profile);
  }
  return map;
}

double link_budget(const RadioTechnology& radio, double loss_db) {
  return radio.tx_power_dbm + radio.antenna_gain_tx_dbi + radio.antenna_gain_rx_dbi -
         radio.cable_loss_db - loss_db;
}

double rate_from_rx(const RadioTechnology& radio, double rx_dbm) {
  double rate = 0.0;
  for (const RateStep& step : radio.rate_table) {
    if (step.sensitivity_dbm <= rx_dbm) rate = std::max(rate, step.rate_mbps());
  }
  return rate;
}

}  // namespace meshplan
