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

#include "meshplan/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "meshplan/demand.hpp"
#include "meshplan/error.hpp"

namespace meshplan {

PathLossModel path_loss_model(const EnvironmentConfig& env, Environment cls) {
  return {cls, env.exponent(cls), env.reference_distance_m, env.reference_loss_db};
}

double free_space_loss_db(double distance_m, double frequency_mhz) {
  return 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(frequency_mhz) + 32.44;
}

double path_loss_db(const PathLossModel& model, double distance_m, double frequency_mhz) {
  if (!(model.reference_distance_m > 0.0) || !(frequency_mhz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "path loss needs d0 > 0 and f > 0");
  }
  if (!(distance_m >= model.reference_distance_m)) {
    throw Error(ErrorCode::kInvalidArgument, "distance below the model reference distance");
  }
  const double anchor = model.reference_loss_db.value_or(
      free_space_loss_db(model.reference_distance_m, frequency_mhz));
  return anchor + 10.0 * model.exponent * std::log10(distance_m / model.reference_distance_m);
}

double wavelength_m(double frequency_mhz) { return kSpeedOfLightMmPerUs / frequency_mhz; }

double first_fresnel_radius(double d1_m, double d2_m, double frequency_mhz) {
  const double total = d1_m + d2_m;
  if (d1_m < 0.0 || d2_m < 0.0 || !(total > 0.0) || !(frequency_mhz > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fresnel radius needs d1, d2 >= 0, d1 + d2 > 0, f > 0");
  }
  return std::sqrt(wavelength_m(frequency_mhz) * d1_m * d2_m / total);
}

ClearanceResult los_clearance(const ElevationProfile& profile, double frequency_mhz) {
  const auto& s = profile.samples;
  if (s.size() < 2) throw Error(ErrorCode::kInvalidArgument, "elevation profile needs >= 2 samples");
  if (s.front().distance_m != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "elevation profile must start at distance 0");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i].distance_m > s[i - 1].distance_m)) {
      throw Error(ErrorCode::kInvalidArgument, "profile distances must be strictly increasing");
    }
  }

  const double length = s.back().distance_m;
  const double top_tx = s.front().ground_m + profile.tx_height_m;
  const double top_rx = s.back().ground_m + profile.rx_height_m;

  ClearanceResult result;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double t = s[i].distance_m / length;
    const double ray = top_tx + (top_rx - top_tx) * t;
    const double radius = first_fresnel_radius(s[i].distance_m, length - s[i].distance_m,
                                               frequency_mhz);
    const double fraction = (ray - s[i].ground_m) / radius;
    if (fraction < result.worst_fraction) {
      result.worst_fraction = fraction;
      result.blocking_sample = i;
    }
  }
  return result;
}

bool mast_height_check(const ElevationProfile& profile, double mast_height_m,
                       double frequency_mhz, double threshold) {
  if (!(mast_height_m > 0.0)) throw Error(ErrorCode::kInvalidArgument, "mast height must be positive");
  ElevationProfile masted = profile;
  masted.tx_height_m = mast_height_m;
  masted.rx_height_m = mast_height_m;
  return los_clearance(masted, frequency_mhz).clear(threshold);
}

double ground_elevation(const RegionGrid& grid, Point p) {
  // Continuous coordinates in units of cells, measured between centers.
  const double fr = std::clamp(p.y / grid.cell_size_m - 0.5, 0.0, grid.rows - 1.0);
  const double fc = std::clamp(p.x / grid.cell_size_m - 0.5, 0.0, grid.cols - 1.0);
  const int r0 = static_cast<int>(std::floor(fr));
  const int c0 = static_cast<int>(std::floor(fc));
  const int r1 = std::min(r0 + 1, grid.rows - 1);
  const int c1 = std::min(c0 + 1, grid.cols - 1);
  const double tr = fr - r0;
  const double tc = fc - c0;
  auto z = [&](int r, int c) { return grid.at(grid.index(r, c)).elevation_m; };
  const double top = z(r0, c0) * (1.0 - tc) + z(r0, c1) * tc;
  const double bottom = z(r1, c0) * (1.0 - tc) + z(r1, c1) * tc;
  return top * (1.0 - tr) + bottom * tr;
}

ElevationProfile synthesize_profile(const RegionGrid& grid, CellIndex from, CellIndex to,
                                    double tx_height_m, double rx_height_m) {
  const double length = cell_distance(grid, from, to);
  if (!(length > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot build a profile between co-located cells");
  }
  const std::size_t crossed = static_cast<std::size_t>(std::ceil(length / grid.cell_size_m)) + 1;
  const std::size_t count = std::max<std::size_t>(16, crossed);
  const Point a = grid.center(from);
  const Point b = grid.center(to);

  ElevationProfile profile;
  profile.tx_height_m = tx_height_m;
  profile.rx_height_m = rx_height_m;
  profile.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const Point p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    profile.samples.push_back({length * t, ground_elevation(grid, p)});
  }
  profile.samples.back().distance_m = length;
  return profile;
}

double effective_range(const PathLossModel& model, const RadioTechnology& radio,
                       double min_rate_mbps) {
  if (min_rate_mbps > radio.max_rate_mbps()) {
    throw Error(ErrorCode::kInvalidArgument, "radio cannot achieve rate");
  }
  auto supports = [&](double d) {
    const double rx = link_budget(radio, path_loss_db(model, d, radio.frequency_mhz));
    const double rate = rate_from_rx(radio, rx);
    return rate > 0.0 && rate >= min_rate_mbps;
  };
  double lo = model.reference_distance_m;
  double hi = radio.max_range_m;
  if (hi < lo || !supports(lo)) throw Error(ErrorCode::kInvalidArgument, "radio cannot achieve rate");
  if (supports(hi)) return hi;
  while (hi - lo > 0.1) {
    const double mid = 0.5 * (lo + hi);
    (supports(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace meshplan
