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
#include <vector>

#include "meshplan/scenario.hpp"

namespace meshplan {

inline constexpr double kSpeedOfLightMmPerUs = 299.792458;  // so lambda[m] = c / f[MHz]
inline constexpr double kDefaultClearanceThreshold = 0.6;
/// Reported clearance when a profile has no interior samples.
inline constexpr double kUnobstructedFraction = 1e9;

/// Log-distance path loss anchored at the free-space loss at `reference_distance_m`.
struct PathLossModel {
  Environment environment = Environment::kFreeSpace;
  double exponent = 2.0;
  double reference_distance_m = 1.0;
  std::optional<double> reference_loss_db;
};

PathLossModel path_loss_model(const EnvironmentConfig& env, Environment cls);

/// Free-space loss with d in meters (converted to km) and f in MHz.
double free_space_loss_db(double distance_m, double frequency_mhz);

/// Throws kInvalidArgument below the reference distance.
double path_loss_db(const PathLossModel& model, double distance_m, double frequency_mhz);

double wavelength_m(double frequency_mhz);
double first_fresnel_radius(double d1_m, double d2_m, double frequency_mhz);

struct ProfileSample {
  double distance_m = 0.0;
  double ground_m = 0.0;
};

struct ElevationProfile {
  std::vector<ProfileSample> samples;
  double tx_height_m = 0.0;  // antenna height above ground at samples.front()
  double rx_height_m = 0.0;  // antenna height above ground at samples.back()

  double length_m() const { return samples.empty() ? 0.0 : samples.back().distance_m; }
};

struct ClearanceResult {
  double worst_fraction = kUnobstructedFraction;
  std::optional<std::size_t> blocking_sample;

  bool clear(double threshold = kDefaultClearanceThreshold) const {
    return worst_fraction >= threshold;
  }
};

ClearanceResult los_clearance(const ElevationProfile& profile, double frequency_mhz);

bool mast_height_check(const ElevationProfile& profile, double mast_height_m,
                       double frequency_mhz,
                       double threshold = kDefaultClearanceThreshold);

/// Ground elevation at an arbitrary point, bilinear over cell centers with
/// clamping at the border.
double ground_elevation(const RegionGrid& grid, Point p);

/// Straight-line profile between two cell centers: one sample per cell
/// crossed, never fewer than 16.
ElevationProfile synthesize_profile(const RegionGrid& grid, CellIndex from, CellIndex to,
                                    double tx_height_m, double rx_height_m);

/// Largest distance <= radio.max_range_m (to 0.1 m) whose link budget still
/// yields at least `min_rate_mbps`. Throws kInvalidArgument when no distance does.
double effective_range(const PathLossModel& model, const RadioTechnology& radio,
                       double min_rate_mbps);

}  // namespace meshplan
