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

#include "meshplan/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "meshplan/error.hpp"

namespace meshplan {

BillOfMaterials bill_of_materials(const NetworkPlan& plan) {
  BillOfMaterials bom;
  for (const auto& site : plan.selected) {
    if (site.indoor()) {
      ++bom.quantity[Component::kIndoorRouter];
      ++bom.quantity[Component::kInstallationIndoor];
    } else {
      ++bom.quantity[Component::kOutdoorRouter];
      ++bom.quantity[Component::kMast];
      ++bom.quantity[Component::kSolarKit];
      ++bom.quantity[Component::kBattery];
      ++bom.quantity[Component::kInstallationOutdoor];
    }
  }
  return bom;
}

double point_total(const BillOfMaterials& bom, const CostModel& model) {
  double total = 0.0;
  for (const auto& [c, q] : bom.quantity) total += q * model.price(c).mode;
  return total;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

void check(const PriceDistribution& d) {
  const bool finite = std::isfinite(d.lo) && std::isfinite(d.mode) && std::isfinite(d.hi);
  if (!finite || d.lo < 0.0 || d.lo > d.mode || d.mode > d.hi) {
    throw Error(ErrorCode::kInvalidArgument, "price distribution needs 0 <= lo <= mode <= hi");
  }
}

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

double sample_price(const PriceDistribution& d, double u) {
  switch (d.kind) {
    case PriceDistribution::Kind::kPoint: return d.mode;
    case PriceDistribution::Kind::kUniform: return d.lo + (d.hi - d.lo) * u;
    case PriceDistribution::Kind::kTriangular: {
      const double span = d.hi - d.lo;
      if (span <= 0.0) return d.mode;
      const double split = (d.mode - d.lo) / span;
      if (u < split) return d.lo + std::sqrt(u * span * (d.mode - d.lo));
      return d.hi - std::sqrt((1.0 - u) * span * (d.hi - d.mode));
    }
  }
  return d.mode;
}

CostEstimate estimate_cost(const BillOfMaterials& bom, const CostModel& model, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  std::vector<std::pair<int, PriceDistribution>> lines;
  for (const auto& [c, q] : bom.quantity) {
    const PriceDistribution d = model.price(c);
    check(d);
    lines.emplace_back(q, d);
  }

  std::vector<double> totals(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    std::uint64_t key = seed;
    std::uint64_t state = splitmix64(key) ^ static_cast<std::uint64_t>(t);
    state = splitmix64(state);
    double total = 0.0;
    for (const auto& [q, d] : lines) total += q * sample_price(d, unit(state));
    totals[static_cast<std::size_t>(t)] = total;
  }

  CostEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.currency = model.currency;
  double sum = 0.0;
  for (double x : totals) sum += x;
  e.mean = sum / trials;
  double sq = 0.0;
  for (double x : totals) sq += (x - e.mean) * (x - e.mean);
  e.stddev = std::sqrt(sq / trials);
  std::sort(totals.begin(), totals.end());
  e.p5 = quantile(totals, 0.05);
  e.p50 = quantile(totals, 0.50);
  e.p95 = quantile(totals, 0.95);
  return e;
}

std::string cost_table(const BillOfMaterials& bom, const CostModel& model, const CostEstimate& e) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %8s %12s %14s\n", "component", "qty", "unit", "subtotal");
  out << line;
  for (const auto& [c, q] : bom.quantity) {
    const double unit_price = model.price(c).mode;
    std::snprintf(line, sizeof line, "%-22s %8d %12.2f %14.2f\n", to_string(c), q, unit_price,
                  q * unit_price);
    out << line;
  }
  std::snprintf(line, sizeof line, "%-22s %8s %12s %14.2f\n", "point total", "", "",
                point_total(bom, model));
  out << line;
  std::snprintf(line, sizeof line,
                "monte carlo (%d trials, seed %llu, %s): mean %.2f  std %.2f  p5 %.2f  p50 %.2f  "
                "p95 %.2f\n",
                e.trials, static_cast<unsigned long long>(e.seed), e.currency.c_str(), e.mean,
                e.stddev, e.p5, e.p50, e.p95);
  out << line;
  return out.str();
}

}  // namespace meshplan
