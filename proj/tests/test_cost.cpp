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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "meshplan/cost.hpp"
#include "meshplan/error.hpp"
#include "support.hpp"

namespace meshplan {
namespace {

CandidateSite site(const std::string& id, SiteKind kind, bool gateway = false) {
  CandidateSite s;
  s.id = id;
  s.kind = kind;
  s.gateway = gateway;
  return s;
}

NetworkPlan plan_of(int indoor, int outdoor) {
  NetworkPlan p;
  p.selected.push_back(site("GW", SiteKind::kIndoor, true));
  for (int i = 0; i < indoor; ++i) p.selected.push_back(site("I" + std::to_string(i), SiteKind::kIndoor));
  for (int i = 0; i < outdoor; ++i) p.selected.push_back(site("O" + std::to_string(i), SiteKind::kOutdoor));
  return p;
}

CostModel flat_prices() {
  CostModel m;
  m.prices = {{Component::kIndoorRouter, PriceDistribution::point(100.0)},
              {Component::kOutdoorRouter, PriceDistribution::point(50.0)},
              {Component::kMast, PriceDistribution::point(50.0)},
              {Component::kSolarKit, PriceDistribution::point(0.0)},
              {Component::kBattery, PriceDistribution::point(0.0)}};
  return m;
}

TEST(BillOfMaterials, GatewayOnly) {
  const BillOfMaterials bom = bill_of_materials(plan_of(0, 0));
  EXPECT_EQ(bom.at(Component::kIndoorRouter), 1);
  EXPECT_EQ(bom.at(Component::kOutdoorRouter), 0);
  EXPECT_EQ(bom.at(Component::kMast), 0);
}

TEST(BillOfMaterials, MixedPlan) {
  const BillOfMaterials bom = bill_of_materials(plan_of(2, 1));
  EXPECT_EQ(bom.at(Component::kIndoorRouter), 3);
  EXPECT_EQ(bom.at(Component::kInstallationIndoor), 3);
  EXPECT_EQ(bom.at(Component::kOutdoorRouter), 1);
  EXPECT_EQ(bom.at(Component::kMast), 1);
  EXPECT_EQ(bom.at(Component::kSolarKit), 1);
  EXPECT_EQ(bom.at(Component::kBattery), 1);
  EXPECT_EQ(bom.at(Component::kInstallationOutdoor), 1);
  EXPECT_EQ(bom.at(Component::kCabling), 0);
}

TEST(PointTotal, TwoIndoorTwoOutdoor) {
  // GW + 1 indoor + 2 outdoor: 2 x 100 + 2 x (50 + 50).
  EXPECT_EQ(point_total(bill_of_materials(plan_of(1, 2)), flat_prices()), 400.0);
}

TEST(EstimateCost, PointPricesHaveNoSpread) {
  const CostEstimate e = estimate_cost(bill_of_materials(plan_of(1, 2)), flat_prices(), 500, 9);
  EXPECT_EQ(e.mean, 400.0);
  EXPECT_EQ(e.stddev, 0.0);
  EXPECT_EQ(e.p5, 400.0);
  EXPECT_EQ(e.p95, 400.0);
  EXPECT_EQ(e.trials, 500);
}

TEST(EstimateCost, TriangularMeanWithinOnePercent) {
  CostModel m;
  m.prices[Component::kIndoorRouter] = PriceDistribution::triangular(80.0, 100.0, 150.0);
  BillOfMaterials bom;
  bom.quantity[Component::kIndoorRouter] = 1;
  const CostEstimate e = estimate_cost(bom, m, 100000, 7);
  const double expect = (80.0 + 100.0 + 150.0) / 3.0;
  EXPECT_NEAR(e.mean, expect, 0.01 * expect);
  const double var = (80.0 * 80.0 + 100.0 * 100.0 + 150.0 * 150.0 - 80.0 * 100.0 - 80.0 * 150.0 -
                      100.0 * 150.0) / 18.0;
  EXPECT_NEAR(e.stddev, std::sqrt(var), 0.02 * std::sqrt(var));
}

TEST(EstimateCost, SingleTrial) {
  CostModel m;
  m.prices[Component::kMast] = PriceDistribution::uniform(10.0, 20.0);
  BillOfMaterials bom;
  bom.quantity[Component::kMast] = 2;
  const CostEstimate e = estimate_cost(bom, m, 1, 3);
  EXPECT_EQ(e.stddev, 0.0);
  EXPECT_EQ(e.p5, e.mean);
  EXPECT_EQ(e.p95, e.mean);
  EXPECT_GE(e.mean, 20.0);
  EXPECT_LE(e.mean, 40.0);
}

TEST(EstimateCost, RejectsBadInput) {
  BillOfMaterials bom;
  bom.quantity[Component::kMast] = 1;
  CostModel m;
  EXPECT_THROW(estimate_cost(bom, m, 0, 1), Error);
  m.prices[Component::kMast] = PriceDistribution::triangular(10.0, 5.0, 20.0);
  EXPECT_THROW(estimate_cost(bom, m, 10, 1), Error);
}

TEST(EstimateCost, SeedDeterminesEstimate) {
  CostModel m;
  m.prices[Component::kMast] = PriceDistribution::uniform(10.0, 20.0);
  m.prices[Component::kSolarKit] = PriceDistribution::triangular(100.0, 120.0, 200.0);
  const BillOfMaterials bom = bill_of_materials(plan_of(0, 3));
  const CostEstimate a = estimate_cost(bom, m, 2000, 5);
  const CostEstimate b = estimate_cost(bom, m, 2000, 5);
  const CostEstimate c = estimate_cost(bom, m, 2000, 6);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.p50, b.p50);
  EXPECT_EQ(a.stddev, b.stddev);
  EXPECT_NE(a.mean, c.mean);
}

// Reference SplitMix64 step.
std::uint64_t reference_splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

TEST(EstimateCost, TrialDrawsFollowKeyedSubstreams) {
  CostModel m;
  m.prices[Component::kMast] = PriceDistribution::uniform(0.0, 1.0);
  BillOfMaterials bom;
  bom.quantity[Component::kMast] = 1;
  for (std::uint64_t seed : {0ULL, 11ULL, 0xFFFFFFFFFFFFULL}) {
    std::vector<double> draws;
    for (std::uint64_t t = 0; t < 3; ++t) {
      // Substream state, then its first output.
      const std::uint64_t state = reference_splitmix(reference_splitmix(seed) ^ t);
      draws.push_back(static_cast<double>(reference_splitmix(state) >> 11) / 9007199254740992.0);
    }
    EXPECT_EQ(estimate_cost(bom, m, 1, seed).mean, draws[0]);
    std::sort(draws.begin(), draws.end());
    EXPECT_EQ(estimate_cost(bom, m, 3, seed).p50, draws[1]);
  }
}

TEST(EstimateCost, QuantilesOrderedAndBracketedOnRandomModels) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> price(1.0, 500.0);
  for (int i = 0; i < 100; ++i) {
    CostModel m;
    BillOfMaterials bom;
    double lo_total = 0.0, hi_total = 0.0;
    for (Component c : kAllComponents) {
      const int q = static_cast<int>(rng() % 4);
      double a = price(rng), b = price(rng), mode = price(rng);
      if (a > b) std::swap(a, b);
      mode = std::clamp(mode, a, b);
      m.prices[c] = (rng() % 2) ? PriceDistribution::uniform(a, b) : PriceDistribution::triangular(a, mode, b);
      if (q > 0) bom.quantity[c] = q;
      lo_total += q * a;
      hi_total += q * b;
    }
    const CostEstimate e = estimate_cost(bom, m, 300, rng());
    EXPECT_LE(e.p5, e.p50);
    EXPECT_LE(e.p50, e.p95);
    EXPECT_GE(e.p5, lo_total - 1e-6);
    EXPECT_LE(e.p95, hi_total + 1e-6);
    EXPECT_GE(e.mean, lo_total - 1e-6);
    EXPECT_LE(e.mean, hi_total + 1e-6);
    EXPECT_GE(e.stddev, 0.0);
  }
}

TEST(EstimateCost, ScalesLinearlyWithQuantity) {
  CostModel m;
  m.prices[Component::kOutdoorRouter] = PriceDistribution::triangular(40.0, 60.0, 90.0);
  BillOfMaterials one, three;
  one.quantity[Component::kOutdoorRouter] = 1;
  three.quantity[Component::kOutdoorRouter] = 3;
  const CostEstimate a = estimate_cost(one, m, 1000, 2);
  const CostEstimate b = estimate_cost(three, m, 1000, 2);
  EXPECT_NEAR(b.mean, 3.0 * a.mean, 1e-9 * b.mean);
  EXPECT_NEAR(b.p95, 3.0 * a.p95, 1e-9 * b.p95);
}

TEST(EstimateCost, MonotoneInPlanSize) {
  CostModel m = flat_prices();
  m.prices[Component::kMast] = PriceDistribution::uniform(30.0, 70.0);
  double previous = 0.0;
  for (int out = 0; out < 6; ++out) {
    const CostEstimate e = estimate_cost(bill_of_materials(plan_of(1, out)), m, 500, 4);
    EXPECT_GE(e.mean, previous);
    previous = e.mean;
  }
}

TEST(SamplePrice, InverseCdfEndpoints) {
  const PriceDistribution t = PriceDistribution::triangular(10.0, 20.0, 40.0);
  EXPECT_EQ(sample_price(t, 0.0), 10.0);
  EXPECT_NEAR(sample_price(t, 1.0 / 3.0), 20.0, 1e-9);
  EXPECT_NEAR(sample_price(PriceDistribution::uniform(2.0, 4.0), 0.25), 2.5, 1e-12);
  EXPECT_EQ(sample_price(PriceDistribution::point(7.0), 0.9), 7.0);
}

TEST(CostTable, ListsEachLine) {
  const BillOfMaterials bom = bill_of_materials(plan_of(1, 1));
  const CostModel m = flat_prices();
  const std::string table = cost_table(bom, m, estimate_cost(bom, m, 10, 1));
  EXPECT_NE(table.find("indoor_router"), std::string::npos);
  EXPECT_NE(table.find("mast"), std::string::npos);
}

}  // namespace
}  // namespace meshplan
