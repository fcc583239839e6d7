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

#include "meshplan/coloring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "meshplan/error.hpp"

namespace meshplan {

void ConflictGraph::add_edge(int u, int v) {
  if (u == v || adjacent(u, v)) return;
  adj_[static_cast<std::size_t>(u)].push_back(v);
  adj_[static_cast<std::size_t>(v)].push_back(u);
}

bool ConflictGraph::adjacent(int u, int v) const {
  const auto& n = neighbors(u);
  return std::find(n.begin(), n.end(), v) != n.end();
}

std::vector<std::pair<int, int>> ConflictGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_residual_conflicts(const ConflictGraph& g, std::span<const int> channel) {
  int conflicts = 0;
  for (const auto& [u, v] : g.edges()) {
    if (channel[static_cast<std::size_t>(u)] == channel[static_cast<std::size_t>(v)]) ++conflicts;
  }
  return conflicts;
}

namespace {

constexpr int kUnassigned = std::numeric_limits<int>::min();

// Distinct assigned channels at `node`, optionally pretending vertex `self`
// carries `candidate` instead of its current channel.
int distinct_channels(const std::vector<std::vector<int>>& incident, std::span<const int> channel,
                      int node, int self, int candidate) {
  std::vector<int> seen;
  for (int v : incident[static_cast<std::size_t>(node)]) {
    const int c = v == self ? candidate : channel[static_cast<std::size_t>(v)];
    if (c == kUnassigned) continue;
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
  }
  return static_cast<int>(seen.size());
}

std::vector<std::vector<int>> incident_lists(const RadioBudget& budget) {
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(budget.node_count));
  for (std::size_t v = 0; v < budget.endpoints.size(); ++v) {
    incident[static_cast<std::size_t>(budget.endpoints[v].first)].push_back(static_cast<int>(v));
    incident[static_cast<std::size_t>(budget.endpoints[v].second)].push_back(static_cast<int>(v));
  }
  return incident;
}

class LocalCost {
 public:
  LocalCost(const ConflictGraph& g, const RadioBudget* budget)
      : g_(g), budget_(budget) {
    if (budget_) incident_ = incident_lists(*budget_);
  }

  // Conflicts plus radio overflow contributed by the endpoints of `v` if it
  // used channel `c`, given the current assignment.
  int operator()(std::span<const int> channel, int v, int c) const {
    int cost = 0;
    for (int u : g_.neighbors(v)) {
      if (channel[static_cast<std::size_t>(u)] == c) ++cost;
    }
    if (budget_) {
      const auto [a, b] = budget_->endpoints[static_cast<std::size_t>(v)];
      for (int node : {a, b}) {
        const int used = distinct_channels(incident_, channel, node, v, c);
        cost += std::max(0, used - budget_->radios_per_node);
      }
    }
    return cost;
  }

 private:
  const ConflictGraph& g_;
  const RadioBudget* budget_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace

int count_radio_overflows(const RadioBudget& budget, std::span<const int> channel) {
  const auto incident = incident_lists(budget);
  int overflow = 0;
  for (int node = 0; node < budget.node_count; ++node) {
    overflow += std::max(0, distinct_channels(incident, channel, node, -1, 0) -
                                budget.radios_per_node);
  }
  return overflow;
}

ColoringResult color_conflict_graph(const ConflictGraph& g, std::span<const int> channels,
                                    const RadioBudget* budget) {
  if (channels.empty()) throw Error(ErrorCode::kInvalidArgument, "channel set is empty");
  const int n = g.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });

  const LocalCost cost(g, budget);
  std::vector<int> channel(static_cast<std::size_t>(n), kUnassigned);
  for (int v : order) {
    int best = channels.front();
    int best_cost = std::numeric_limits<int>::max();
    for (int c : channels) {
      const int k = cost(channel, v, c);
      if (k < best_cost) {
        best_cost = k;
        best = c;
      }
    }
    channel[static_cast<std::size_t>(v)] = best;
  }

  // Min-conflicts repair; every accepted move strictly lowers the total.
  for (int round = 0; round < 4 * n + 4; ++round) {
    bool moved = false;
    for (int v : order) {
      const int current = channel[static_cast<std::size_t>(v)];
      const int current_cost = cost(channel, v, current);
      if (current_cost == 0) continue;
      for (int c : channels) {
        if (c != current && cost(channel, v, c) < current_cost) {
          channel[static_cast<std::size_t>(v)] = c;
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }

  // Tabu search over single-vertex moves; keeps the best assignment seen.
  int total = count_residual_conflicts(g, channel) + (budget ? count_radio_overflows(*budget, channel) : 0);
  std::vector<int> best_channel = channel;
  int best_total = total;
  const int k = static_cast<int>(channels.size());
  std::vector<int> tabu_until(static_cast<std::size_t>(n * k), -1);
  const int tenure = 3 + n / 8;
  for (int step = 0; step < 40 * n + 40 && best_total > 0; ++step) {
    int move_v = -1;
    int move_c = 0;
    int move_delta = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v) {
      const int current = channel[static_cast<std::size_t>(v)];
      const int here = cost(channel, v, current);
      if (here == 0) continue;
      for (int ci = 0; ci < k; ++ci) {
        const int c = channels[static_cast<std::size_t>(ci)];
        if (c == current) continue;
        const int delta = cost(channel, v, c) - here;
        const bool tabu = tabu_until[static_cast<std::size_t>(v * k + ci)] > step;
        if (tabu && total + delta >= best_total) continue;
        if (delta < move_delta) {
          move_delta = delta;
          move_v = v;
          move_c = ci;
        }
      }
    }
    if (move_v < 0) break;
    const int old = channel[static_cast<std::size_t>(move_v)];
    const auto old_index = std::find(channels.begin(), channels.end(), old) - channels.begin();
    tabu_until[static_cast<std::size_t>(move_v * k + old_index)] = step + tenure;
    channel[static_cast<std::size_t>(move_v)] = channels[static_cast<std::size_t>(move_c)];
    total += move_delta;
    if (total < best_total) {
      best_total = total;
      best_channel = channel;
    }
  }
  channel = std::move(best_channel);

  ColoringResult result;
  result.residual_conflicts = count_residual_conflicts(g, channel);
  result.radio_overflows = budget ? count_radio_overflows(*budget, channel) : 0;
  result.channel = std::move(channel);
  return result;
}

}  // namespace meshplan
