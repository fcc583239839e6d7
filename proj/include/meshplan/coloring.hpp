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

#include <span>
#include <utility>
#include <vector>

namespace meshplan {

/// Undirected conflict graph over links (vertices are link positions).
class ConflictGraph {
 public:
  explicit ConflictGraph(int vertices = 0) : adj_(static_cast<std::size_t>(vertices)) {}

  int size() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;
};

/// Optional per-node radio budget: each vertex (link) touches two nodes, and
/// a node may use at most `radios_per_node` distinct channels.
struct RadioBudget {
  std::vector<std::pair<int, int>> endpoints;  // per vertex
  int node_count = 0;
  int radios_per_node = 2;
};

struct ColoringResult {
  std::vector<int> channel;  // per vertex, a value from the channel set
  int residual_conflicts = 0;
  int radio_overflows = 0;
};

/// Number of conflicting vertex pairs that share a channel.
int count_residual_conflicts(const ConflictGraph& g, std::span<const int> channel);

/// Sum over nodes of (distinct channels - radios_per_node) where positive.
int count_radio_overflows(const RadioBudget& budget, std::span<const int> channel);

/// Greedy coloring in descending conflict-degree order, followed by
/// single-vertex recoloring while it strictly lowers conflicts + overflows.
ColoringResult color_conflict_graph(const ConflictGraph& g, std::span<const int> channels,
                                    const RadioBudget* budget = nullptr);

}  // namespace meshplan
