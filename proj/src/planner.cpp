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

#include "meshplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <limits>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "meshplan/error.hpp"
#include "planner_internal.hpp"

namespace meshplan {

const CandidateSite* NetworkPlan::find(const std::string& id) const {
  for (const auto& site : selected) {
    if (site.id == id) return &site;
  }
  return nullptr;
}

int NetworkPlan::outdoor_count() const {
  return static_cast<int>(
      std::count_if(selected.begin(), selected.end(), [](const auto& x) { return x.outdoor(); }));
}

std::vector<std::string> NetworkPlan::ids() const {
  std::vector<std::string> out;
  out.reserve(selected.size());
  for (const auto& site : selected) out.push_back(site.id);
  return out;
}

std::vector<std::vector<CellIndex>> coverage_sets(std::span<const CandidateSite> sites,
                                                  const Scenario& s) {
  const RegionGrid& g = s.grid;
  const int reach = static_cast<int>(std::floor(s.coverage_radius_m / g.cell_size_m));
  std::vector<std::vector<CellIndex>> out(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const CellIndex at = sites[i].cell;
    const int r0 = g.row(at);
    const int c0 = g.col(at);
    for (int r = std::max(0, r0 - reach); r <= std::min(g.rows - 1, r0 + reach); ++r) {
      for (int c = std::max(0, c0 - reach); c <= std::min(g.cols - 1, c0 + reach); ++c) {
        const CellIndex cell = g.index(r, c);
        if (g.at(cell).interest && cell_distance(g, at, cell) <= s.coverage_radius_m) {
          out[i].push_back(cell);
        }
      }
    }
  }
  return out;
}

namespace detail {

Universe make_universe(const Scenario& s, std::span<const CandidateSite> icp,
                       std::span<const CandidateSite> ocp, std::span<const Link> links) {
  Universe u;
  std::set<std::string> seen;
  auto take = [&](const CandidateSite& site) {
    if (seen.insert(site.id).second) u.sites.push_back(site);
  };
  for (const auto& site : ocp) take(site);
  for (const auto& site : icp) take(site);
  if (!seen.count(kGatewayId)) take(gateway_site(s));
  std::sort(u.sites.begin(), u.sites.end(), [](const CandidateSite& a, const CandidateSite& b) {
    if (a.gateway != b.gateway) return a.gateway;
    return a.id < b.id;
  });

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < u.size(); ++i) index[u.sites[static_cast<std::size_t>(i)].id] = i;
  u.adj.resize(u.sites.size());
  for (const Link& link : links) {
    auto a = index.find(link.a);
    auto b = index.find(link.b);
    if (a == index.end() || b == index.end() || a->second == b->second) continue;
    const int li = static_cast<int>(u.links.size());
    u.links.push_back(link);
    u.adj[static_cast<std::size_t>(a->second)].emplace_back(b->second, li);
    u.adj[static_cast<std::size_t>(b->second)].emplace_back(a->second, li);
  }

  std::vector<int> ordinal(static_cast<std::size_t>(s.grid.size()), -1);
  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    if (!s.grid.at(c).interest) continue;
    ordinal[static_cast<std::size_t>(c)] = static_cast<int>(u.interest.size());
    u.interest.push_back(c);
    u.weight.push_back(s.solver.coverage_weighting ? s.grid.at(c).weight() : 1.0);
  }
  u.coverers.resize(u.interest.size());
  const auto sets = coverage_sets(u.sites, s);
  u.covers.resize(u.sites.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (CellIndex c : sets[i]) {
      const int k = ordinal[static_cast<std::size_t>(c)];
      u.covers[i].push_back(k);
      u.coverers[static_cast<std::size_t>(k)].push_back(static_cast<int>(i));
    }
  }
  return u;
}

std::vector<char> reachable_from_gateway(const Universe& u) {
  std::vector<char> seen(u.sites.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& [w, li] : u.adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

void check_coverable(const Universe& u) {
  std::vector<int> uncoverable;
  std::vector<int> cut_off;
  std::set<std::string> cut_sites;
  const auto reach = reachable_from_gateway(u);
  for (int k = 0; k < u.interest_count(); ++k) {
    const auto& who = u.coverers[static_cast<std::size_t>(k)];
    if (who.empty()) {
      uncoverable.push_back(u.interest[static_cast<std::size_t>(k)]);
      continue;
    }
    if (std::none_of(who.begin(), who.end(), [&](int i) { return reach[static_cast<std::size_t>(i)]; })) {
      cut_off.push_back(u.interest[static_cast<std::size_t>(k)]);
      for (int i : who) cut_sites.insert(u.sites[static_cast<std::size_t>(i)].id);
    }
  }
  if (!uncoverable.empty()) {
    throw PlanningError(ErrorCode::kInfeasible,
                        std::to_string(uncoverable.size()) + " interest cell(s) coverable by no candidate",
                        uncoverable, {});
  }
  if (!cut_off.empty()) {
    throw PlanningError(ErrorCode::kDisconnected,
                        "interest cell(s) coverable only by sites cut off from the gateway", cut_off,
                        {cut_sites.begin(), cut_sites.end()});
  }
}

bool throughput_ok(const PlanMetrics& m, const Scenario& s) {
  if (!m.load_feasible) return false;
  if (s.solver.gateway_backhaul_kbps && m.gateway_aggregate_kbps > *s.solver.gateway_backhaul_kbps) {
    return false;
  }
  return true;
}

std::vector<CandidateSite> pick(const Universe& u, const std::vector<int>& members) {
  std::vector<CandidateSite> out;
  out.reserve(members.size());
  for (int i : members) out.push_back(u.sites[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace detail

namespace {

using detail::Universe;

class Selection {
 public:
  explicit Selection(const Universe& u)
      : u_(&u), chosen_(u.sites.size(), 0), count_(u.interest.size(), 0),
        uncovered_(u.interest_count()) {
    add(0);
  }

  bool has(int i) const { return chosen_[static_cast<std::size_t>(i)] != 0; }
  int uncovered() const { return uncovered_; }
  int outdoor() const { return outdoor_; }
  int total() const { return total_; }
  std::pair<int, int> key() const { return {outdoor_, total_}; }
  int cover_count(int k) const { return count_[static_cast<std::size_t>(k)]; }

  void add(int i) {
    if (has(i)) return;
    chosen_[static_cast<std::size_t>(i)] = 1;
    ++total_;
    if (u_->sites[static_cast<std::size_t>(i)].outdoor()) ++outdoor_;
    for (int k : u_->covers[static_cast<std::size_t>(i)]) {
      if (count_[static_cast<std::size_t>(k)]++ == 0) --uncovered_;
    }
  }

  void remove(int i) {
    if (!has(i)) return;
    chosen_[static_cast<std::size_t>(i)] = 0;
    --total_;
    if (u_->sites[static_cast<std::size_t>(i)].outdoor()) --outdoor_;
    for (int k : u_->covers[static_cast<std::size_t>(i)]) {
      if (--count_[static_cast<std::size_t>(k)] == 0) ++uncovered_;
    }
  }

  // Newly covered weight and count if `i` were added.
  std::pair<double, int> gain(int i) const {
    double w = 0.0;
    int n = 0;
    for (int k : u_->covers[static_cast<std::size_t>(i)]) {
      if (count_[static_cast<std::size_t>(k)] == 0) {
        w += u_->weight[static_cast<std::size_t>(k)];
        ++n;
      }
    }
    return {w, n};
  }

  // Chosen sites reachable from the gateway through chosen sites, skipping `without`.
  std::vector<char> component(int from, int without = -1) const {
    std::vector<char> seen(chosen_.size(), 0);
    if (!has(from) || from == without) return seen;
    std::deque<int> queue{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& [w, li] : u_->adj[static_cast<std::size_t>(v)]) {
        if (w == without || !has(w) || seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
    return seen;
  }

  bool connected_without(int without) const {
    const auto seen = component(0, without);
    for (int i = 0; i < u_->size(); ++i) {
      if (has(i) && i != without && !seen[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

  bool removable(int i) const {
    if (i == 0 || !has(i)) return false;
    for (int k : u_->covers[static_cast<std::size_t>(i)]) {
      if (count_[static_cast<std::size_t>(k)] <= 1) return false;
    }
    return connected_without(i);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < u_->size(); ++i) {
      if (has(i)) out.push_back(i);
    }
    return out;
  }

 private:
  const Universe* u_;
  std::vector<char> chosen_;
  std::vector<int> count_;
  int uncovered_ = 0;
  int outdoor_ = 0;
  int total_ = 0;
};

enum class GreedyMode { kBiased, kIndoorFirst };

// Adds sites until every interest cell is covered. Returns false if it runs
// out of useful candidates.
bool greedy_cover(const Universe& u, Selection& sel, const std::vector<char>& allowed,
                  GreedyMode mode, double indoor_bias) {
  while (sel.uncovered() > 0) {
    int best = -1;
    std::tuple<int, double, int, int> best_score{-1, 0.0, 0, 0};
    for (int i = 1; i < u.size(); ++i) {
      if (sel.has(i) || !allowed[static_cast<std::size_t>(i)]) continue;
      const auto [w, n] = sel.gain(i);
      if (n == 0) continue;
      const bool indoor = u.sites[static_cast<std::size_t>(i)].indoor();
      const int tier = mode == GreedyMode::kIndoorFirst && indoor ? 1 : 0;
      const double score = indoor ? w * indoor_bias : w;
      const std::tuple<int, double, int, int> key{tier, score, n, indoor ? 1 : 0};
      if (best < 0 || key > best_score) {
        best = i;
        best_score = key;
      }
    }
    if (best < 0) return false;
    sel.add(best);
  }
  return true;
}

// Connects every chosen site to the gateway through cheapest paths, where
// entering an unchosen site costs (outdoor ? 1 : 0, 1). Returns the chosen
// sites that could not be connected (empty on success).
std::vector<int> repair_connectivity(const Universe& u, Selection& sel, const std::vector<char>& allowed) {
  using Cost = std::pair<int, int>;
  while (true) {
    const auto root = sel.component(0);
    int stray = -1;
    for (int i = 0; i < u.size(); ++i) {
      if (sel.has(i) && !root[static_cast<std::size_t>(i)]) {
        stray = i;
        break;
      }
    }
    if (stray < 0) return {};
    const auto target = sel.component(stray);

    const Cost inf{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    std::vector<Cost> dist(u.sites.size(), inf);
    std::vector<int> prev(u.sites.size(), -1);
    using Entry = std::tuple<Cost, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (int i = 0; i < u.size(); ++i) {
      if (root[static_cast<std::size_t>(i)]) {
        dist[static_cast<std::size_t>(i)] = {0, 0};
        heap.emplace(Cost{0, 0}, i);
      }
    }
    int reached = -1;
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[static_cast<std::size_t>(v)]) continue;
      if (target[static_cast<std::size_t>(v)]) {
        reached = v;
        break;
      }
      for (const auto& [w, li] : u.adj[static_cast<std::size_t>(v)]) {
        if (!allowed[static_cast<std::size_t>(w)] && !sel.has(w)) continue;
        Cost step{0, 0};
        if (!sel.has(w)) step = {u.sites[static_cast<std::size_t>(w)].outdoor() ? 1 : 0, 1};
        const Cost nd{d.first + step.first, d.second + step.second};
        if (nd < dist[static_cast<std::size_t>(w)]) {
          dist[static_cast<std::size_t>(w)] = nd;
          prev[static_cast<std::size_t>(w)] = v;
          heap.emplace(nd, w);
        }
      }
    }
    if (reached < 0) {
      std::vector<int> stuck;
      for (int i = 0; i < u.size(); ++i) {
        if (target[static_cast<std::size_t>(i)]) stuck.push_back(i);
      }
      return stuck;
    }
    for (int v = reached; v >= 0 && !root[static_cast<std::size_t>(v)]; v = prev[static_cast<std::size_t>(v)]) {
      sel.add(v);
    }
  }
}

// Portable Fisher-Yates so results do not depend on the standard library.
void shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// Outdoor sites first, each group in random order.
std::vector<int> visit_order(const Universe& u, const Selection& sel, std::mt19937_64& rng) {
  std::vector<int> outdoor;
  std::vector<int> indoor;
  for (int i : sel.members()) {
    if (i == 0) continue;
    (u.sites[static_cast<std::size_t>(i)].outdoor() ? outdoor : indoor).push_back(i);
  }
  shuffle(outdoor, rng);
  shuffle(indoor, rng);
  outdoor.insert(outdoor.end(), indoor.begin(), indoor.end());
  return outdoor;
}

void prune(const Universe& u, Selection& sel, std::mt19937_64& rng) {
  for (int i : visit_order(u, sel, rng)) {
    if (sel.removable(i)) sel.remove(i);
  }
}

// Drops `victim`, re-covers with indoor sites first, reconnects without it
// and prunes. Keeps the result only if (outdoor, total) strictly improves.
bool drop_and_repair(const Universe& u, Selection& sel, int victim,
                     const std::vector<char>& reachable, std::mt19937_64& rng) {
  Selection trial = sel;
  trial.remove(victim);
  std::vector<char> allowed = reachable;
  allowed[static_cast<std::size_t>(victim)] = 0;
  if (!greedy_cover(u, trial, allowed, GreedyMode::kIndoorFirst, 1.0)) return false;
  if (!repair_connectivity(u, trial, allowed).empty()) return false;
  prune(u, trial, rng);
  if (trial.uncovered() > 0 || !trial.connected_without(-1)) return false;
  if (trial.key() < sel.key()) {
    sel = std::move(trial);
    return true;
  }
  return false;
}

std::vector<SearchStep> local_search(const Universe& u, Selection& sel, int passes,
                                     const std::vector<char>& reachable, std::mt19937_64& rng) {
  std::vector<SearchStep> trace{{sel.outdoor(), sel.total()}};
  for (int pass = 0; pass < passes; ++pass) {
    const auto before = sel.key();
    prune(u, sel, rng);
    for (int victim : visit_order(u, sel, rng)) {
      if (sel.has(victim)) drop_and_repair(u, sel, victim, reachable, rng);
    }
    trace.push_back({sel.outdoor(), sel.total()});
    if (sel.key() == before) break;
  }
  return trace;
}

struct Midpoint {
  double x;
  double y;
};

}  // namespace

NetworkPlan build_plan(std::span<const CandidateSite> chosen, std::span<const Link> links,
                       const Scenario& s) {
  NetworkPlan plan;
  plan.selected.assign(chosen.begin(), chosen.end());
  std::sort(plan.selected.begin(), plan.selected.end(),
            [](const CandidateSite& a, const CandidateSite& b) { return a.id < b.id; });
  plan.selected.erase(std::unique(plan.selected.begin(), plan.selected.end(),
                                  [](const auto& a, const auto& b) { return a.id == b.id; }),
                      plan.selected.end());

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(plan.selected.size()); ++i) {
    index[plan.selected[static_cast<std::size_t>(i)].id] = i;
  }
  const int n = static_cast<int>(plan.selected.size());
  std::vector<std::vector<std::pair<int, const Link*>>> adj(static_cast<std::size_t>(n));
  for (const Link& link : links) {
    auto a = index.find(link.a);
    auto b = index.find(link.b);
    if (a == index.end() || b == index.end()) continue;
    adj[static_cast<std::size_t>(a->second)].emplace_back(b->second, &link);
    adj[static_cast<std::size_t>(b->second)].emplace_back(a->second, &link);
  }

  auto gw = index.find(kGatewayId);
  if (gw != index.end()) {
    std::vector<int> hops(static_cast<std::size_t>(n), -1);
    std::deque<int> queue{gw->second};
    hops[static_cast<std::size_t>(gw->second)] = 0;
    std::vector<int> order;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (const auto& [w, link] : adj[static_cast<std::size_t>(v)]) {
        if (hops[static_cast<std::size_t>(w)] < 0) {
          hops[static_cast<std::size_t>(w)] = hops[static_cast<std::size_t>(v)] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int v : order) {
      if (v == gw->second) continue;
      const Link* best = nullptr;
      std::string best_parent;
      for (const auto& [w, link] : adj[static_cast<std::size_t>(v)]) {
        if (hops[static_cast<std::size_t>(w)] != hops[static_cast<std::size_t>(v)] - 1) continue;
        const std::string& pid = plan.selected[static_cast<std::size_t>(w)].id;
        if (best == nullptr || link->rate_mbps > best->rate_mbps ||
            (link->rate_mbps == best->rate_mbps && pid < best_parent)) {
          best = link;
          best_parent = pid;
        }
      }
      if (best) {
        Link edge = *best;
        edge.channel.reset();
        edge.load_kbps = 0.0;
        plan.topology.push_back(std::move(edge));
      }
    }
  }
  std::sort(plan.topology.begin(), plan.topology.end(), [](const Link& l, const Link& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });

  for (CellIndex c = 0; c < s.grid.size(); ++c) {
    if (!s.grid.at(c).interest) continue;
    const CandidateSite* best = nullptr;
    double best_d = 0.0;
    for (const auto& site : plan.selected) {
      const double d = cell_distance(s.grid, site.cell, c);
      if (d > s.coverage_radius_m) continue;
      if (best == nullptr || d < best_d) {
        best = &site;
        best_d = d;
      }
    }
    if (best) plan.coverage[c] = best->id;
  }

  plan.metrics.outdoor_count = plan.outdoor_count();
  plan.metrics.indoor_count = plan.total_count() - plan.metrics.outdoor_count;
  return plan;
}

ConflictGraph link_conflict_graph(const NetworkPlan& plan, const Scenario& s) {
  const int n = static_cast<int>(plan.topology.size());
  ConflictGraph g(n);
  std::vector<Midpoint> mid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Link& l = plan.topology[static_cast<std::size_t>(i)];
    const CandidateSite* a = plan.find(l.a);
    const CandidateSite* b = plan.find(l.b);
    if (!a || !b) throw Error(ErrorCode::kInvalidArgument, "link endpoint is not a selected site");
    const Point pa = s.grid.center(a->cell);
    const Point pb = s.grid.center(b->cell);
    mid[static_cast<std::size_t>(i)] = {(pa.x + pb.x) / 2.0, (pa.y + pb.y) / 2.0};
  }
  const double range = s.interference_range_m();
  for (int i = 0; i < n; ++i) {
    const Link& li = plan.topology[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      const Link& lj = plan.topology[static_cast<std::size_t>(j)];
      const bool shared = li.a == lj.a || li.a == lj.b || li.b == lj.a || li.b == lj.b;
      const double dx = mid[static_cast<std::size_t>(i)].x - mid[static_cast<std::size_t>(j)].x;
      const double dy = mid[static_cast<std::size_t>(i)].y - mid[static_cast<std::size_t>(j)].y;
      if (shared || std::hypot(dx, dy) <= range) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

RadioBudget radio_budget(const NetworkPlan& plan, const Scenario& s) {
  RadioBudget budget;
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(plan.selected.size()); ++i) {
    index[plan.selected[static_cast<std::size_t>(i)].id] = i;
  }
  budget.node_count = static_cast<int>(plan.selected.size());
  budget.radios_per_node = s.solver.radios_per_node;
  for (const Link& l : plan.topology) budget.endpoints.emplace_back(index.at(l.a), index.at(l.b));
  return budget;
}

}  // namespace

NetworkPlan assign_channels(NetworkPlan plan, const Scenario& s) {
  const ConflictGraph g = link_conflict_graph(plan, s);
  const RadioBudget budget = radio_budget(plan, s);
  const ColoringResult coloring = color_conflict_graph(g, s.solver.channels, &budget);
  for (std::size_t i = 0; i < plan.topology.size(); ++i) {
    plan.topology[i].channel = coloring.channel[i];
  }
  plan.metrics.residual_conflicts = coloring.residual_conflicts;
  plan.metrics.radio_overflows = coloring.radio_overflows;
  return plan;
}

PlanMetrics evaluate_plan(const NetworkPlan& plan, const DemandMap& demand, const Scenario& s) {
  const int n = static_cast<int>(plan.selected.size());
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[plan.selected[static_cast<std::size_t>(i)].id] = i;
  auto gw = index.find(kGatewayId);
  if (gw == index.end()) throw Error(ErrorCode::kNotATree, "plan has no gateway");

  // Spanning-tree check via union-find.
  std::vector<int> parent_uf(static_cast<std::size_t>(n));
  std::iota(parent_uf.begin(), parent_uf.end(), 0);
  auto find = [&](int x) {
    while (parent_uf[static_cast<std::size_t>(x)] != x) {
      parent_uf[static_cast<std::size_t>(x)] = parent_uf[static_cast<std::size_t>(parent_uf[static_cast<std::size_t>(x)])];
      x = parent_uf[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int li = 0; li < static_cast<int>(plan.topology.size()); ++li) {
    const Link& l = plan.topology[static_cast<std::size_t>(li)];
    auto a = index.find(l.a);
    auto b = index.find(l.b);
    if (a == index.end() || b == index.end()) {
      throw Error(ErrorCode::kNotATree, "link " + l.a + "-" + l.b + " leaves the selected set");
    }
    const int ra = find(a->second);
    const int rb = find(b->second);
    if (ra == rb) throw Error(ErrorCode::kNotATree, "topology has a cycle through " + l.a + "-" + l.b);
    parent_uf[static_cast<std::size_t>(ra)] = rb;
    adj[static_cast<std::size_t>(a->second)].emplace_back(b->second, li);
    adj[static_cast<std::size_t>(b->second)].emplace_back(a->second, li);
  }
  if (static_cast<int>(plan.topology.size()) != n - 1) {
    throw Error(ErrorCode::kNotATree, "topology does not span the selected sites");
  }

  PlanMetrics m;
  m.outdoor_count = plan.outdoor_count();
  m.indoor_count = n - m.outdoor_count;

  // Demand lands on the serving site of each cell.
  std::vector<double> at_site(static_cast<std::size_t>(n), 0.0);
  for (CellIndex c = 0; c < static_cast<CellIndex>(demand.load_kbps.size()); ++c) {
    const double load = demand.load_kbps[static_cast<std::size_t>(c)];
    if (load <= 0.0) continue;
    int server = -1;
    if (auto it = plan.coverage.find(c); it != plan.coverage.end()) {
      if (auto si = index.find(it->second); si != index.end()) server = si->second;
    }
    if (server < 0 && !s.grid.at(c).interest) {
      double best_d = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = cell_distance(s.grid, plan.selected[static_cast<std::size_t>(i)].cell, c);
        if (d <= s.coverage_radius_m && (server < 0 || d < best_d)) {
          server = i;
          best_d = d;
        }
      }
    }
    if (server < 0) {
      m.unserved_kbps += load;
    } else {
      at_site[static_cast<std::size_t>(server)] += load;
      m.gateway_aggregate_kbps += load;
    }
  }

  // Subtree sums; the link above a site carries its subtree.
  std::vector<int> order{gw->second};
  std::vector<int> up_link(static_cast<std::size_t>(n), -1);
  std::vector<int> up_node(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[static_cast<std::size_t>(gw->second)] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (const auto& [w, li] : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      up_link[static_cast<std::size_t>(w)] = li;
      up_node[static_cast<std::size_t>(w)] = v;
      order.push_back(w);
    }
  }
  std::vector<double> subtree = at_site;
  std::vector<double> load(plan.topology.size(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (up_link[static_cast<std::size_t>(v)] < 0) continue;
    load[static_cast<std::size_t>(up_link[static_cast<std::size_t>(v)])] = subtree[static_cast<std::size_t>(v)];
    subtree[static_cast<std::size_t>(up_node[static_cast<std::size_t>(v)])] += subtree[static_cast<std::size_t>(v)];
  }

  const ConflictGraph g = link_conflict_graph(plan, s);
  const std::size_t links = plan.topology.size();
  std::vector<int> channel(links);
  for (std::size_t i = 0; i < links; ++i) {
    channel[i] = plan.topology[i].channel.value_or(std::numeric_limits<int>::min());
  }
  m.link_load_kbps = load;
  m.link_capacity_kbps.resize(links);
  m.collision_domain.resize(links);
  std::vector<double> airtime(links);
  for (std::size_t i = 0; i < links; ++i) {
    int domain = 1;
    for (int j : g.neighbors(static_cast<int>(i))) {
      if (!plan.topology[i].channel || channel[static_cast<std::size_t>(j)] == channel[i]) ++domain;
    }
    const double raw = plan.topology[i].rate_mbps * 1000.0 * s.solver.utilization_factor;
    m.collision_domain[i] = domain;
    m.link_capacity_kbps[i] = raw / domain;
    airtime[i] = raw > 0.0 ? load[i] / raw : 0.0;
    const double headroom = m.link_capacity_kbps[i] - load[i];
    m.min_link_headroom_kbps = std::min(m.min_link_headroom_kbps, headroom);
    if (load[i] > m.link_capacity_kbps[i] * (1.0 + 1e-12)) m.load_feasible = false;
  }
  for (std::size_t i = 0; i < links; ++i) {
    if (!plan.topology[i].channel) continue;
    double busy = airtime[i];
    for (int j : g.neighbors(static_cast<int>(i))) {
      if (channel[static_cast<std::size_t>(j)] == channel[i]) busy += airtime[static_cast<std::size_t>(j)];
    }
    double& slot = m.channel_utilization[channel[i]];
    slot = std::max(slot, busy);
  }

  bool all_assigned = true;
  for (std::size_t i = 0; i < links; ++i) all_assigned = all_assigned && plan.topology[i].channel.has_value();
  if (all_assigned) {
    m.residual_conflicts = count_residual_conflicts(g, channel);
    m.radio_overflows = count_radio_overflows(radio_budget(plan, s), channel);
  }
  return m;
}

NetworkPlan finalize_plan(std::span<const CandidateSite> chosen, std::span<const Link> links,
                          const Scenario& s, const DemandMap& demand) {
  NetworkPlan plan = assign_channels(build_plan(chosen, links, s), s);
  plan.metrics = evaluate_plan(plan, demand, s);
  for (std::size_t i = 0; i < plan.topology.size(); ++i) {
    plan.topology[i].load_kbps = plan.metrics.link_load_kbps[i];
  }
  return plan;
}

bool plan_better(const NetworkPlan& a, const NetworkPlan& b) {
  const int ao = a.outdoor_count();
  const int bo = b.outdoor_count();
  if (ao != bo) return ao < bo;
  if (a.total_count() != b.total_count()) return a.total_count() < b.total_count();
  if (a.metrics.min_link_headroom_kbps != b.metrics.min_link_headroom_kbps) {
    return a.metrics.min_link_headroom_kbps > b.metrics.min_link_headroom_kbps;
  }
  return a.ids() < b.ids();
}

NetworkPlan select_nodes(const Scenario& s, std::span<const CandidateSite> icp,
                         std::span<const CandidateSite> ocp, std::span<const Link> links) {
  const Universe u = detail::make_universe(s, icp, ocp, links);
  detail::check_coverable(u);
  const auto reachable = detail::reachable_from_gateway(u);
  const DemandMap demand = scenario_demand(s);

  std::optional<NetworkPlan> best;
  for (GreedyMode mode : {GreedyMode::kBiased, GreedyMode::kIndoorFirst}) {
    std::mt19937_64 rng(s.solver.rng_seed);
    Selection sel(u);
    if (!greedy_cover(u, sel, reachable, mode, s.solver.indoor_bias)) {
      throw Error(ErrorCode::kInfeasible, "greedy cover stalled");  // unreachable after check_coverable
    }
    const auto stuck = repair_connectivity(u, sel, reachable);
    if (!stuck.empty()) {
      std::vector<std::string> ids;
      for (int i : stuck) ids.push_back(u.sites[static_cast<std::size_t>(i)].id);
      throw PlanningError(ErrorCode::kDisconnected, "connectivity repair cannot reach the gateway", {},
                          ids);
    }
    auto trace = local_search(u, sel, s.solver.local_search_passes, reachable, rng);
    NetworkPlan plan = finalize_plan(detail::pick(u, sel.members()), u.links, s, demand);
    plan.search_trace = std::move(trace);
    if (!best || plan_better(plan, *best)) best = std::move(plan);
  }

  NetworkPlan out = std::move(*best);
  for (Link& l : out.topology) {
    l.channel.reset();
    l.load_kbps = 0.0;
  }
  return out;
}

}  // namespace meshplan
