#pragma once

#include <vector>

#include "tsd/graph.hpp"
#include "tsd/tw/decomposition.hpp"

namespace tsd::tw {

namespace detail {

// Q(S, v): vertices outside S u {v} reachable from v through S.
inline uint32_t reach_through(const std::vector<uint32_t>& adj, uint32_t s_mask, int v) {
  uint32_t frontier = adj[v] & s_mask;
  uint32_t inside = frontier;
  while (frontier) {
    uint32_t next = 0;
    uint32_t f = frontier;
    while (f) {
      int w = __builtin_ctz(f);
      f &= f - 1;
      next |= adj[w] & s_mask;
    }
    next &= ~inside;
    frontier = next;
    inside |= next;
  }
  uint32_t outside = 0;
  uint32_t probe = inside | (adj[v] & ~s_mask);
  // neighbors of v or of the reached S-part, outside S and != v
  uint32_t f = inside;
  outside = adj[v] & ~s_mask;
  while (f) {
    int w = __builtin_ctz(f);
    f &= f - 1;
    outside |= adj[w] & ~s_mask;
  }
  (void)probe;
  outside &= ~(1u << v);
  return outside;
}

}  // namespace detail

// Exact treewidth by dynamic programming over vertex subsets (elimination
// orders): f(S) = min over v in S of max(f(S\{v}), |Q(S\{v}, v)|).
// Returns the width and an optimal elimination order.
inline std::pair<int, std::vector<int>> exact_treewidth(const colored_graph& g, int limit = 20) {
  const int n = g.n();
  if (n > limit)
    fail(errc::search_space_too_large,
         "exact treewidth limited to n <= " + std::to_string(limit));
  if (n == 0) return {-1, {}};
  std::vector<uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int8_t> f(full + 1, -1);
  f[0] = -1;  // empty set: width of nothing
  // iterate masks in increasing order; subsets come before supersets
  for (uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    uint32_t it = s;
    while (it) {
      int v = __builtin_ctz(it);
      it &= it - 1;
      uint32_t rest = s & ~(1u << v);
      int q = __builtin_popcount(detail::reach_through(adj, rest, v));
      int cand = std::max<int>(f[rest], q);
      best = std::min(best, cand);
    }
    f[s] = static_cast<int8_t>(best);
  }
  // recover elimination order (first eliminated first)
  std::vector<int> order;
  uint32_t s = full;
  while (s) {
    uint32_t it = s;
    int pick = -1;
    while (it) {
      int v = __builtin_ctz(it);
      it &= it - 1;
      uint32_t rest = s & ~(1u << v);
      int q = __builtin_popcount(detail::reach_through(adj, rest, v));
      if (std::max<int>(f[rest], q) == f[s]) {
        pick = v;
        break;
      }
    }
    order.push_back(pick);
    s &= ~(1u << pick);
  }
  std::reverse(order.begin(), order.end());  // order[0] eliminated first
  return {f[full], order};
}

// Tree decomposition from an elimination order via the fill-in construction:
// bag(v) = {v} + later neighbors in the filled graph, parent = earliest later
// fill-neighbor's bag.
inline tree_decomposition decomposition_from_order(const colored_graph& g,
                                                   const std::vector<int>& order) {
  const int n = g.n();
  tree_decomposition td;
  td.n_graph = n;
  if (n == 0) {
    td.bags.push_back({});
    return td;
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<uint8_t>> fill(n, std::vector<uint8_t>(n, 0));
  for (auto [u, v] : g.edges()) fill[u][v] = fill[v][u] = 1;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> later;
    for (int w = 0; w < n; ++w)
      if (fill[v][w] && pos[w] > i) later.push_back(w);
    for (size_t a = 0; a < later.size(); ++a)
      for (size_t b = a + 1; b < later.size(); ++b)
        fill[later[a]][later[b]] = fill[later[b]][later[a]] = 1;
  }
  std::vector<int> bag_of(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<vertex> bag{v};
    int parent = -1, parent_pos = n;
    for (int w = 0; w < n; ++w)
      if (fill[v][w] && pos[w] > i) {
        bag.push_back(w);
        if (pos[w] < parent_pos) {
          parent_pos = pos[w];
          parent = w;
        }
      }
    std::sort(bag.begin(), bag.end());
    bag_of[v] = static_cast<int>(td.bags.size());
    td.bags.push_back(bag);
    if (parent >= 0)
      td.tree_edges.push_back({bag_of[v], -1 - parent});  // fixed below
    else
      roots.push_back(bag_of[v]);
  }
  for (auto& [a, b] : td.tree_edges) b = bag_of[-1 - b];
  // disconnected graphs leave one root bag per component: stitch them
  for (size_t i = 1; i < roots.size(); ++i) td.tree_edges.push_back({roots[i], roots[0]});
  return td;
}

// Computes an exact-width nice tree decomposition (n <= limit).
inline nice_tree_decomposition compute_td(const colored_graph& g, int limit = 20) {
  auto [w, order] = exact_treewidth(g, limit);
  (void)w;
  tree_decomposition td = decomposition_from_order(g, order);
  validate(td, g);
  return make_nice(td);
}

}  // namespace tsd::tw
