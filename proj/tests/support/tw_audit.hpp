#pragma once

#include <optional>
#include <vector>

#include "tsd/instance.hpp"
#include "tsd/min_cost_flow.hpp"
#include "tsd/tw/dp.hpp"

namespace tsd::testing {

// Vertices of G_i: everything introduced in the subtree rooted at node i.
inline std::vector<vertex> processed_vertices(const tw::nice_tree_decomposition& ntd, int i) {
  std::vector<uint8_t> flag(ntd.n_graph, 0);
  std::vector<int> stack{i};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    const auto& nd = ntd.nodes[cur];
    if (nd.kind == tw::nice_kind::introduce) flag[nd.v] = 1;
    if (nd.left >= 0) stack.push_back(nd.left);
    if (nd.right >= 0) stack.push_back(nd.right);
  }
  std::vector<vertex> out;
  for (vertex v = 0; v < ntd.n_graph; ++v)
    if (flag[v]) out.push_back(v);
  return out;
}

// Minimum total walk length matching the start multiset onto the target
// multiset inside the induced subgraph on `inside`; nullopt if impossible.
inline std::optional<long long> multiset_relocation_cost(const colored_graph& g,
                                                         const std::vector<vertex>& inside,
                                                         const std::vector<vertex>& start,
                                                         const std::vector<vertex>& target) {
  if (start.size() != target.size()) return std::nullopt;
  const int k = static_cast<int>(start.size());
  if (k == 0) return 0;
  std::vector<uint8_t> in_set(g.n(), 0);
  for (vertex v : inside) in_set[v] = 1;
  auto dists_from = [&](vertex src) {
    std::vector<int> dist(g.n(), -1);
    std::vector<vertex> queue{src};
    dist[src] = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
      vertex u = queue[h];
      for (vertex w : g.neighbors(u))
        if (in_set[w] && dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    return dist;
  };
  min_cost_flow mcf(2 * k + 2);
  int src = 2 * k, snk = 2 * k + 1;
  for (int i = 0; i < k; ++i) {
    mcf.add_edge(src, i, 1, 0);
    mcf.add_edge(k + i, snk, 1, 0);
  }
  for (int i = 0; i < k; ++i) {
    auto dist = dists_from(start[i]);
    for (int j = 0; j < k; ++j)
      if (dist[target[j]] >= 0) mcf.add_edge(i, k + j, 1, dist[target[j]]);
  }
  auto [flow, cost] = mcf.solve(src, snk);
  if (flow < k) return std::nullopt;
  return cost;
}

// The validity predicate for one state at one node, evaluated by brute force:
// some T_i of the right size, bag trace, and logical type admits a plan moving
// [S cap G_i] + owed phantoms onto [T_i] + parked surpluses within ell slides.
template <typename Engine>
inline bool state_valid(const discovery_instance& inst, const tw::nice_tree_decomposition& ntd,
                        Engine& engine, int node, const tw::dp_state& s) {
  const auto& bag = ntd.nodes[node].bag;
  std::vector<vertex> verts = processed_vertices(ntd, node);
  const int m = static_cast<int>(verts.size());

  std::vector<vertex> start;
  for (vertex v : verts)
    if (inst.start.contains(v)) start.push_back(v);
  for (size_t i = 0; i < bag.size(); ++i)
    for (int c = 0; c < -s.f[i]; ++c) start.push_back(bag[i]);

  for (uint64_t mask = 0; mask < (1ull << m); ++mask) {
    if (__builtin_popcountll(mask) != s.kappa) continue;
    std::vector<vertex> ti;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) ti.push_back(verts[i]);
    uint32_t tprime = 0;
    for (size_t i = 0; i < bag.size(); ++i)
      if (std::binary_search(ti.begin(), ti.end(), bag[i])) tprime |= 1u << i;
    if (tprime != s.tprime) continue;

    tw::boundaried_structure st;
    std::vector<int> local(inst.graph.n(), -1);
    st.n = m;
    for (int i = 0; i < m; ++i) local[verts[i]] = i;
    for (auto [u, v] : inst.graph.edges())
      if (local[u] >= 0 && local[v] >= 0)
        st.edges.push_back({std::min(local[u], local[v]), std::max(local[u], local[v])});
    st.normalize();
    st.colors.assign(m, 0);
    const auto& universe = engine.color_universe();
    for (size_t c = 0; c < universe.size(); ++c)
      for (vertex v : inst.graph.color_members(universe[c]))
        if (local[v] >= 0) st.colors[local[v]] |= 1u << c;
    st.token.assign(m, 0);
    for (vertex v : ti) st.token[local[v]] = 1;
    for (vertex v : bag) st.boundary.push_back(local[v]);
    if (engine.type_of(st) != s.type) continue;

    std::vector<vertex> target = ti;
    for (size_t i = 0; i < bag.size(); ++i)
      for (int c = 0; c < s.f[i]; ++c) target.push_back(bag[i]);
    auto cost = multiset_relocation_cost(inst.graph, verts, start, target);
    if (cost && *cost <= s.ell) return true;
  }
  return false;
}

}  // namespace tsd::testing
