#pragma once

#include <optional>
#include <vector>

#include "tsd/config.hpp"
#include "tsd/graph.hpp"
#include "tsd/min_cost_flow.hpp"

namespace tsd {

// Minimum number of slides moving s to t in the discovery sliding model:
// a min-cost perfect matching of s onto t under BFS distances (tokens move
// independently, so the matching bound is attained). nullopt = infeasible.
inline std::optional<long long> min_relocation_cost(const colored_graph& g, const configuration& s,
                                                    const configuration& t) {
  if (s.size() != t.size())
    fail(errc::size_mismatch, "configurations of sizes " + std::to_string(s.size()) + " and " +
                                  std::to_string(t.size()));
  const int k = s.size();
  if (k == 0) return 0;

  min_cost_flow mcf(2 * k + 2);
  const int src = 2 * k, snk = 2 * k + 1;
  bool any_edge = false;
  for (int i = 0; i < k; ++i) {
    mcf.add_edge(src, i, 1, 0);
    mcf.add_edge(k + i, snk, 1, 0);
  }
  for (int i = 0; i < k; ++i) {
    auto dist = bfs_distances(g, s.vertices()[i]);
    for (int j = 0; j < k; ++j)
      if (dist[t.vertices()[j]] >= 0) {
        mcf.add_edge(i, k + j, 1, dist[t.vertices()[j]]);
        any_edge = true;
      }
  }
  if (!any_edge) return std::nullopt;
  auto [flow, cost] = mcf.solve(src, snk);
  if (flow < k) return std::nullopt;
  return cost;
}

// A realizing sequence for the optimal matching: each matched token walks its
// whole shortest path in turn. Length equals min_relocation_cost.
inline std::optional<transformation_sequence> relocation_plan(const colored_graph& g,
                                                              const configuration& s,
                                                              const configuration& t) {
  if (s.size() != t.size())
    fail(errc::size_mismatch, "configurations of sizes " + std::to_string(s.size()) + " and " +
                                  std::to_string(t.size()));
  const int k = s.size();
  transformation_sequence seq;
  if (k == 0) return seq;

  min_cost_flow mcf(2 * k + 2);
  const int src = 2 * k, snk = 2 * k + 1;
  for (int i = 0; i < k; ++i) {
    mcf.add_edge(src, i, 1, 0);
    mcf.add_edge(k + i, snk, 1, 0);
  }
  std::vector<std::vector<int>> pair_edge(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i) {
    auto dist = bfs_distances(g, s.vertices()[i]);
    for (int j = 0; j < k; ++j)
      if (dist[t.vertices()[j]] >= 0)
        pair_edge[i][j] = mcf.add_edge(i, k + j, 1, dist[t.vertices()[j]]);
  }
  auto [flow, cost] = mcf.solve(src, snk);
  (void)cost;
  if (flow < k) return std::nullopt;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (pair_edge[i][j] >= 0 && mcf.flow_on(pair_edge[i][j]) > 0) {
        auto path = bfs_path(g, s.vertices()[i], t.vertices()[j]);
        for (size_t step = 0; step + 1 < path.size(); ++step) seq.push(path[step], path[step + 1]);
      }
  return seq;
}

}  // namespace tsd
