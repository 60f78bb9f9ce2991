#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "tsd/instance.hpp"
#include "tsd/relocation.hpp"

namespace tsd {

struct solve_result {
  bool yes = false;
  configuration target;
  long long cost = -1;
  transformation_sequence seq;
};

struct oracle_limits {
  long long max_subsets = 5'000'000;
  long long max_bfs_nodes = 5'000'000;
  int threads = 1;
};

namespace detail {

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (1LL << 62) / n) return 1LL << 62;
  }
  return r;
}

// Combination of given rank in lexicographic order (combinatorial numbering).
inline std::vector<int> unrank_combination(int n, int k, long long rank) {
  std::vector<int> out;
  int v = 0;
  for (int slot = k; slot >= 1; --slot) {
    while (binom(n - v - 1, slot - 1) <= rank) {
      rank -= binom(n - v - 1, slot - 1);
      ++v;
    }
    out.push_back(v++);
  }
  return out;
}

inline bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct candidate {
  long long cost;
  std::vector<int> target;
  bool operator<(const candidate& o) const {
    return cost != o.cost ? cost < o.cost : target < o.target;
  }
};

}  // namespace detail

// Exhaustive reference solver: scans all k-subsets T, keeps the satisfying
// ones, and returns the cheapest relocation within budget (ties broken by the
// lexicographically smallest target).
inline solve_result solve_enumerate(const discovery_instance& inst, oracle_limits lim = {}) {
  inst.validate();
  const int n = inst.graph.n();
  const int k = inst.start.size();
  const long long total = detail::binom(n, k);
  if (total > lim.max_subsets)
    fail(errc::search_space_too_large,
         std::to_string(total) + " subsets exceeds limit " + std::to_string(lim.max_subsets));

  auto scan = [&](long long lo, long long hi, std::optional<detail::candidate>& best) {
    if (lo >= hi) return;
    logic::model_checker mc(inst.graph);
    std::vector<int> comb = detail::unrank_combination(n, k, lo);
    for (long long r = lo; r < hi; ++r) {
      configuration t(comb);
      if (mc.check(inst.phi, t)) {
        auto cost = min_relocation_cost(inst.graph, inst.start, t);
        if (cost) {
          detail::candidate cand{*cost, t.vertices()};
          if (!best || cand < *best) best = cand;
        }
      }
      if (!detail::next_combination(comb, n)) break;
    }
  };

  std::optional<detail::candidate> best;
  int workers = std::max(1, lim.threads);
  inst.graph.edges();  // settle the lazily sorted adjacency before sharing
  if (workers == 1 || total < 1024) {
    scan(0, total, best);
  } else {
    std::vector<std::optional<detail::candidate>> bests(workers);
    std::vector<std::thread> pool;
    long long chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(scan, w * chunk, std::min(total, (w + 1) * chunk), std::ref(bests[w]));
    for (auto& th : pool) th.join();
    for (auto& b : bests)
      if (b && (!best || *b < *best)) best = b;
  }

  solve_result res;
  if (!best || best->cost > inst.budget) return res;
  res.yes = true;
  res.target = configuration(best->target);
  res.cost = best->cost;
  res.seq = *relocation_plan(inst.graph, inst.start, res.target);
  return res;
}

// Independent oracle: breadth-first search over configurations in the strict
// token-sliding model (a token moves along an edge to an unoccupied vertex).
inline solve_result solve_bfs(const discovery_instance& inst, oracle_limits lim = {}) {
  inst.validate();
  const int n = inst.graph.n();
  if (n > 62) fail(errc::search_space_too_large, "bfs oracle needs n <= 62");
  const int k = inst.start.size();
  const long long cap = std::min<long long>(inst.budget, static_cast<long long>(k) * n);

  auto to_mask = [](const configuration& c) {
    uint64_t m = 0;
    for (vertex v : c) m |= 1ull << v;
    return m;
  };
  auto to_config = [&](uint64_t m) {
    std::vector<vertex> vs;
    for (vertex v = 0; v < n; ++v)
      if (m >> v & 1) vs.push_back(v);
    return configuration(std::move(vs));
  };

  logic::model_checker mc(inst.graph);
  std::unordered_map<uint64_t, std::pair<uint64_t, std::pair<int, int>>> parent;  // state -> (prev, move)
  uint64_t start_mask = to_mask(inst.start);
  parent[start_mask] = {start_mask, {-1, -1}};
  std::vector<uint64_t> frontier{start_mask};
  long long visited = 1;

  solve_result res;
  auto finish = [&](uint64_t goal, int depth) {
    res.yes = true;
    res.cost = depth;
    res.target = to_config(goal);
    std::vector<std::pair<int, int>> moves;
    for (uint64_t cur = goal; cur != start_mask;) {
      auto& [prev, mv] = parent[cur];
      moves.push_back(mv);
      cur = prev;
    }
    std::reverse(moves.begin(), moves.end());
    for (auto mv : moves) res.seq.push(mv.first, mv.second);
  };

  for (int depth = 0; depth <= cap; ++depth) {
    // deterministic: smallest satisfying target of this layer wins
    std::optional<uint64_t> hit;
    std::optional<std::vector<int>> hit_key;
    for (uint64_t cur : frontier) {
      configuration c = to_config(cur);
      if (mc.check(inst.phi, c)) {
        if (!hit_key || c.vertices() < *hit_key) {
          hit = cur;
          hit_key = c.vertices();
        }
      }
    }
    if (hit) {
      finish(*hit, depth);
      return res;
    }
    if (depth == cap) break;
    std::vector<uint64_t> next;
    for (uint64_t cur : frontier) {
      for (vertex u = 0; u < n; ++u) {
        if (!(cur >> u & 1)) continue;
        for (vertex v : inst.graph.neighbors(u)) {
          if (cur >> v & 1) continue;
          uint64_t nxt = (cur ^ (1ull << u)) | (1ull << v);
          if (parent.emplace(nxt, std::make_pair(cur, std::make_pair(u, v))).second) {
            next.push_back(nxt);
            if (++visited > lim.max_bfs_nodes)
              fail(errc::search_space_too_large, "bfs node limit exceeded");
          }
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return res;
}

// Minimum budget for which the instance is a yes-instance; nullopt if no
// satisfying configuration is reachable at all.
inline std::optional<long long> min_budget(const colored_graph& g, const configuration& start,
                                           const logic::formula& phi, oracle_limits lim = {}) {
  const int n = g.n();
  const int k = start.size();
  const long long total = detail::binom(n, k);
  if (total > lim.max_subsets)
    fail(errc::search_space_too_large, std::to_string(total) + " subsets exceeds limit");

  logic::model_checker mc(g);
  std::optional<long long> best;
  if (k == 0) {
    if (mc.check(phi, configuration{})) return 0;
    return std::nullopt;
  }
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  do {
    configuration t(comb);
    if (mc.check(phi, t)) {
      auto cost = min_relocation_cost(g, start, t);
      if (cost && (!best || *cost < *best)) best = cost;
    }
  } while (detail::next_combination(comb, n));
  return best;
}

}  // namespace tsd
