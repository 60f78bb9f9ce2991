#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace tsd {

// Min-cost flow via successive shortest augmenting paths with potentials.
// Costs may be negative initially (Bellman-Ford seeds the potentials), but no
// negative cycles are allowed. Exact on integers.
class min_cost_flow {
 public:
  static constexpr long long inf = std::numeric_limits<long long>::max() / 4;

  explicit min_cost_flow(int n) : head_(n, -1) {}

  int add_node() {
    head_.push_back(-1);
    return static_cast<int>(head_.size()) - 1;
  }

  int num_nodes() const { return static_cast<int>(head_.size()); }

  // Returns the edge id; flow on it is readable after solving.
  int add_edge(int from, int to, long long cap, long long cost) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back({to, head_[from], cap, cost});
    head_[from] = id;
    edges_.push_back({from, head_[to], 0, -cost});
    head_[to] = id + 1;
    return id;
  }

  long long flow_on(int edge_id) const { return edges_[edge_id ^ 1].cap; }

  // Sends up to flow_limit units s->t; returns (flow, cost).
  std::pair<long long, long long> solve(int s, int t, long long flow_limit = inf) {
    const int n = num_nodes();
    potential_.assign(n, 0);
    bool has_negative = false;
    for (size_t i = 0; i < edges_.size(); i += 2)
      if (edges_[i].cost < 0) has_negative = true;
    if (has_negative) bellman_ford(s);

    long long flow = 0, cost = 0;
    while (flow < flow_limit && dijkstra(s, t)) {
      for (int v = 0; v < n; ++v)
        if (dist_[v] < inf) potential_[v] += dist_[v];
      long long push = flow_limit - flow;
      for (int v = t; v != s; v = edges_[prev_edge_[v] ^ 1].to)
        push = std::min(push, edges_[prev_edge_[v]].cap);
      for (int v = t; v != s; v = edges_[prev_edge_[v] ^ 1].to) {
        edges_[prev_edge_[v]].cap -= push;
        edges_[prev_edge_[v] ^ 1].cap += push;
      }
      flow += push;
      cost += push * (potential_[t] - potential_[s]);
    }
    return {flow, cost};
  }

 private:
  struct edge {
    int to;
    int next;
    long long cap;
    long long cost;
  };

  void bellman_ford(int s) {
    const int n = num_nodes();
    potential_.assign(n, inf);
    potential_[s] = 0;
    for (int round = 0; round < n; ++round) {
      bool any = false;
      for (int u = 0; u < n; ++u) {
        if (potential_[u] >= inf) continue;
        for (int e = head_[u]; e != -1; e = edges_[e].next) {
          if (edges_[e].cap <= 0) continue;
          long long cand = potential_[u] + edges_[e].cost;
          if (cand < potential_[edges_[e].to]) {
            potential_[edges_[e].to] = cand;
            any = true;
          }
        }
      }
      if (!any) break;
    }
    for (auto& p : potential_)
      if (p >= inf) p = 0;
  }

  bool dijkstra(int s, int t) {
    const int n = num_nodes();
    dist_.assign(n, inf);
    prev_edge_.assign(n, -1);
    dist_[s] = 0;
    using item = std::pair<long long, int>;
    std::priority_queue<item, std::vector<item>, std::greater<item>> pq;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist_[u]) continue;
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap <= 0) continue;
        int v = edges_[e].to;
        long long nd = d + edges_[e].cost + potential_[u] - potential_[v];
        if (nd < dist_[v]) {
          dist_[v] = nd;
          prev_edge_[v] = e;
          pq.push({nd, v});
        }
      }
    }
    return dist_[t] < inf;
  }

  std::vector<int> head_;
  std::vector<edge> edges_;
  std::vector<long long> potential_, dist_;
  std::vector<int> prev_edge_;
};

}  // namespace tsd
