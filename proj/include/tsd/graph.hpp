#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "tsd/errors.hpp"

namespace tsd {

using vertex = int;

// Undirected graph with named, possibly overlapping vertex-color sets.
class colored_graph {
 public:
  colored_graph() = default;
  explicit colored_graph(int n) : n_(n), adj_(n) {
    if (n < 0) fail(errc::invalid_instance, "negative vertex count");
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }

  void add_edge(vertex u, vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) fail(errc::invalid_instance, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!edge_set_.insert(key(u, v)).second) return;  // already present
    edges_.emplace_back(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    sorted_ = false;
  }

  bool has_edge(vertex u, vertex v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return edge_set_.count(key(u, v)) > 0;
  }

  const std::vector<vertex>& neighbors(vertex v) const {
    check_vertex(v);
    if (!sorted_) {
      for (auto& a : adj_) std::sort(a.begin(), a.end());
      std::sort(edges_.begin(), edges_.end());
      sorted_ = true;
    }
    return adj_[v];
  }

  int degree(vertex v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
  }

  // Edges sorted as (min,max) pairs.
  const std::vector<std::pair<vertex, vertex>>& edges() const {
    if (!sorted_) {
      for (auto& a : adj_) std::sort(a.begin(), a.end());
      std::sort(edges_.begin(), edges_.end());
      sorted_ = true;
    }
    return edges_;
  }

  void add_color(const std::string& name, const std::vector<vertex>& vs) {
    auto& entry = colors_[name];
    if (entry.members.empty()) entry.flags.assign(n_, 0);
    for (vertex v : vs) {
      check_vertex(v);
      if (!entry.flags[v]) {
        entry.flags[v] = 1;
        entry.members.push_back(v);
      }
    }
    std::sort(entry.members.begin(), entry.members.end());
  }

  bool has_color(const std::string& name) const { return colors_.count(name) > 0; }

  // Vertices of a color; absent color names denote the empty set.
  const std::vector<vertex>& color_members(const std::string& name) const {
    static const std::vector<vertex> empty;
    auto it = colors_.find(name);
    return it == colors_.end() ? empty : it->second.members;
  }

  bool vertex_has_color(const std::string& name, vertex v) const {
    auto it = colors_.find(name);
    if (it == colors_.end()) return false;
    return v >= 0 && v < n_ && it->second.flags[v];
  }

  std::vector<std::string> color_names() const {
    std::vector<std::string> out;
    out.reserve(colors_.size());
    for (auto& [k, v] : colors_) out.push_back(k);
    return out;
  }

  bool operator==(const colored_graph& o) const {
    if (n_ != o.n_) return false;
    if (edges() != o.edges()) return false;
    if (colors_.size() != o.colors_.size()) return false;
    for (auto& [name, c] : colors_) {
      auto it = o.colors_.find(name);
      if (it == o.colors_.end() || it->second.members != c.members) return false;
    }
    return true;
  }

 private:
  struct color_set {
    std::vector<vertex> members;
    std::vector<uint8_t> flags;
  };

  void check_vertex(vertex v) const {
    if (v < 0 || v >= n_) fail(errc::invalid_instance, "vertex " + std::to_string(v) + " out of range");
  }
  int64_t key(vertex u, vertex v) const { return static_cast<int64_t>(u) * n_ + v; }

  int n_ = 0;
  mutable std::vector<std::vector<vertex>> adj_;
  mutable std::vector<std::pair<vertex, vertex>> edges_;
  std::unordered_set<int64_t> edge_set_;
  std::map<std::string, color_set> colors_;
  mutable bool sorted_ = true;
};

// Breadth-first distances from src; -1 for unreachable vertices.
inline std::vector<int> bfs_distances(const colored_graph& g, vertex src) {
  std::vector<int> dist(g.n(), -1);
  std::vector<vertex> queue;
  dist[src] = 0;
  queue.push_back(src);
  for (size_t head = 0; head < queue.size(); ++head) {
    vertex u = queue[head];
    for (vertex w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

inline std::vector<vertex> bfs_path(const colored_graph& g, vertex src, vertex dst) {
  std::vector<int> prev(g.n(), -2);
  std::vector<vertex> queue;
  prev[src] = -1;
  queue.push_back(src);
  for (size_t head = 0; head < queue.size() && prev[dst] == -2; ++head) {
    vertex u = queue[head];
    for (vertex w : g.neighbors(u))
      if (prev[w] == -2) {
        prev[w] = u;
        queue.push_back(w);
      }
  }
  if (prev[dst] == -2) return {};
  std::vector<vertex> path;
  for (vertex v = dst; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace tsd
