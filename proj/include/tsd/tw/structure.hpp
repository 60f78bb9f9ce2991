#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tsd/config.hpp"
#include "tsd/graph.hpp"

namespace tsd::tw {

// A colored, token-marked graph with an ordered tuple of boundary vertices.
// Vertices are local ids 0..n-1; colors are bitmasks over a fixed color
// universe shared by everyone handling the same instance.
struct boundaried_structure {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // sorted pairs (u < v), deduped
  std::vector<uint32_t> colors;            // per vertex
  std::vector<uint8_t> token;              // per vertex, X membership
  std::vector<int> boundary;               // ordered tuple

  void normalize() {
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
};

namespace detail {

inline std::string encode(const boundaried_structure& s, const std::vector<int>& relabel) {
  // relabel[old] = new id; boundary occupies fixed slots by construction
  std::string out = std::to_string(s.n) + ";" + std::to_string(s.boundary.size()) + ";";
  std::vector<uint32_t> col(s.n);
  std::vector<uint8_t> tok(s.n);
  for (int v = 0; v < s.n; ++v) {
    col[relabel[v]] = s.colors[v];
    tok[relabel[v]] = s.token[v];
  }
  for (int v = 0; v < s.n; ++v) {
    out += std::to_string(col[v]) + (tok[v] ? "t" : "f");
    out += ",";
  }
  out += ";";
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : s.edges) {
    int a = relabel[u], b = relabel[v];
    if (a > b) std::swap(a, b);
    es.push_back({a, b});
  }
  std::sort(es.begin(), es.end());
  for (auto [a, b] : es) out += std::to_string(a) + "-" + std::to_string(b) + ",";
  return out;
}

}  // namespace detail

// Canonical string under color/token/boundary-preserving isomorphism: the
// boundary tuple is pinned to the first slots; the interior is ordered by
// iterative refinement and a backtracking search over the remaining ties,
// taking the lexicographically smallest encoding.
inline std::string canonical_key(const boundaried_structure& s) {
  const int n = s.n;
  std::vector<int> bpos(n, -1);
  for (size_t i = 0; i < s.boundary.size(); ++i) bpos[s.boundary[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : s.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  // iterative refinement seeded by (boundary position, colors, token flag)
  std::vector<uint64_t> cls(n);
  for (int v = 0; v < n; ++v)
    cls[v] = (static_cast<uint64_t>(bpos[v] + 1) << 40) ^ (static_cast<uint64_t>(s.colors[v]) << 8) ^
             s.token[v];
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<std::pair<uint64_t, std::vector<uint64_t>>, int>> sigs;
    sigs.reserve(n);
    for (int v = 0; v < n; ++v) {
      std::vector<uint64_t> neigh;
      for (int w : adj[v]) neigh.push_back(cls[w]);
      std::sort(neigh.begin(), neigh.end());
      sigs.push_back({{cls[v], std::move(neigh)}, v});
    }
    std::sort(sigs.begin(), sigs.end());
    std::vector<uint64_t> next(n);
    uint64_t id = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sigs[i].first != sigs[i - 1].first) ++id;
      next[sigs[i].second] = id;
    }
    if (next == cls) break;
    cls = next;
  }

  // order: boundary first (fixed), then interior sorted by refined class with
  // backtracking over ties for exactness
  std::vector<int> interior;
  for (int v = 0; v < n; ++v)
    if (bpos[v] < 0) interior.push_back(v);
  std::sort(interior.begin(), interior.end(), [&](int a, int b) { return cls[a] < cls[b]; });

  std::vector<int> relabel(n, -1);
  for (int v = 0; v < n; ++v)
    if (bpos[v] >= 0) relabel[v] = bpos[v];

  std::string best;
  std::vector<int> perm(interior);
  // group ties and permute within groups only
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 0; i < perm.size();) {
    size_t j = i;
    while (j < perm.size() && cls[perm[j]] == cls[perm[i]]) ++j;
    groups.push_back({i, j});
    i = j;
  }
  long long combos = 1;
  for (auto [a, b] : groups) {
    long long f = 1;
    for (size_t t = 2; t <= b - a; ++t) f *= static_cast<long long>(t);
    combos *= f;
    if (combos > 40320) break;  // cap: fall back to full refinement ordering only
  }
  std::function<void(size_t)> search = [&](size_t gi) {
    if (gi == groups.size()) {
      auto rl = relabel;
      int next_id = static_cast<int>(s.boundary.size());
      for (int v : perm) rl[v] = next_id++;
      std::string enc = detail::encode(s, rl);
      if (best.empty() || enc < best) best = enc;
      return;
    }
    auto [a, b] = groups[gi];
    std::sort(perm.begin() + a, perm.begin() + b);
    do {
      search(gi + 1);
    } while (std::next_permutation(perm.begin() + a, perm.begin() + b));
  };
  if (combos > 40320) {
    // ties beyond the cap: refinement order (still deterministic, and exact
    // whenever refinement separated everything)
    auto rl = relabel;
    int next_id = static_cast<int>(s.boundary.size());
    for (int v : perm) rl[v] = next_id++;
    best = detail::encode(s, rl);
  } else {
    search(0);
  }
  return best;
}

// Glues b onto a: the i-th boundary vertex of b is identified with the i-th
// boundary vertex of a (the tuples must agree on colors and tokens); interior
// vertices of b are appended fresh. The result keeps a's boundary tuple.
inline boundaried_structure glue(const boundaried_structure& a, const boundaried_structure& b) {
  if (a.boundary.size() != b.boundary.size())
    fail(errc::invalid_instance, "glue: boundary arity mismatch");
  boundaried_structure out = a;
  std::vector<int> map_b(b.n, -1);
  for (size_t i = 0; i < b.boundary.size(); ++i) {
    int bv = b.boundary[i], av = a.boundary[i];
    map_b[bv] = av;
    if (a.colors[av] != b.colors[bv] || a.token[av] != b.token[bv])
      fail(errc::invalid_instance, "glue: boundary attribute mismatch");
  }
  for (int v = 0; v < b.n; ++v) {
    if (map_b[v] >= 0) continue;
    map_b[v] = out.n++;
    out.colors.push_back(b.colors[v]);
    out.token.push_back(b.token[v]);
  }
  for (auto [u, v] : b.edges) out.edges.push_back({map_b[u], map_b[v]});
  out.normalize();
  return out;
}

// Drops boundary position i (the vertex stays in the structure).
inline boundaried_structure drop_boundary(const boundaried_structure& s, size_t i) {
  boundaried_structure out = s;
  out.boundary.erase(out.boundary.begin() + i);
  return out;
}

// View of (G, X) as a boundaried structure over a color universe.
inline boundaried_structure from_graph(const colored_graph& g,
                                       const std::vector<std::string>& color_universe,
                                       const configuration& x, std::vector<int> boundary = {}) {
  boundaried_structure s;
  s.n = g.n();
  s.edges = g.edges();
  s.colors.assign(g.n(), 0);
  s.token.assign(g.n(), 0);
  for (size_t c = 0; c < color_universe.size(); ++c)
    for (vertex v : g.color_members(color_universe[c])) s.colors[v] |= 1u << c;
  for (vertex v : x) s.token[v] = 1;
  s.boundary = std::move(boundary);
  return s;
}

// Back-conversion for model checking on a representative structure.
inline colored_graph to_graph(const boundaried_structure& s,
                              const std::vector<std::string>& color_universe,
                              configuration* tokens_out = nullptr) {
  colored_graph g(s.n);
  for (auto [u, v] : s.edges) g.add_edge(u, v);
  for (size_t c = 0; c < color_universe.size(); ++c) {
    std::vector<vertex> members;
    for (int v = 0; v < s.n; ++v)
      if (s.colors[v] >> c & 1) members.push_back(v);
    g.add_color(color_universe[c], members);
  }
  if (tokens_out) {
    std::vector<vertex> tk;
    for (int v = 0; v < s.n; ++v)
      if (s.token[v]) tk.push_back(v);
    *tokens_out = configuration(std::move(tk));
  }
  return g;
}

}  // namespace tsd::tw
