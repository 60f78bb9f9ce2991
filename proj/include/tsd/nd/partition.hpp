#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tsd/graph.hpp"

namespace tsd::nd {

// Partition of V into maximal classes of twins with equal color sets: inside a
// class all vertices share N(.) or N[.], and between two classes adjacency is
// complete or empty.
struct vertex_type_partition {
  std::vector<std::vector<vertex>> classes;            // each sorted; ordered by smallest member
  std::vector<std::vector<std::string>> color_sigs;    // per class, sorted color names
  std::vector<bool> is_clique;                         // closed-twin class (vacuous for singletons)
  std::vector<std::vector<uint8_t>> adjacent;          // complete-adjacency between classes
  std::vector<int> class_of;                           // vertex -> class index

  int size() const { return static_cast<int>(classes.size()); }
};

inline vertex_type_partition twin_partition(const colored_graph& g) {
  const int n = g.n();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  // group by color signature first; twins must agree on colors
  auto names = g.color_names();
  std::vector<std::vector<std::string>> sig(n);
  for (vertex v = 0; v < n; ++v)
    for (const auto& c : names)
      if (g.vertex_has_color(c, v)) sig[v].push_back(c);

  // open twins: equal (colors, N(v)); closed twins: equal (colors, N[v])
  std::map<std::pair<std::vector<std::string>, std::vector<vertex>>, int> open_groups, closed_groups;
  for (vertex v = 0; v < n; ++v) {
    std::vector<vertex> open = g.neighbors(v);
    auto [it_o, new_o] = open_groups.try_emplace({sig[v], open}, v);
    if (!new_o) unite(v, it_o->second);
    std::vector<vertex> closed = open;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    auto [it_c, new_c] = closed_groups.try_emplace({sig[v], closed}, v);
    if (!new_c) unite(v, it_c->second);
  }

  std::map<int, std::vector<vertex>> by_root;
  for (vertex v = 0; v < n; ++v) by_root[find(v)].push_back(v);

  vertex_type_partition p;
  p.class_of.assign(n, -1);
  std::vector<std::vector<vertex>> classes;
  for (auto& [root, members] : by_root) classes.push_back(members);
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (auto& cls : classes) {
    int id = static_cast<int>(p.classes.size());
    for (vertex v : cls) p.class_of[v] = id;
    p.color_sigs.push_back(sig[cls.front()]);
    p.is_clique.push_back(cls.size() < 2 || g.has_edge(cls[0], cls[1]));
    p.classes.push_back(std::move(cls));
  }
  const int ell = p.size();
  p.adjacent.assign(ell, std::vector<uint8_t>(ell, 0));
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      if (i != j) p.adjacent[i][j] = g.has_edge(p.classes[i].front(), p.classes[j].front());
  return p;
}

}  // namespace tsd::nd
