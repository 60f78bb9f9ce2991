#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tsd/graph.hpp"

namespace tsd::tw {

// Raw tree decomposition: bags indexed 0..#bags-1 plus tree edges.
struct tree_decomposition {
  std::vector<std::vector<vertex>> bags;  // each sorted
  std::vector<std::pair<int, int>> tree_edges;
  int n_graph = 0;

  int width() const {
    int w = 0;
    for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w - 1;
  }
};

// The three tree-decomposition axioms; throws invalid_decomposition naming the
// violated axiom and a witness node.
inline void validate(const tree_decomposition& td, const colored_graph& g) {
  const int bags = static_cast<int>(td.bags.size());
  if (bags == 0) fail(errc::invalid_decomposition, "no bags");
  std::vector<std::vector<int>> tree(bags);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= bags || b >= bags)
      fail(errc::invalid_decomposition, "tree edge out of range");
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  if (static_cast<int>(td.tree_edges.size()) != bags - 1)
    fail(errc::invalid_decomposition, "tree must have exactly #bags-1 edges");
  // connectivity of the tree itself
  std::vector<uint8_t> seen(bags, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int nb : tree[cur])
      if (!seen[nb]) {
        seen[nb] = 1;
        ++reached;
        stack.push_back(nb);
      }
  }
  if (reached != bags) fail(errc::invalid_decomposition, "bag tree is disconnected");

  // axiom 1: every vertex in some bag
  std::vector<uint8_t> covered(td.n_graph, 0);
  for (auto& b : td.bags)
    for (vertex v : b) {
      if (v < 0 || v >= td.n_graph) fail(errc::invalid_decomposition, "bag vertex out of range");
      covered[v] = 1;
    }
  for (vertex v = 0; v < td.n_graph; ++v)
    if (!covered[v])
      fail(errc::invalid_decomposition, "axiom 1: vertex " + std::to_string(v) + " in no bag");

  // axiom 2: every edge inside some bag
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) {
        found = true;
        break;
      }
    if (!found)
      fail(errc::invalid_decomposition,
           "axiom 2: edge (" + std::to_string(u) + "," + std::to_string(v) + ") in no bag");
  }

  // axiom 3: occurrences of each vertex induce a subtree
  for (vertex v = 0; v < td.n_graph; ++v) {
    int first = -1, count = 0;
    for (int i = 0; i < bags; ++i)
      if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
        ++count;
        if (first < 0) first = i;
      }
    if (count == 0) continue;
    std::vector<uint8_t> vis(bags, 0);
    std::vector<int> st{first};
    vis[first] = 1;
    int got = 1;
    while (!st.empty()) {
      int cur = st.back();
      st.pop_back();
      for (int nb : tree[cur]) {
        if (vis[nb] || !std::binary_search(td.bags[nb].begin(), td.bags[nb].end(), v)) continue;
        vis[nb] = 1;
        ++got;
        st.push_back(nb);
      }
    }
    if (got != count)
      fail(errc::invalid_decomposition,
           "axiom 3: occurrences of vertex " + std::to_string(v) + " are disconnected");
  }
}

// PACE-style .td reader: 's td <#bags> <width+1> <n>', 'b <id> <verts...>'
// (1-indexed), remaining lines are tree edges between bag ids.
inline tree_decomposition read_td(std::istream& in) {
  tree_decomposition td;
  std::string line;
  int declared_bags = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ss(line);
    if (line[0] == 's') {
      std::string s, kind;
      int bags = 0, w1 = 0, n = 0;
      if (!(ss >> s >> kind >> bags >> w1 >> n) || bags < 0)
        fail(errc::parse_error, "bad 's td' header at line " + std::to_string(lineno));
      declared_bags = bags;
      td.bags.assign(bags, {});
      td.n_graph = n;
      continue;
    }
    if (line[0] == 'b') {
      char b;
      int id;
      ss >> b >> id;
      if (declared_bags < 0 || id < 1 || id > declared_bags)
        fail(errc::parse_error, "bad bag id at line " + std::to_string(lineno));
      long long v;
      while (ss >> v) {
        if (v < 1 || v > td.n_graph)
          fail(errc::parse_error, "bag vertex out of range at line " + std::to_string(lineno));
        td.bags[id - 1].push_back(static_cast<int>(v - 1));
      }
      std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
      continue;
    }
    int a, b;
    if (!(std::istringstream(line) >> a >> b))
      fail(errc::parse_error, "bad tree edge at line " + std::to_string(lineno));
    if (declared_bags < 0 || a < 1 || b < 1 || a > declared_bags || b > declared_bags)
      fail(errc::parse_error, "tree edge out of range at line " + std::to_string(lineno));
    td.tree_edges.push_back({a - 1, b - 1});
  }
  if (declared_bags < 0) fail(errc::parse_error, "missing 's td' header");
  return td;
}

inline tree_decomposition read_td_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  return read_td(in);
}

// Nice form: empty root and leaves, unit-step introduce/forget, joins with
// identical child bags.
enum class nice_kind { leaf, introduce, forget, join };

struct nice_node {
  nice_kind kind = nice_kind::leaf;
  vertex v = -1;                 // introduced / forgotten vertex
  std::vector<vertex> bag;       // sorted
  int left = -1, right = -1;     // children
};

struct nice_tree_decomposition {
  std::vector<nice_node> nodes;
  int root = -1;
  int width = 0;
  int n_graph = 0;
};

namespace detail {

struct nice_builder {
  nice_tree_decomposition out;

  int add(nice_node nd) {
    out.nodes.push_back(std::move(nd));
    out.width = std::max(out.width,
                         static_cast<int>(out.nodes.back().bag.size()) - 1);
    return static_cast<int>(out.nodes.size()) - 1;
  }

  int chain_from_empty(const std::vector<vertex>& target) {
    int cur = add({nice_kind::leaf, -1, {}, -1, -1});
    std::vector<vertex> bag;
    for (vertex v : target) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      cur = add({nice_kind::introduce, v, bag, cur, -1});
    }
    return cur;
  }

  // morph node from bag `from` to bag `to`: forget extras, then introduce news
  int morph(int cur, std::vector<vertex> from, const std::vector<vertex>& to) {
    for (vertex v : std::vector<vertex>(from)) {
      if (!std::binary_search(to.begin(), to.end(), v)) {
        from.erase(std::find(from.begin(), from.end(), v));
        cur = add({nice_kind::forget, v, from, cur, -1});
      }
    }
    for (vertex v : to) {
      if (!std::binary_search(from.begin(), from.end(), v)) {
        from.insert(std::lower_bound(from.begin(), from.end(), v), v);
        cur = add({nice_kind::introduce, v, from, cur, -1});
      }
    }
    return cur;
  }
};

}  // namespace detail

// Converts a valid decomposition into nice form (rooted at bag 0).
inline nice_tree_decomposition make_nice(const tree_decomposition& td) {
  const int bags = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> tree(bags);
  for (auto [a, b] : td.tree_edges) {
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  detail::nice_builder nb;
  nb.out.n_graph = td.n_graph;

  // post-order construction; returns a nice node whose bag equals td.bags[i]
  std::function<int(int, int)> build = [&](int i, int parent) -> int {
    std::vector<int> kids;
    for (int nb2 : tree[i])
      if (nb2 != parent) kids.push_back(nb2);
    if (kids.empty()) return nb.chain_from_empty(td.bags[i]);
    std::vector<int> parts;
    for (int c : kids) {
      int sub = build(c, i);
      parts.push_back(nb.morph(sub, td.bags[c], td.bags[i]));
    }
    int cur = parts[0];
    for (size_t j = 1; j < parts.size(); ++j)
      cur = nb.add({nice_kind::join, -1, td.bags[i], cur, parts[j]});
    return cur;
  };
  int top = build(0, -1);
  top = nb.morph(top, td.bags[0], {});
  nb.out.root = top;
  if (nb.out.nodes[top].kind == nice_kind::leaf) {
    // empty graph: root must still be a node; keep the single leaf
  }
  return nb.out;
}

// Structural checks of the nice form plus the decomposition axioms.
inline void validate_nice(const nice_tree_decomposition& ntd, const colored_graph& g) {
  if (ntd.root < 0) fail(errc::invalid_decomposition, "no root");
  if (!ntd.nodes[ntd.root].bag.empty()) fail(errc::invalid_decomposition, "root bag not empty");
  tree_decomposition td;
  td.n_graph = ntd.n_graph;
  for (int i = 0; i < static_cast<int>(ntd.nodes.size()); ++i) {
    const auto& nd = ntd.nodes[i];
    td.bags.push_back(nd.bag);
    if (nd.left >= 0) td.tree_edges.push_back({i, nd.left});
    if (nd.right >= 0) td.tree_edges.push_back({i, nd.right});
    switch (nd.kind) {
      case nice_kind::leaf:
        if (!nd.bag.empty()) fail(errc::invalid_decomposition, "leaf bag not empty");
        break;
      case nice_kind::introduce: {
        if (nd.left < 0) fail(errc::invalid_decomposition, "introduce without child");
        auto child = ntd.nodes[nd.left].bag;
        child.insert(std::lower_bound(child.begin(), child.end(), nd.v), nd.v);
        if (child != nd.bag) fail(errc::invalid_decomposition, "introduce bag mismatch");
        break;
      }
      case nice_kind::forget: {
        if (nd.left < 0) fail(errc::invalid_decomposition, "forget without child");
        auto child = ntd.nodes[nd.left].bag;
        auto it = std::find(child.begin(), child.end(), nd.v);
        if (it == child.end()) fail(errc::invalid_decomposition, "forget of absent vertex");
        child.erase(it);
        if (child != nd.bag) fail(errc::invalid_decomposition, "forget bag mismatch");
        break;
      }
      case nice_kind::join:
        if (nd.left < 0 || nd.right < 0) fail(errc::invalid_decomposition, "join needs two children");
        if (ntd.nodes[nd.left].bag != nd.bag || ntd.nodes[nd.right].bag != nd.bag)
          fail(errc::invalid_decomposition, "join children bags differ");
        break;
    }
  }
  validate(td, g);
}

}  // namespace tsd::tw
