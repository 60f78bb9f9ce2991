#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tsd/gen/sources.hpp"
#include "tsd/instance.hpp"
#include "tsd/logic/builtins.hpp"

namespace tsd::gen {

// Shared layout of the stars / paths constructions. Colors: C1 purple vertex
// roots (stars only), C2 teal vertex-block nodes, C3 black edge roots (stars
// only), C4 gray edge-block nodes, C5 green connectors.
struct modulator_layout {
  bool stars = true;
  mcc_instance source;

  std::vector<int> block_vertex;              // per class
  std::vector<int> block_edge;                // per class pair (lex order)
  std::vector<std::array<int, 4>> connectors; // per pair: index_i, remainder_i, index_j, remainder_j

  struct vgadget {
    int cls = 0;
    int src = 0;  // source vertex id
    int root = -1;
    std::vector<std::vector<int>> groups;  // per other class (ascending), n nodes each
  };
  struct egadget {
    int pair = 0;
    int u = 0, v = 0;  // source endpoints, u in the smaller class
    int root = -1;
    std::vector<int> unodes, vnodes;
  };
  std::vector<vgadget> vgadgets;  // indexed class * n + (iota-1)
  std::vector<egadget> egadgets;

  int kappa() const { return source.kappa; }
  int nsize() const { return source.nsize; }

  int pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // pairs (0,1), (0,2), ..., (0,k-1), (1,2), ...
    return i * kappa() - i * (i + 1) / 2 + (j - i - 1);
  }
  int group_of(int i, int j) const { return j < i ? j : j - 1; }

  const vgadget& gadget_of(int src_vertex) const {
    return vgadgets[source.cls(src_vertex) * nsize() + source.iota(src_vertex) - 1];
  }
};

struct modulator_result {
  discovery_instance inst;
  modulator_layout layout;
};

namespace detail {

inline modulator_result gen_modulator(const mcc_instance& mcc, bool stars) {
  mcc.validate();
  const int kappa = mcc.kappa, n = mcc.nsize;
  modulator_layout lay;
  lay.stars = stars;
  lay.source = mcc;

  std::vector<std::pair<int, int>> edges;
  int next = 0;
  auto mk = [&]() { return next++; };

  std::vector<int> purple, teal, black, gray, green;

  // vertex blocks
  for (int i = 0; i < kappa; ++i) {
    int bi = mk();
    teal.push_back(bi);
    lay.block_vertex.push_back(bi);
    for (int vi = 0; vi < n; ++vi) {
      modulator_layout::vgadget g;
      g.cls = i;
      g.src = i * n + vi;
      std::vector<int> all_nodes;
      if (stars) {
        g.root = mk();
        purple.push_back(g.root);
        edges.push_back({bi, g.root});
      }
      for (int other = 0; other < kappa - 1; ++other) {
        std::vector<int> grp;
        for (int pos = 0; pos < n; ++pos) {
          int node = mk();
          grp.push_back(node);
          all_nodes.push_back(node);
          if (stars) edges.push_back({g.root, node});
        }
        g.groups.push_back(std::move(grp));
      }
      if (!stars) {
        for (size_t t = 0; t + 1 < all_nodes.size(); ++t)
          edges.push_back({all_nodes[t], all_nodes[t + 1]});
        for (int node : all_nodes) edges.push_back({bi, node});
      }
      lay.vgadgets.push_back(std::move(g));
    }
  }

  // connectors + edge blocks per pair
  for (int i = 0; i < kappa; ++i)
    for (int j = i + 1; j < kappa; ++j) {
      std::array<int, 4> conn{mk(), mk(), mk(), mk()};
      for (int c : conn) green.push_back(c);
      lay.connectors.push_back(conn);
      int bij = mk();
      gray.push_back(bij);
      lay.block_edge.push_back(bij);
    }

  for (int i = 0; i < kappa; ++i)
    for (int j = i + 1; j < kappa; ++j) {
      int p = lay.pair_index(i, j);
      int bij = lay.block_edge[p];
      for (auto [a, b] : mcc.edges) {
        int u = std::min(a, b), v = std::max(a, b);
        if (mcc.cls(u) != i || mcc.cls(v) != j) continue;
        modulator_layout::egadget e;
        e.pair = p;
        e.u = u;
        e.v = v;
        if (stars) {
          e.root = mk();
          black.push_back(e.root);
          edges.push_back({bij, e.root});
        }
        for (int pos = 0; pos < n; ++pos) {
          e.unodes.push_back(mk());
          if (stars) edges.push_back({e.root, e.unodes.back()});
        }
        for (int pos = 0; pos < n; ++pos) {
          e.vnodes.push_back(mk());
          if (stars) edges.push_back({e.root, e.vnodes.back()});
        }
        if (!stars) {
          std::vector<int> all = e.unodes;
          all.insert(all.end(), e.vnodes.begin(), e.vnodes.end());
          for (size_t t = 0; t + 1 < all.size(); ++t) edges.push_back({all[t], all[t + 1]});
          for (int node : all) edges.push_back({bij, node});
        }
        // connector wiring encodes the endpoint indices
        int x = mcc.iota(u), y = mcc.iota(v);
        for (int pos = 0; pos < n; ++pos) {
          edges.push_back({pos < x ? lay.connectors[p][0] : lay.connectors[p][1], e.unodes[pos]});
          edges.push_back({pos < y ? lay.connectors[p][2] : lay.connectors[p][3], e.vnodes[pos]});
        }
        lay.egadgets.push_back(std::move(e));
      }
    }

  // vertex-gadget connector wiring
  for (const auto& g : lay.vgadgets) {
    int i = g.cls;
    int x = mcc.iota(g.src);
    for (int j = 0; j < kappa; ++j) {
      if (j == i) continue;
      int p = lay.pair_index(i, j);
      int idx_conn = i < j ? lay.connectors[p][0] : lay.connectors[p][2];
      int rem_conn = i < j ? lay.connectors[p][1] : lay.connectors[p][3];
      const auto& grp = g.groups[lay.group_of(i, j)];
      for (int pos = 0; pos < n; ++pos)
        edges.push_back({pos < x ? idx_conn : rem_conn, grp[pos]});
    }
  }

  modulator_result out;
  out.inst.graph = colored_graph(next);
  for (auto [a, b] : edges) out.inst.graph.add_edge(a, b);
  if (!purple.empty()) out.inst.graph.add_color("C1", purple);
  out.inst.graph.add_color("C2", teal);
  if (!black.empty()) out.inst.graph.add_color("C3", black);
  out.inst.graph.add_color("C4", gray);
  out.inst.graph.add_color("C5", green);

  std::vector<int> tokens;
  for (const auto& g : lay.vgadgets)
    for (const auto& grp : g.groups)
      for (int node : grp) tokens.push_back(node);
  out.inst.start = configuration(std::move(tokens));
  out.inst.budget = 2 * n * kappa * (kappa - 1);
  out.inst.formula_text = stars ? "builtin:S_STARS" : "builtin:P_PATHS";
  out.inst.phi = logic::builtin(stars ? "S_STARS" : "P_PATHS");
  out.layout = std::move(lay);
  return out;
}

}  // namespace detail

inline modulator_result gen_stars(const mcc_instance& mcc) {
  return detail::gen_modulator(mcc, true);
}
inline modulator_result gen_paths(const mcc_instance& mcc) {
  return detail::gen_modulator(mcc, false);
}

// Constructive certificate from a multicolored clique: per class pair, the two
// selected vertex-gadgets empty one group each through their connectors into
// the matching edge-gadget, two slides per token.
inline transformation_sequence certificate_modulator(const modulator_result& gen,
                                                     const std::vector<int>& clique) {
  const auto& lay = gen.layout;
  if (!mcc_solution_valid(lay.source, clique))
    fail(errc::invalid_source_solution, "not a multicolored clique of the source");
  transformation_sequence seq;
  const int n = lay.nsize();
  for (int i = 0; i < lay.kappa(); ++i)
    for (int j = i + 1; j < lay.kappa(); ++j) {
      int u = clique[i], v = clique[j];
      const modulator_layout::egadget* eg = nullptr;
      for (const auto& e : lay.egadgets)
        if (e.pair == lay.pair_index(i, j) && e.u == u && e.v == v) eg = &e;
      if (!eg) fail(errc::invalid_source_solution, "clique edge has no gadget");
      int p = lay.pair_index(i, j);
      int x = lay.source.iota(u), y = lay.source.iota(v);
      const auto& gu = lay.gadget_of(u).groups[lay.group_of(i, j)];
      const auto& gv = lay.gadget_of(v).groups[lay.group_of(j, i)];
      for (int pos = 0; pos < n; ++pos) {
        int conn = pos < x ? lay.connectors[p][0] : lay.connectors[p][1];
        seq.push(gu[pos], conn);
        seq.push(conn, eg->unodes[pos]);
      }
      for (int pos = 0; pos < n; ++pos) {
        int conn = pos < y ? lay.connectors[p][2] : lay.connectors[p][3];
        seq.push(gv[pos], conn);
        seq.push(conn, eg->vnodes[pos]);
      }
    }
  return seq;
}

struct check_report {
  bool ok = true;
  std::string violation;
};

namespace detail {

inline bool all_tokens(const configuration& c, const std::vector<int>& nodes, bool want) {
  for (int v : nodes)
    if (c.contains(v) != want) return false;
  return true;
}

}  // namespace detail

// Procedural evaluation of the stars conditions.
inline check_report check_conditions_s(const modulator_result& gen, const configuration& c) {
  const auto& lay = gen.layout;
  auto fail_with = [](const std::string& s) { return check_report{false, s}; };
  for (int v : lay.block_vertex)
    if (c.contains(v)) return fail_with("S1: token on vertex block node");
  for (int v : lay.block_edge)
    if (c.contains(v)) return fail_with("S1: token on edge block node");
  for (const auto& conn : lay.connectors)
    for (int v : conn)
      if (c.contains(v)) return fail_with("S1: token on connector node");
  for (const auto& g : lay.vgadgets)
    if (g.root >= 0 && c.contains(g.root)) return fail_with("S1: token on vertex root");
  for (const auto& e : lay.egadgets)
    if (e.root >= 0 && c.contains(e.root)) return fail_with("S1: token on edge root");

  for (size_t p = 0; p < lay.block_edge.size(); ++p) {
    int full_count = 0;
    for (const auto& e : lay.egadgets) {
      if (e.pair != static_cast<int>(p)) continue;
      std::vector<int> leaves = e.unodes;
      leaves.insert(leaves.end(), e.vnodes.begin(), e.vnodes.end());
      if (detail::all_tokens(c, leaves, true))
        ++full_count;
      else if (!detail::all_tokens(c, leaves, false))
        return fail_with("S3: edge gadget neither full nor empty in pair " + std::to_string(p));
    }
    if (full_count != 1)
      return fail_with("S3: pair " + std::to_string(p) + " has " + std::to_string(full_count) +
                       " filled gadgets");
  }
  for (int i = 0; i < lay.kappa(); ++i) {
    int empty_count = 0;
    for (int vi = 0; vi < lay.nsize(); ++vi) {
      const auto& g = lay.vgadgets[i * lay.nsize() + vi];
      std::vector<int> leaves;
      for (const auto& grp : g.groups) leaves.insert(leaves.end(), grp.begin(), grp.end());
      if (detail::all_tokens(c, leaves, false))
        ++empty_count;
      else if (!detail::all_tokens(c, leaves, true))
        return fail_with("S2: vertex gadget neither full nor empty in block " + std::to_string(i));
    }
    if (empty_count != 1)
      return fail_with("S2: block " + std::to_string(i) + " has " + std::to_string(empty_count) +
                       " released gadgets");
  }
  return {};
}

// Procedural evaluation of the paths conditions (P4 is the literal
// distance-two test inside a gadget path).
inline check_report check_conditions_p(const modulator_result& gen, const configuration& c) {
  const auto& lay = gen.layout;
  auto fail_with = [](const std::string& s) { return check_report{false, s}; };
  for (int v : lay.block_vertex)
    if (c.contains(v)) return fail_with("P1: token on vertex block node");
  for (int v : lay.block_edge)
    if (c.contains(v)) return fail_with("P1: token on edge block node");
  for (const auto& conn : lay.connectors)
    for (int v : conn)
      if (c.contains(v)) return fail_with("P1: token on connector node");

  auto gadget_path = [&](const modulator_layout::vgadget& g) {
    std::vector<int> nodes;
    for (const auto& grp : g.groups) nodes.insert(nodes.end(), grp.begin(), grp.end());
    return nodes;
  };
  auto p4_ok = [&](const std::vector<int>& path) {
    const int len = static_cast<int>(path.size());
    for (int a = 0; a < len; ++a) {
      bool all_near = true;
      for (int d = -2; d <= 2; ++d) {
        if (d == 0 || a + d < 0 || a + d >= len) continue;
        if (!c.contains(path[a + d])) all_near = false;
      }
      if (c.contains(path[a]) != all_near) return false;
    }
    return true;
  };

  for (size_t p = 0; p < lay.block_edge.size(); ++p) {
    bool has_token = false;
    for (const auto& e : lay.egadgets) {
      if (e.pair != static_cast<int>(p)) continue;
      std::vector<int> path = e.unodes;
      path.insert(path.end(), e.vnodes.begin(), e.vnodes.end());
      if (!p4_ok(path)) return fail_with("P4: edge gadget not uniform");
      for (int node : path)
        if (c.contains(node)) has_token = true;
    }
    if (!has_token) return fail_with("P3: pair " + std::to_string(p) + " token-free");
  }
  for (int i = 0; i < lay.kappa(); ++i) {
    bool has_empty_node = false;
    for (int vi = 0; vi < lay.nsize(); ++vi) {
      auto path = gadget_path(lay.vgadgets[i * lay.nsize() + vi]);
      if (!p4_ok(path)) return fail_with("P4: vertex gadget not uniform");
      for (int node : path)
        if (!c.contains(node)) has_empty_node = true;
    }
    if (!has_empty_node) return fail_with("P2: block " + std::to_string(i) + " fully occupied");
  }
  return {};
}

inline check_report check_conditions_modulator(const modulator_result& gen,
                                               const configuration& c) {
  return gen.layout.stars ? check_conditions_s(gen, c) : check_conditions_p(gen, c);
}

// Exact structured decision: choose one vertex-gadget per block, demand a
// matching edge-gadget per pair. Equals the source brute force.
inline bool decide_modulator(const modulator_result& gen) {
  const auto& lay = gen.layout;
  std::vector<int> pick(lay.kappa(), 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < lay.kappa() && ok; ++i)
      for (int j = i + 1; j < lay.kappa() && ok; ++j) {
        int u = i * lay.nsize() + pick[i];
        int v = j * lay.nsize() + pick[j];
        bool found = false;
        for (const auto& e : lay.egadgets)
          if (e.pair == lay.pair_index(i, j) && e.u == u && e.v == v) found = true;
        ok = found;
      }
    if (ok) return true;
    int idx = lay.kappa() - 1;
    while (idx >= 0 && pick[idx] == lay.nsize() - 1) pick[idx--] = 0;
    if (idx < 0) return false;
    ++pick[idx];
  }
}

struct witness_report {
  std::vector<int> witness;
  bool valid = false;
  long long measured = 0;  // components scanned / stretch, family specific
  long long bound = 0;
  std::string detail;
};

// The explicit modulator from the proof: all connectors and block nodes.
// Deleting it must leave disjoint stars (resp. paths).
inline witness_report witness_modulator(const modulator_result& gen) {
  const auto& lay = gen.layout;
  witness_report rep;
  for (int v : lay.block_vertex) rep.witness.push_back(v);
  for (int v : lay.block_edge) rep.witness.push_back(v);
  for (const auto& conn : lay.connectors)
    for (int v : conn) rep.witness.push_back(v);
  long long kappa = lay.kappa();
  rep.bound = 5 * (kappa * (kappa - 1) / 2) + kappa;
  rep.measured = static_cast<long long>(rep.witness.size());

  const colored_graph& g = gen.inst.graph;
  std::vector<uint8_t> removed(g.n(), 0);
  for (int v : rep.witness) removed[v] = 1;
  std::vector<int> comp(g.n(), -1);
  int ncomp = 0;
  for (vertex s = 0; s < g.n(); ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    std::vector<vertex> stack{s}, members;
    comp[s] = ncomp;
    while (!stack.empty()) {
      vertex cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (vertex w : g.neighbors(cur))
        if (!removed[w] && comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
    // component must be a star (resp. path)
    int edges_inside = 0, maxdeg = 0;
    for (vertex v : members) {
      int deg = 0;
      for (vertex w : g.neighbors(v))
        if (!removed[w]) ++deg;
      maxdeg = std::max(maxdeg, deg);
      edges_inside += deg;
    }
    edges_inside /= 2;
    bool tree = edges_inside == static_cast<int>(members.size()) - 1;
    bool shape_ok;
    if (lay.stars) {
      int centers = 0;
      for (vertex v : members) {
        int deg = 0;
        for (vertex w : g.neighbors(v))
          if (!removed[w]) ++deg;
        if (deg == static_cast<int>(members.size()) - 1) ++centers;
      }
      shape_ok = tree && (members.size() <= 2 || centers >= 1) && maxdeg >= 0;
      if (members.size() > 2) {
        // leaves must have degree one
        for (vertex v : members) {
          int deg = 0;
          for (vertex w : g.neighbors(v))
            if (!removed[w]) ++deg;
          if (deg != 1 && deg != static_cast<int>(members.size()) - 1) shape_ok = false;
        }
      }
    } else {
      shape_ok = tree && maxdeg <= 2;
    }
    if (!shape_ok) {
      rep.valid = false;
      rep.detail = "component " + std::to_string(ncomp - 1) + " is not a " +
                   (lay.stars ? "star" : "path");
      return rep;
    }
  }
  rep.valid = rep.measured <= rep.bound;
  rep.detail = "modulator size " + std::to_string(rep.measured) + " <= bound " +
               std::to_string(rep.bound) + ", remainder is a disjoint union of " +
               (lay.stars ? "stars" : "paths");
  return rep;
}

}  // namespace tsd::gen
