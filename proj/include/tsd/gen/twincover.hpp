#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsd/gen/modulator.hpp"
#include "tsd/gen/sources.hpp"
#include "tsd/instance.hpp"
#include "tsd/logic/builtins.hpp"

namespace tsd::gen {

// Twin-cover construction. Colors: C1 purple vertex nodes, C2 black arc
// nodes, C3 yellow demand cliques, C4 orange supply nodes, C5 teal index
// nodes, C6 brown reservoir cliques.
struct twincover_layout {
  arc_supply_instance source;
  long long sigma = 0;

  std::vector<int> vertex_node;                 // per source vertex
  std::vector<std::array<int, 2>> arc_node;     // per arc: u-side, v-side
  std::vector<std::vector<int>> demand_nodes;   // per source vertex
  std::vector<std::vector<int>> reservoir;      // per arc

  struct supply_clique {
    std::vector<int> orange, teal;
  };
  // [arc][pair index][side: 0 = u, 1 = v]
  std::vector<std::vector<std::array<supply_clique, 2>>> supply;
};

struct twincover_result {
  discovery_instance inst;
  twincover_layout layout;
};

// sigma_override shrinks the numeric scale for coherence tests on small
// graphs; 0 keeps the construction's value (twice the sum of all integers).
inline twincover_result gen_twincover(const arc_supply_instance& pas, long long sigma_override = 0) {
  pas.validate();
  twincover_layout lay;
  lay.source = pas;
  lay.sigma = sigma_override > 0 ? sigma_override : 2 * pas.sum_all();
  const long long sigma = lay.sigma;
  for (const auto& a : pas.arcs)
    for (size_t i = 0; i < a.pairs.size(); ++i)
      if (sigma * sigma < sigma * static_cast<long long>(i))
        fail(errc::invalid_instance, "sigma too small for the supply list");

  int next = 0;
  auto mk = [&]() { return next++; };
  std::vector<std::pair<int, int>> edges;
  auto clique_of = [&](const std::vector<int>& nodes) {
    for (size_t a = 0; a < nodes.size(); ++a)
      for (size_t b = a + 1; b < nodes.size(); ++b) edges.push_back({nodes[a], nodes[b]});
  };

  std::vector<int> purple, black, yellow, orange, teal, brown;

  for (int u = 0; u < pas.num_vertices; ++u) {
    lay.vertex_node.push_back(mk());
    purple.push_back(lay.vertex_node.back());
  }
  for (const auto& a : pas.arcs) {
    (void)a;
    int ua = mk(), va = mk();
    black.push_back(ua);
    black.push_back(va);
    lay.arc_node.push_back({ua, va});
  }
  for (int u = 0; u < pas.num_vertices; ++u) {
    std::vector<int> dc;
    for (long long d = 0; d < pas.demand[u]; ++d) {
      dc.push_back(mk());
      yellow.push_back(dc.back());
      edges.push_back({lay.vertex_node[u], dc.back()});
    }
    clique_of(dc);
    lay.demand_nodes.push_back(std::move(dc));
  }
  for (size_t ai = 0; ai < pas.arcs.size(); ++ai) {
    std::vector<int> rc;
    for (long long t = 0; t < sigma * sigma; ++t) {
      rc.push_back(mk());
      brown.push_back(rc.back());
      edges.push_back({lay.arc_node[ai][0], rc.back()});
      edges.push_back({lay.arc_node[ai][1], rc.back()});
    }
    clique_of(rc);
    lay.reservoir.push_back(std::move(rc));

    const auto& a = pas.arcs[ai];
    std::vector<std::array<twincover_layout::supply_clique, 2>> per_pair;
    for (size_t i = 0; i < a.pairs.size(); ++i) {
      std::array<twincover_layout::supply_clique, 2> sides;
      const long long counts[2] = {a.pairs[i].first, a.pairs[i].second};
      const long long index_nodes[2] = {sigma * sigma - sigma * static_cast<long long>(i),
                                        sigma * static_cast<long long>(i)};
      const int anchors[2] = {a.from, a.to};
      for (int side = 0; side < 2; ++side) {
        std::vector<int> all;
        for (long long t = 0; t < counts[side]; ++t) {
          int node = mk();
          sides[side].orange.push_back(node);
          orange.push_back(node);
          all.push_back(node);
        }
        for (long long t = 0; t < index_nodes[side]; ++t) {
          int node = mk();
          sides[side].teal.push_back(node);
          teal.push_back(node);
          all.push_back(node);
        }
        clique_of(all);
        for (int node : all) {
          edges.push_back({lay.vertex_node[anchors[side]], node});
          edges.push_back({lay.arc_node[ai][side], node});
        }
      }
      per_pair.push_back(std::move(sides));
    }
    lay.supply.push_back(std::move(per_pair));
  }

  twincover_result out;
  out.inst.graph = colored_graph(next);
  for (auto [a, b] : edges) out.inst.graph.add_edge(a, b);
  out.inst.graph.add_color("C1", purple);
  out.inst.graph.add_color("C2", black);
  out.inst.graph.add_color("C3", yellow);
  out.inst.graph.add_color("C4", orange);
  out.inst.graph.add_color("C5", teal);
  out.inst.graph.add_color("C6", brown);

  std::vector<int> tokens = orange;
  tokens.insert(tokens.end(), brown.begin(), brown.end());
  out.inst.start = configuration(std::move(tokens));
  long long delta = pas.total_demand();
  long long budget = 2 * delta + static_cast<long long>(pas.arcs.size()) * 2 * sigma * sigma;
  if (budget > (1LL << 30)) fail(errc::search_space_too_large, "instance budget too large");
  out.inst.budget = static_cast<int>(budget);
  out.inst.formula_text = "builtin:T_TWINCOVER";
  out.inst.phi = logic::builtin("T_TWINCOVER");
  out.layout = std::move(lay);
  return out;
}

// Certificate from a pair selection: reservoirs fill the chosen index nodes
// through the arc nodes, then the chosen supplies fill the demand cliques
// through the vertex nodes; every moved token slides exactly twice.
inline transformation_sequence certificate_twincover(const twincover_result& gen,
                                                     const std::vector<int>& pick) {
  const auto& lay = gen.layout;
  if (!pas_solution_valid(lay.source, pick))
    fail(errc::invalid_source_solution, "selection does not meet the demands");
  transformation_sequence seq;
  for (size_t ai = 0; ai < lay.source.arcs.size(); ++ai) {
    const auto& chosen = lay.supply[ai][pick[ai]];
    size_t cursor = 0;
    for (int side = 0; side < 2; ++side)
      for (int tealnode : chosen[side].teal) {
        seq.push(lay.reservoir[ai][cursor++], lay.arc_node[ai][side]);
        seq.push(lay.arc_node[ai][side], tealnode);
      }
  }
  std::vector<size_t> demand_cursor(lay.source.num_vertices, 0);
  for (size_t ai = 0; ai < lay.source.arcs.size(); ++ai) {
    const auto& chosen = lay.supply[ai][pick[ai]];
    const int anchors[2] = {lay.source.arcs[ai].from, lay.source.arcs[ai].to};
    for (int side = 0; side < 2; ++side)
      for (int orangenode : chosen[side].orange) {
        int u = anchors[side];
        seq.push(orangenode, lay.vertex_node[u]);
        seq.push(lay.vertex_node[u], lay.demand_nodes[u][demand_cursor[u]++]);
      }
  }
  return seq;
}

// Procedural evaluation of the twin-cover conditions.
inline check_report check_conditions_t(const twincover_result& gen, const configuration& c) {
  const auto& lay = gen.layout;
  auto fail_with = [](const std::string& s) { return check_report{false, s}; };
  for (const auto& dc : lay.demand_nodes)
    for (int v : dc)
      if (!c.contains(v)) return fail_with("T1: empty demand node");
  for (const auto& rc : lay.reservoir)
    for (int v : rc)
      if (c.contains(v)) return fail_with("T2: token on reservoir node");
  for (size_t ai = 0; ai < lay.supply.size(); ++ai)
    for (int side = 0; side < 2; ++side) {
      int flipped = 0;
      for (const auto& pair : lay.supply[ai]) {
        const auto& sc = pair[side];
        if (sc.orange.empty()) continue;  // only orange-containing cliques participate
        bool orange_full = detail::all_tokens(c, sc.orange, true);
        bool orange_empty = detail::all_tokens(c, sc.orange, false);
        bool teal_full = detail::all_tokens(c, sc.teal, true);
        bool teal_empty = detail::all_tokens(c, sc.teal, false);
        if (orange_empty && teal_full)
          ++flipped;
        else if (!(orange_full && teal_empty))
          return fail_with("T3: supply clique neither flipped nor kept (arc " +
                           std::to_string(ai) + ")");
      }
      if (flipped != 1)
        return fail_with("T3: arc " + std::to_string(ai) + " side " + std::to_string(side) +
                         " has " + std::to_string(flipped) + " flipped cliques");
    }
  for (int v : lay.vertex_node)
    if (c.contains(v)) return fail_with("T4: token on vertex node");
  for (const auto& an : lay.arc_node)
    for (int v : an)
      if (c.contains(v)) return fail_with("T4: token on arc node");
  return {};
}

// Cover = vertex nodes + arc nodes; removal must leave disjoint cliques of
// mutual twins, within kappa + 2 C(kappa, 2).
inline witness_report witness_twincover(const twincover_result& gen) {
  const auto& lay = gen.layout;
  witness_report rep;
  for (int v : lay.vertex_node) rep.witness.push_back(v);
  for (const auto& an : lay.arc_node) {
    rep.witness.push_back(an[0]);
    rep.witness.push_back(an[1]);
  }
  long long kappa = lay.source.size_parameter();
  rep.bound = kappa + 2 * (kappa * (kappa - 1) / 2);
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
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a + 1; b < members.size(); ++b) {
        if (!g.has_edge(members[a], members[b])) {
          rep.valid = false;
          rep.detail = "remainder component is not a clique";
          return rep;
        }
        // clique members must be twins in the whole graph
        std::vector<vertex> na, nb;
        for (vertex w : g.neighbors(members[a]))
          if (w != members[b]) na.push_back(w);
        for (vertex w : g.neighbors(members[b]))
          if (w != members[a]) nb.push_back(w);
        if (na != nb) {
          rep.valid = false;
          rep.detail = "clique vertices are not twins";
          return rep;
        }
      }
  }
  rep.valid = rep.measured <= rep.bound;
  rep.detail = "cover size " + std::to_string(rep.measured) + " <= bound " +
               std::to_string(rep.bound) + ", remainder is disjoint twin cliques";
  return rep;
}

}  // namespace tsd::gen
