#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsd/gen/modulator.hpp"
#include "tsd/gen/sources.hpp"
#include "tsd/instance.hpp"
#include "tsd/logic/builtins.hpp"

namespace tsd::gen {

// Bandwidth ladder construction. Colors: C1 purple (connected rail), C2
// yellow (demand), C3 gray (spacers), C4 teal (isolated rail), C5 brown
// (reservoir), C6 black (rung nodes), C7 orange (token-bearing).
//
// Rails are stored bottom-up: index = height. Vertex rails have 4*sigma*(t+1)
// nodes, arc rails 4*sigma*t; sub-ladders are numbered 1 (top) .. t(+1)
// (bottom), so sub-ladder i starts at height 4*sigma*(t-i) on arc rails and
// 4*sigma*(t+1-i) on vertex rails.
struct bandwidth_layout {
  arc_supply_instance source;  // after list padding
  long long sigma = 0;
  int t = 0;

  struct vgadget {
    std::vector<int> conn, iso;
    std::vector<std::array<int, 3>> rungs;  // per height, conn-side first
  };
  struct agadget {
    std::array<std::vector<int>, 2> rail;              // side 0 = from, 1 = to
    std::vector<std::array<int, 5>> rungs;             // per sub-ladder (index i-1)
    std::array<std::vector<int>, 2> black;             // per side, per sub-ladder
    std::array<std::vector<std::vector<int>>, 2> orange;  // per side, per sub-ladder, bottom-up
  };
  std::vector<vgadget> vg;
  std::vector<agadget> ag;
  std::vector<std::array<int, 2>> arc_type;  // type (0..3) at the from/to side
  std::vector<int> cross_orange;             // per graph node: linked orange (conn rail) or -1
  std::vector<int> cross_conn;               // per graph node: linked conn node (oranges) or -1

  long long vrail_len() const { return 4 * sigma * (t + 1); }
  long long arail_len() const { return 4 * sigma * t; }
};

struct bandwidth_result {
  discovery_instance inst;
  bandwidth_layout layout;
};

// sigma_override shrinks the ladder for desk-scale coherence tests; 0 keeps
// three times the sum of all integers. Lists are padded to equal length with
// copies of their first tuple.
inline bandwidth_result gen_bandwidth(const arc_supply_instance& input,
                                      long long sigma_override = 0) {
  input.validate();
  bandwidth_layout lay;
  lay.sigma = sigma_override > 0 ? sigma_override : 3 * input.sum_all();
  const long long sigma = lay.sigma;

  // pad supply lists with copies of the first tuple
  lay.source = input;
  size_t t = 1;
  for (const auto& a : input.arcs) t = std::max(t, a.pairs.size());
  for (auto& a : lay.source.arcs)
    while (a.pairs.size() < t) a.pairs.push_back(a.pairs.front());
  lay.t = static_cast<int>(t);
  const arc_supply_instance& pas = lay.source;

  // degree and scale sanity
  std::vector<int> degree(pas.num_vertices, 0);
  for (const auto& a : pas.arcs) {
    ++degree[a.from];
    ++degree[a.to];
  }
  for (int u = 0; u < pas.num_vertices; ++u) {
    if (degree[u] > 4)
      fail(errc::invalid_instance, "bandwidth construction needs degree <= 4");
    if (pas.demand[u] >= lay.vrail_len())
      fail(errc::invalid_instance, "sigma too small for the demands");
  }
  for (const auto& a : pas.arcs)
    for (auto [x, y] : a.pairs)
      if (x >= sigma || y >= sigma) fail(errc::invalid_instance, "sigma too small for supplies");

  const long long L = lay.vrail_len(), La = lay.arail_len();
  int next = 0;
  auto mk = [&]() { return next++; };
  std::vector<std::pair<int, int>> edges;
  std::vector<int> purple, yellow, gray, teal, brown, black, orange;

  // vertex gadgets
  for (int u = 0; u < pas.num_vertices; ++u) {
    bandwidth_layout::vgadget g;
    for (long long h = 0; h < L; ++h) {
      g.conn.push_back(mk());
      (h >= L - pas.demand[u] ? yellow : purple).push_back(g.conn.back());
    }
    for (long long h = 0; h < L; ++h) {
      g.iso.push_back(mk());
      (h < pas.demand[u] ? brown : teal).push_back(g.iso.back());
    }
    for (long long h = 0; h + 1 < L; ++h) {
      edges.push_back({g.conn[h], g.conn[h + 1]});
      edges.push_back({g.iso[h], g.iso[h + 1]});
    }
    for (long long h = 0; h < L; ++h) {
      std::array<int, 3> r{mk(), mk(), mk()};
      for (int s : r) gray.push_back(s);
      edges.push_back({g.conn[h], r[0]});
      edges.push_back({r[0], r[1]});
      edges.push_back({r[1], r[2]});
      edges.push_back({r[2], g.iso[h]});
      g.rungs.push_back(r);
    }
    lay.vg.push_back(std::move(g));
  }

  // arc gadgets
  for (const auto& a : pas.arcs) {
    bandwidth_layout::agadget g;
    for (int side = 0; side < 2; ++side) {
      g.black[side].assign(lay.t, -1);
      g.orange[side].assign(lay.t, {});
      for (long long h = 0; h < La; ++h) g.rail[side].push_back(mk());
      for (long long h = 0; h + 1 < La; ++h)
        edges.push_back({g.rail[side][h], g.rail[side][h + 1]});
      for (int i = 1; i <= lay.t; ++i) {
        long long hb = 4 * sigma * (lay.t - i);
        g.black[side][i - 1] = g.rail[side][hb];
        black.push_back(g.rail[side][hb]);
        long long count = side == 0 ? a.pairs[i - 1].first : a.pairs[i - 1].second;
        for (long long m = 1; m <= count; ++m) {
          g.orange[side][i - 1].push_back(g.rail[side][hb + 4 * m]);
          orange.push_back(g.rail[side][hb + 4 * m]);
        }
      }
      for (int node : g.rail[side]) {
        // everything not black or orange is a spacer
        bool special = false;
        for (int i = 0; i < lay.t; ++i) {
          if (node == g.black[side][i]) special = true;
          for (int o : g.orange[side][i])
            if (node == o) special = true;
        }
        if (!special) gray.push_back(node);
      }
    }
    for (int i = 1; i <= lay.t; ++i) {
      std::array<int, 5> r{mk(), mk(), mk(), mk(), mk()};
      for (int s : r) gray.push_back(s);
      edges.push_back({g.black[0][i - 1], r[0]});
      for (int s = 0; s + 1 < 5; ++s) edges.push_back({r[s], r[s + 1]});
      edges.push_back({r[4], g.black[1][i - 1]});
      g.rungs.push_back(r);
    }
    lay.ag.push_back(std::move(g));
  }

  // type assignment: incident arcs of u sorted by (other endpoint, arc id)
  lay.arc_type.assign(pas.arcs.size(), {-1, -1});
  for (int u = 0; u < pas.num_vertices; ++u) {
    std::vector<std::pair<int, std::pair<int, int>>> inc;  // (other, (arc, side))
    for (size_t ai = 0; ai < pas.arcs.size(); ++ai) {
      if (pas.arcs[ai].from == u) inc.push_back({pas.arcs[ai].to, {static_cast<int>(ai), 0}});
      if (pas.arcs[ai].to == u) inc.push_back({pas.arcs[ai].from, {static_cast<int>(ai), 1}});
    }
    std::sort(inc.begin(), inc.end());
    for (size_t idx = 0; idx < inc.size(); ++idx)
      lay.arc_type[inc[idx].second.first][inc[idx].second.second] = static_cast<int>(idx);
  }

  // cross edges between arc-gadget rails and the connected rails
  lay.cross_orange.assign(next, -1);
  lay.cross_conn.assign(next, -1);
  for (size_t ai = 0; ai < pas.arcs.size(); ++ai) {
    const auto& a = pas.arcs[ai];
    const int anchors[2] = {a.from, a.to};
    for (int side = 0; side < 2; ++side) {
      int u = anchors[side];
      int tau = lay.arc_type[ai][side];
      for (int i = 1; i <= lay.t; ++i) {
        long long h0 = L - 4 * sigma * i + tau;
        int conn0 = lay.vg[u].conn[h0];
        edges.push_back({lay.ag[ai].black[side][i - 1], conn0});
        const auto& oranges = lay.ag[ai].orange[side][i - 1];
        for (size_t m = 1; m <= oranges.size(); ++m) {
          long long hm = h0 + 4 * static_cast<long long>(m);
          if (hm >= L - pas.demand[u])
            fail(errc::invalid_instance, "sigma too small: cross edge would hit a demand node");
          int conn = lay.vg[u].conn[hm];
          edges.push_back({oranges[m - 1], conn});
          lay.cross_orange[conn] = oranges[m - 1];
          lay.cross_conn[oranges[m - 1]] = conn;
        }
      }
    }
  }

  bandwidth_result out;
  out.inst.graph = colored_graph(next);
  for (auto [x, y] : edges) out.inst.graph.add_edge(x, y);
  out.inst.graph.add_color("C1", purple);
  out.inst.graph.add_color("C2", yellow);
  out.inst.graph.add_color("C3", gray);
  out.inst.graph.add_color("C4", teal);
  out.inst.graph.add_color("C5", brown);
  out.inst.graph.add_color("C6", black);
  out.inst.graph.add_color("C7", orange);

  std::vector<int> tokens = orange;
  tokens.insert(tokens.end(), brown.begin(), brown.end());
  out.inst.start = configuration(std::move(tokens));
  long long delta = pas.total_demand();
  long long budget = delta;
  for (int u = 0; u < pas.num_vertices; ++u) budget += pas.demand[u] * (L - pas.demand[u]);
  if (budget > (1LL << 30)) fail(errc::search_space_too_large, "instance budget too large");
  out.inst.budget = static_cast<int>(budget);
  out.inst.formula_text = "builtin:B_BANDWIDTH";
  out.inst.phi = logic::builtin("B_BANDWIDTH");
  out.layout = std::move(lay);
  return out;
}

// Certificate: step 1 slides the chosen sub-ladders' tokens onto their purple
// cross neighbors; step 2 walks, per delivery, one reservoir token up to the
// teal mirror and the delivered token up to the farthest empty demand node.
inline transformation_sequence certificate_bandwidth(const bandwidth_result& gen,
                                                     const std::vector<int>& pick) {
  const auto& lay = gen.layout;
  if (!pas_solution_valid(lay.source, pick))
    fail(errc::invalid_source_solution, "selection does not meet the demands");
  const long long L = lay.vrail_len();
  transformation_sequence seq;

  // purples that received a token, per vertex, in arrival order
  std::vector<std::vector<int>> arrived(lay.source.num_vertices);
  for (size_t ai = 0; ai < lay.source.arcs.size(); ++ai) {
    const int anchors[2] = {lay.source.arcs[ai].from, lay.source.arcs[ai].to};
    for (int side = 0; side < 2; ++side) {
      for (int o : lay.ag[ai].orange[side][pick[ai]]) {
        int conn = lay.cross_conn[o];
        seq.push(o, conn);
        arrived[anchors[side]].push_back(conn);
      }
    }
  }
  for (int u = 0; u < lay.source.num_vertices; ++u) {
    const auto& g = lay.vg[u];
    long long delta = lay.source.demand[u];
    for (size_t j = 0; j < arrived[u].size(); ++j) {
      long long hg = -1;
      for (long long h = 0; h < L; ++h)
        if (g.conn[h] == arrived[u][j]) hg = h;
      // reservoir token (highest remaining) climbs to the teal mirror of hg
      long long hb = delta - 1 - static_cast<long long>(j);
      for (long long h = hb; h < hg; ++h) seq.push(g.iso[h], g.iso[h + 1]);
      // delivered token climbs to the farthest empty demand node
      long long hy = L - 1 - static_cast<long long>(j);
      for (long long h = hg; h < hy; ++h) seq.push(g.conn[h], g.conn[h + 1]);
    }
  }
  return seq;
}

// Procedural evaluation of the bandwidth conditions.
inline check_report check_conditions_b(const bandwidth_result& gen, const configuration& c) {
  const auto& lay = gen.layout;
  const auto& g = gen.inst.graph;
  auto fail_with = [](const std::string& s) { return check_report{false, s}; };

  for (vertex v = 0; v < g.n(); ++v) {
    bool gray_v = g.vertex_has_color("C3", v);
    bool purple_v = g.vertex_has_color("C1", v);
    bool brown_v = g.vertex_has_color("C5", v);
    if ((gray_v || purple_v || brown_v) && c.contains(v))
      return fail_with("B1: token on a gray, purple, or brown node");
    if (g.vertex_has_color("C2", v) && !c.contains(v))
      return fail_with("B2: empty demand node");
  }
  // B3: a teal node carries a token iff the orange across its rung is empty
  for (size_t u = 0; u < lay.vg.size(); ++u) {
    const auto& vg = lay.vg[u];
    for (size_t h = 0; h < vg.iso.size(); ++h) {
      int iso = vg.iso[h];
      if (!g.vertex_has_color("C4", iso)) continue;  // brown reservoir part
      int mirror = lay.cross_orange[vg.conn[h]];
      bool want = mirror >= 0 && !c.contains(mirror);
      if (c.contains(iso) != want) return fail_with("B3: rail neighbor condition violated");
    }
  }
  // B4: within one side rail of one sub-ladder the oranges are uniform
  for (const auto& ag : lay.ag)
    for (int side = 0; side < 2; ++side)
      for (const auto& oranges : ag.orange[side]) {
        int with = 0;
        for (int o : oranges)
          if (c.contains(o)) ++with;
        if (with != 0 && with != static_cast<int>(oranges.size()))
          return fail_with("B4: mixed oranges on one sub-ladder rail");
      }
  // B5: per arc gadget exactly one sub-ladder whose two bottom oranges are
  // empty, and no other rung-adjacent orange is empty
  for (size_t ai = 0; ai < lay.ag.size(); ++ai) {
    const auto& ag = lay.ag[ai];
    std::vector<std::pair<int, int>> empty_firsts;  // (sub-ladder, side)
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < lay.t; ++i) {
        if (ag.orange[side][i].empty()) continue;
        if (!c.contains(ag.orange[side][i].front())) empty_firsts.push_back({i, side});
      }
    if (empty_firsts.size() != 2)
      return fail_with("B5: arc " + std::to_string(ai) + " has " +
                       std::to_string(empty_firsts.size()) + " emptied rung oranges");
    if (empty_firsts[0].first != empty_firsts[1].first ||
        empty_firsts[0].second == empty_firsts[1].second)
      return fail_with("B5: emptied rung oranges are not a matched sub-ladder pair");
  }
  return {};
}

// The proof's segment ordering; valid iff its stretch is within 66 kappa.
inline witness_report witness_bandwidth_order(const bandwidth_result& gen) {
  const auto& lay = gen.layout;
  const long long sigma = lay.sigma;
  const long long L = lay.vrail_len(), La = lay.arail_len();
  witness_report rep;
  rep.bound = 66LL * lay.source.size_parameter();

  std::vector<int> position(gen.inst.graph.n(), -1);
  int pos = 0;
  auto place = [&](int v) {
    if (position[v] == -1) position[v] = pos++;
  };
  const long long levels = sigma * static_cast<long long>(lay.t + 1);
  for (long long level = 1; level <= levels; ++level) {
    for (const auto& vg : lay.vg) {
      for (long long h = L - 4 * level; h < L - 4 * (level - 1); ++h) {
        place(vg.conn[h]);
        for (int s : vg.rungs[h]) place(s);
        place(vg.iso[h]);
      }
    }
    if (level <= sigma * lay.t) {
      for (const auto& ag : lay.ag) {
        for (int side = 0; side < 2; ++side)
          for (long long h = La - 4 * level; h < La - 4 * (level - 1); ++h)
            place(ag.rail[side][h]);
        for (int i = 1; i <= lay.t; ++i)
          if (level == sigma * static_cast<long long>(i))
            for (int s : ag.rungs[i - 1]) place(s);
      }
    }
  }
  if (pos != gen.inst.graph.n()) {
    rep.valid = false;
    rep.detail = "ordering missed vertices";
    return rep;
  }
  rep.witness.assign(position.begin(), position.end());
  long long stretch = 0;
  for (auto [u, v] : gen.inst.graph.edges())
    stretch = std::max<long long>(stretch, std::abs(position[u] - position[v]));
  rep.measured = stretch;
  rep.valid = stretch <= rep.bound;
  rep.detail = "stretch " + std::to_string(stretch) + " vs bound " + std::to_string(rep.bound);
  return rep;
}

}  // namespace tsd::gen
