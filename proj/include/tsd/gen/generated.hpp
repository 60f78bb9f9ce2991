#pragma once

#include <fstream>
#include <optional>
#include <string>

#include "tsd/gen/bandwidth.hpp"
#include "tsd/gen/modulator.hpp"
#include "tsd/gen/twincover.hpp"
#include "tsd/io.hpp"

namespace tsd::gen {

// A generated hardness instance together with its construction metadata. The
// provenance block carries the source instance and the node role tables; the
// generators are deterministic, so loading regenerates the layout from the
// source and verifies it reproduces the stored instance bit for bit.
struct generated_instance {
  std::string family;  // stars | paths | twincover | bandwidth
  std::optional<modulator_result> mod;
  std::optional<twincover_result> tc;
  std::optional<bandwidth_result> bw;
  long long sigma_override = 0;

  const discovery_instance& inst() const {
    if (mod) return mod->inst;
    if (tc) return tc->inst;
    return bw->inst;
  }
};

namespace detail {

inline json roles_modulator(const modulator_layout& lay) {
  json j;
  j["block_vertex"] = lay.block_vertex;
  j["block_edge"] = lay.block_edge;
  json conns = json::array();
  for (const auto& c : lay.connectors) conns.push_back({c[0], c[1], c[2], c[3]});
  j["connectors"] = conns;
  json vgs = json::array();
  for (const auto& g : lay.vgadgets) {
    json gj;
    gj["class"] = g.cls;
    gj["source_vertex"] = g.src;
    if (g.root >= 0) gj["root"] = g.root;
    gj["groups"] = g.groups;
    vgs.push_back(gj);
  }
  j["vertex_gadgets"] = vgs;
  json egs = json::array();
  for (const auto& e : lay.egadgets) {
    json ej;
    ej["pair"] = e.pair;
    ej["u"] = e.u;
    ej["v"] = e.v;
    if (e.root >= 0) ej["root"] = e.root;
    ej["u_nodes"] = e.unodes;
    ej["v_nodes"] = e.vnodes;
    egs.push_back(ej);
  }
  j["edge_gadgets"] = egs;
  return j;
}

inline json roles_twincover(const twincover_layout& lay) {
  json j;
  j["sigma"] = lay.sigma;
  j["vertex_nodes"] = lay.vertex_node;
  json arcs = json::array();
  for (size_t ai = 0; ai < lay.arc_node.size(); ++ai) {
    json aj;
    aj["arc_nodes"] = {lay.arc_node[ai][0], lay.arc_node[ai][1]};
    aj["reservoir"] = lay.reservoir[ai];
    json pairs = json::array();
    for (const auto& pair : lay.supply[ai]) {
      json pj;
      pj["u_supply"] = {{"orange", pair[0].orange}, {"index", pair[0].teal}};
      pj["v_supply"] = {{"orange", pair[1].orange}, {"index", pair[1].teal}};
      pairs.push_back(pj);
    }
    aj["supply_cliques"] = pairs;
    arcs.push_back(aj);
  }
  j["arcs"] = arcs;
  j["demand_cliques"] = lay.demand_nodes;
  return j;
}

inline json roles_bandwidth(const bandwidth_layout& lay) {
  json j;
  j["sigma"] = lay.sigma;
  j["t"] = lay.t;
  json vgs = json::array();
  for (const auto& g : lay.vg) {
    json gj;
    gj["connected_rail"] = g.conn;  // bottom-up
    gj["isolated_rail"] = g.iso;
    vgs.push_back(gj);
  }
  j["vertex_gadgets"] = vgs;
  json ags = json::array();
  for (size_t ai = 0; ai < lay.ag.size(); ++ai) {
    json aj;
    aj["from_rail"] = lay.ag[ai].rail[0];
    aj["to_rail"] = lay.ag[ai].rail[1];
    aj["types"] = {lay.arc_type[ai][0], lay.arc_type[ai][1]};
    ags.push_back(aj);
  }
  j["arc_gadgets"] = ags;
  return j;
}

}  // namespace detail

inline generated_instance generate(const std::string& family, const json& source,
                                   long long sigma_override = 0) {
  generated_instance out;
  out.family = family;
  out.sigma_override = sigma_override;
  if (family == "stars")
    out.mod = gen_stars(mcc_instance::from_json(source));
  else if (family == "paths")
    out.mod = gen_paths(mcc_instance::from_json(source));
  else if (family == "twincover")
    out.tc = gen_twincover(arc_supply_instance::from_json(source), sigma_override);
  else if (family == "bandwidth")
    out.bw = gen_bandwidth(arc_supply_instance::from_json(source), sigma_override);
  else
    fail(errc::unknown_name, "family " + family);
  return out;
}

inline json provenance_of(const generated_instance& g) {
  json p;
  p["family"] = g.family;
  if (g.mod) {
    p["source"] = g.mod->layout.source.to_json();
    p["roles"] = detail::roles_modulator(g.mod->layout);
  } else if (g.tc) {
    p["source"] = g.tc->layout.source.to_json();
    p["roles"] = detail::roles_twincover(g.tc->layout);
  } else {
    json src = g.bw->layout.source.to_json();  // padded lists; padding is part of the construction
    p["source"] = src;
    p["roles"] = detail::roles_bandwidth(g.bw->layout);
  }
  if (g.sigma_override > 0) p["sigma_override"] = g.sigma_override;
  return p;
}

inline void write_generated(const std::string& path, const generated_instance& g) {
  json p = provenance_of(g);
  write_instance(path, g.inst(), &p);
}

// Reads a generated file, regenerates the layout from the provenance, and
// verifies it reproduces the stored instance exactly.
inline generated_instance load_generated(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  discovery_instance stored = instance_from_json(j);
  if (!j.contains("provenance"))
    fail(errc::schema_violation, "file carries no provenance block");
  const json& p = j.at("provenance");
  long long so = p.contains("sigma_override") ? p.at("sigma_override").get<long long>() : 0;
  generated_instance g = generate(p.at("family").get<std::string>(), p.at("source"), so);
  const discovery_instance& regen = g.inst();
  if (!(regen.graph == stored.graph) || regen.start != stored.start ||
      regen.budget != stored.budget)
    fail(errc::schema_violation, "provenance does not reproduce the stored instance");
  return g;
}

inline check_report check_conditions(const generated_instance& g, const configuration& c) {
  if (g.mod) return check_conditions_modulator(*g.mod, c);
  if (g.tc) return check_conditions_t(*g.tc, c);
  return check_conditions_b(*g.bw, c);
}

inline witness_report witness(const generated_instance& g) {
  if (g.mod) return witness_modulator(*g.mod);
  if (g.tc) return witness_twincover(*g.tc);
  return witness_bandwidth_order(*g.bw);
}

// Forward-direction certificate from a source solution (found by brute force
// when none is supplied).
inline transformation_sequence certificate(const generated_instance& g) {
  if (g.mod) {
    auto sol = solve_mcc_bruteforce(g.mod->layout.source);
    if (!sol) fail(errc::invalid_source_solution, "source instance has no solution");
    return certificate_modulator(*g.mod, *sol);
  }
  if (g.tc) {
    auto sol = solve_pas_bruteforce(g.tc->layout.source);
    if (!sol) fail(errc::invalid_source_solution, "source instance has no solution");
    return certificate_twincover(*g.tc, *sol);
  }
  auto sol = solve_pas_bruteforce(g.bw->layout.source);
  if (!sol) fail(errc::invalid_source_solution, "source instance has no solution");
  return certificate_bandwidth(*g.bw, *sol);
}

// DOT export with fill colors by role color.
inline std::string to_dot(const generated_instance& g) {
  const discovery_instance& inst = g.inst();
  std::string out = "graph H {\n  node [style=filled, fillcolor=white];\n";
  std::map<std::string, std::string> color_by_family;
  if (g.family == "stars" || g.family == "paths")
    color_by_family = {{"C1", "purple"}, {"C2", "teal"}, {"C3", "gray20"},
                       {"C4", "gray"},   {"C5", "green"}};
  else if (g.family == "twincover")
    color_by_family = {{"C1", "purple"}, {"C2", "gray20"}, {"C3", "yellow"},
                       {"C4", "orange"}, {"C5", "teal"},   {"C6", "brown"}};
  else
    color_by_family = {{"C1", "purple"}, {"C2", "yellow"}, {"C3", "gray"},
                       {"C4", "teal"},   {"C5", "brown"},  {"C6", "gray20"},
                       {"C7", "orange"}};
  for (vertex v = 0; v < inst.graph.n(); ++v) {
    std::string fill = "white";
    for (const auto& [cname, dot] : color_by_family)
      if (inst.graph.vertex_has_color(cname, v)) fill = dot;
    out += "  v" + std::to_string(v) + " [fillcolor=" + fill +
           (inst.start.contains(v) ? ", shape=doublecircle" : "") + "];\n";
  }
  for (auto [u, v] : inst.graph.edges())
    out += "  v" + std::to_string(u) + " -- v" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace tsd::gen
