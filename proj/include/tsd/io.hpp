#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tsd/instance.hpp"
#include "tsd/logic/builtins.hpp"
#include "tsd/logic/parser.hpp"

namespace tsd {

using json = nlohmann::json;

namespace detail {

inline json require(const json& j, const char* field) {
  if (!j.contains(field)) fail(errc::schema_violation, std::string("missing field '") + field + "'");
  return j.at(field);
}

inline int require_int(const json& j, const char* field) {
  json v = require(j, field);
  if (!v.is_number_integer()) fail(errc::schema_violation, std::string(field) + " must be an integer");
  return v.get<int>();
}

}  // namespace detail

// Formula text may also be "builtin:<NAME>".
inline logic::formula parse_instance_formula(const std::string& text) {
  constexpr const char* prefix = "builtin:";
  if (text.rfind(prefix, 0) == 0) return logic::builtin(text.substr(std::string(prefix).size()));
  return logic::parse(text);
}

inline discovery_instance instance_from_json(const json& j) {
  discovery_instance inst;
  int n = detail::require_int(j, "n");
  if (n < 0) fail(errc::schema_violation, "n must be non-negative");
  inst.graph = colored_graph(n);

  json edges = detail::require(j, "edges");
  if (!edges.is_array()) fail(errc::schema_violation, "edges must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(errc::schema_violation, "each edge must be a pair of integers");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      fail(errc::schema_violation, "bad edge [" + std::to_string(u) + "," + std::to_string(v) + "]");
    inst.graph.add_edge(u, v);
  }

  if (j.contains("colors")) {
    const json& colors = j.at("colors");
    if (!colors.is_object()) fail(errc::schema_violation, "colors must be an object");
    for (auto it = colors.begin(); it != colors.end(); ++it) {
      std::vector<vertex> members;
      for (const auto& v : it.value()) {
        if (!v.is_number_integer()) fail(errc::schema_violation, "color members must be integers");
        int x = v.get<int>();
        if (x < 0 || x >= n)
          fail(errc::schema_violation, "color " + it.key() + " contains vertex " + std::to_string(x));
        members.push_back(x);
      }
      inst.graph.add_color(it.key(), members);
    }
  }

  json tokens = detail::require(j, "tokens");
  if (!tokens.is_array()) fail(errc::schema_violation, "tokens must be an array");
  std::vector<vertex> tk;
  for (const auto& v : tokens) {
    if (!v.is_number_integer()) fail(errc::schema_violation, "tokens must be integers");
    int x = v.get<int>();
    if (x < 0 || x >= n) fail(errc::schema_violation, "token on nonexistent vertex " + std::to_string(x));
    tk.push_back(x);
  }
  inst.start = configuration(std::move(tk));

  inst.budget = detail::require_int(j, "budget");
  if (inst.budget < 0) fail(errc::schema_violation, "budget must be non-negative");

  json ftext = detail::require(j, "formula");
  if (!ftext.is_string()) fail(errc::schema_violation, "formula must be a string");
  inst.formula_text = ftext.get<std::string>();
  inst.phi = parse_instance_formula(inst.formula_text);
  inst.validate();
  return inst;
}

inline json instance_to_json(const discovery_instance& inst) {
  json j;
  j["n"] = inst.graph.n();
  json edges = json::array();
  for (auto [u, v] : inst.graph.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  json colors = json::object();
  for (const auto& name : inst.graph.color_names()) colors[name] = inst.graph.color_members(name);
  j["colors"] = colors;
  j["tokens"] = inst.start.vertices();
  j["budget"] = inst.budget;
  j["formula"] = inst.formula_text.empty() ? logic::to_string(inst.phi) : inst.formula_text;
  return j;
}

inline discovery_instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string(e.what()));
  }
  return instance_from_json(j);
}

inline void write_instance(const std::string& path, const discovery_instance& inst,
                           const json* provenance = nullptr) {
  json j = instance_to_json(inst);
  if (provenance != nullptr) j["provenance"] = *provenance;
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

// PACE-style .gr reader: optional 'c' comments, a 'p <type> n m' header, then
// 1-indexed edge lines (converted to 0-indexed).
inline colored_graph read_gr(std::istream& in) {
  std::string line;
  colored_graph g;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ss(line);
    if (line[0] == 'p') {
      std::string p, type;
      int n = 0;
      long long m = 0;
      if (!(ss >> p >> type >> n >> m) || n < 0)
        fail(errc::parse_error, "bad header at line " + std::to_string(lineno));
      g = colored_graph(n);
      have_header = true;
      continue;
    }
    if (!have_header) fail(errc::parse_error, "edge before header at line " + std::to_string(lineno));
    long long u, v;
    if (!(ss >> u >> v)) fail(errc::parse_error, "bad edge at line " + std::to_string(lineno));
    if (u < 1 || v < 1 || u > g.n() || v > g.n() || u == v)
      fail(errc::schema_violation, "edge out of range at line " + std::to_string(lineno));
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  if (!have_header) fail(errc::parse_error, "missing 'p' header");
  return g;
}

inline colored_graph read_gr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  return read_gr(in);
}

}  // namespace tsd
