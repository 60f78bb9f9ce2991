#pragma once

#include <optional>
#include <set>
#include <vector>

#include <json.hpp>

#include "tsd/errors.hpp"

namespace tsd::gen {

using json = nlohmann::json;

// Multicolored Clique source instance: kappa color classes padded to a common
// size n; vertex v lives in class v / n with index iota(v) = v % n + 1.
struct mcc_instance {
  int kappa = 0;
  int nsize = 0;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return kappa * nsize; }
  int cls(int v) const { return v / nsize; }
  int iota(int v) const { return v % nsize + 1; }

  void validate() const {
    if (kappa < 2 || nsize < 1) fail(errc::schema_violation, "need kappa >= 2 and n >= 1");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        fail(errc::schema_violation, "edge endpoint out of range");
      if (cls(u) == cls(v)) fail(errc::schema_violation, "edge inside a color class");
      auto key = std::minmax(u, v);
      if (!seen.insert({key.first, key.second}).second)
        fail(errc::schema_violation, "duplicate edge");
    }
  }

  bool has_edge(int u, int v) const {
    for (auto [a, b] : edges)
      if ((a == u && b == v) || (a == v && b == u)) return true;
    return false;
  }

  json to_json() const {
    json j;
    j["kappa"] = kappa;
    j["n"] = nsize;
    json es = json::array();
    for (auto [u, v] : edges) es.push_back({u, v});
    j["edges"] = es;
    return j;
  }

  static mcc_instance from_json(const json& j) {
    mcc_instance m;
    if (!j.contains("kappa") || !j.contains("n") || !j.contains("edges"))
      fail(errc::schema_violation, "multicolored clique file needs kappa, n, edges");
    m.kappa = j.at("kappa").get<int>();
    m.nsize = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) m.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    m.validate();
    return m;
  }
};

// One vertex per class forming a clique; vertices are global mcc ids.
inline std::optional<std::vector<int>> solve_mcc_bruteforce(const mcc_instance& m) {
  m.validate();
  std::set<std::pair<int, int>> edgeset;
  for (auto [u, v] : m.edges) {
    edgeset.insert({u, v});
    edgeset.insert({v, u});
  }
  std::vector<int> pick(m.kappa, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < m.kappa && ok; ++i)
      for (int j = i + 1; j < m.kappa && ok; ++j)
        ok = edgeset.count({i * m.nsize + pick[i], j * m.nsize + pick[j]}) > 0;
    if (ok) {
      std::vector<int> out;
      for (int i = 0; i < m.kappa; ++i) out.push_back(i * m.nsize + pick[i]);
      return out;
    }
    int idx = m.kappa - 1;
    while (idx >= 0 && pick[idx] == m.nsize - 1) pick[idx--] = 0;
    if (idx < 0) return std::nullopt;
    ++pick[idx];
  }
}

// Planar Arc Supply source instance: a digraph with per-vertex demands and a
// list of supply pairs per arc; choosing one pair per arc must meet every
// demand exactly.
struct arc_supply_instance {
  struct arc {
    int from = 0, to = 0;
    std::vector<std::pair<long long, long long>> pairs;
  };
  int num_vertices = 0;
  std::vector<long long> demand;
  std::vector<arc> arcs;

  void validate() const {
    if (num_vertices < 1) fail(errc::schema_violation, "need at least one vertex");
    if (static_cast<int>(demand.size()) != num_vertices)
      fail(errc::schema_violation, "demand list size mismatch");
    for (long long d : demand)
      if (d < 0) fail(errc::schema_violation, "negative demand");
    std::set<std::pair<int, int>> seen;
    for (const auto& a : arcs) {
      if (a.from < 0 || a.to < 0 || a.from >= num_vertices || a.to >= num_vertices)
        fail(errc::schema_violation, "arc endpoint out of range");
      if (a.from == a.to) fail(errc::schema_violation, "loop arc");
      auto key = std::minmax(a.from, a.to);
      if (!seen.insert({key.first, key.second}).second)
        fail(errc::schema_violation, "double arc");
      if (a.pairs.empty()) fail(errc::schema_violation, "arc with empty supply list");
      for (auto [x, y] : a.pairs)
        if (x < 0 || y < 0) fail(errc::schema_violation, "negative supply value");
    }
  }

  int size_parameter() const { return num_vertices + static_cast<int>(arcs.size()); }

  long long sum_all() const {
    long long s = 0;
    for (long long d : demand) s += d;
    for (const auto& a : arcs)
      for (auto [x, y] : a.pairs) s += x + y;
    return s;
  }

  long long total_demand() const {
    long long s = 0;
    for (long long d : demand) s += d;
    return s;
  }

  json to_json() const {
    json j;
    j["vertices"] = num_vertices;
    j["demand"] = demand;
    json as = json::array();
    for (const auto& a : arcs) {
      json aj;
      aj["from"] = a.from;
      aj["to"] = a.to;
      json ps = json::array();
      for (auto [x, y] : a.pairs) ps.push_back({x, y});
      aj["pairs"] = ps;
      as.push_back(aj);
    }
    j["arcs"] = as;
    return j;
  }

  static arc_supply_instance from_json(const json& j) {
    arc_supply_instance p;
    if (!j.contains("vertices") || !j.contains("demand") || !j.contains("arcs"))
      fail(errc::schema_violation, "arc supply file needs vertices, demand, arcs");
    p.num_vertices = j.at("vertices").get<int>();
    p.demand = j.at("demand").get<std::vector<long long>>();
    for (const auto& aj : j.at("arcs")) {
      arc a;
      a.from = aj.at("from").get<int>();
      a.to = aj.at("to").get<int>();
      for (const auto& pj : aj.at("pairs"))
        a.pairs.push_back({pj.at(0).get<long long>(), pj.at(1).get<long long>()});
      p.arcs.push_back(std::move(a));
    }
    p.validate();
    return p;
  }
};

// Chosen pair index (0-based) per arc, or nullopt.
inline std::optional<std::vector<int>> solve_pas_bruteforce(const arc_supply_instance& p) {
  p.validate();
  std::vector<int> pick(p.arcs.size(), 0);
  while (true) {
    std::vector<long long> got(p.num_vertices, 0);
    for (size_t a = 0; a < p.arcs.size(); ++a) {
      got[p.arcs[a].from] += p.arcs[a].pairs[pick[a]].first;
      got[p.arcs[a].to] += p.arcs[a].pairs[pick[a]].second;
    }
    if (got == p.demand) return pick;
    int idx = static_cast<int>(p.arcs.size()) - 1;
    while (idx >= 0 && pick[idx] + 1 == static_cast<int>(p.arcs[idx].pairs.size())) pick[idx--] = 0;
    if (idx < 0) return std::nullopt;
    ++pick[idx];
  }
}

// Checks a proposed pair selection.
inline bool pas_solution_valid(const arc_supply_instance& p, const std::vector<int>& pick) {
  if (pick.size() != p.arcs.size()) return false;
  std::vector<long long> got(p.num_vertices, 0);
  for (size_t a = 0; a < p.arcs.size(); ++a) {
    if (pick[a] < 0 || pick[a] >= static_cast<int>(p.arcs[a].pairs.size())) return false;
    got[p.arcs[a].from] += p.arcs[a].pairs[pick[a]].first;
    got[p.arcs[a].to] += p.arcs[a].pairs[pick[a]].second;
  }
  return got == p.demand;
}

inline bool mcc_solution_valid(const mcc_instance& m, const std::vector<int>& pick) {
  if (static_cast<int>(pick.size()) != m.kappa) return false;
  for (int i = 0; i < m.kappa; ++i)
    if (pick[i] < 0 || pick[i] >= m.num_vertices() || m.cls(pick[i]) != i) return false;
  for (int i = 0; i < m.kappa; ++i)
    for (int j = i + 1; j < m.kappa; ++j)
      if (!m.has_edge(pick[i], pick[j])) return false;
  return true;
}

}  // namespace tsd::gen
