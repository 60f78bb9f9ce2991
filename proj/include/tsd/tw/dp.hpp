#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsd/instance.hpp"
#include "tsd/tw/decomposition.hpp"
#include "tsd/tw/engines.hpp"
#include "tsd/tw/structure.hpp"

namespace tsd::tw {

// One DP entry: kappa tokens placed in the processed part, ell slides spent,
// T' the placement on the bag, A the settled bag placements, a type handle,
// and the boundary ledger f (positive: surplus parked at the bag vertex for
// the future; negative: tokens still owed to it, including the pending demand
// of an unserved T' vertex).
struct dp_state {
  int kappa = 0;
  long long ell = 0;
  uint32_t tprime = 0;
  int type = 0;
  std::vector<int8_t> f;

  uint32_t aset() const {
    uint32_t a = tprime;
    for (size_t i = 0; i < f.size(); ++i)
      if (f[i] < 0) a &= ~(1u << i);
    return a;
  }
};

struct tw_limits {
  long long max_states_per_node = 2'000'000;
  bool cleaning = true;
};

struct tw_result {
  bool yes = false;
  long long cost = -1;
};

template <typename Engine>
class dp_runner {
 public:
  dp_runner(const discovery_instance& inst, const nice_tree_decomposition& ntd, Engine& engine,
            tw_limits lim = {})
      : inst_(inst), ntd_(ntd), engine_(engine), lim_(lim) {
    k_ = inst.start.size();
    ell_cap_ = std::min<long long>(inst.budget,
                                   static_cast<long long>(k_) * std::max(1, inst.graph.n()));
  }

  // ---- node transfer functions ----

  std::vector<dp_state> leaf() {
    boundaried_structure empty;
    dp_state s;
    s.type = engine_.type_of(empty);
    return {s};
  }

  std::vector<dp_state> introduce(const std::vector<dp_state>& child_states,
                                  const std::vector<vertex>& child_bag, vertex u) {
    std::vector<vertex> bag = child_bag;
    const int p = static_cast<int>(std::lower_bound(bag.begin(), bag.end(), u) - bag.begin());
    bag.insert(bag.begin() + p, u);
    const bool u_in_s = inst_.start.contains(u);

    // child bag positions adjacent to u
    std::vector<int> nbr;
    for (size_t i = 0; i < child_bag.size(); ++i)
      if (inst_.graph.has_edge(u, child_bag[i])) nbr.push_back(static_cast<int>(i));

    std::vector<dp_state> out;
    for (const dp_state& s : child_states) {
      for (int t_u = 0; t_u <= 1; ++t_u) {
        if (t_u && s.kappa + 1 > k_) continue;
        // enumerate ledger transfers g over u's bag neighborhood
        std::vector<int> g(nbr.size(), 0);
        enumerate_g(s, nbr, 0, g, [&](const std::vector<int>& gv, long long cost) {
          long long ell = s.ell + cost;
          if (ell > ell_cap_) return;
          int sum_g = 0;
          for (int x : gv) sum_g += x;
          int fu = sum_g + (u_in_s ? 1 : 0) - t_u;
          if (fu < -k_ || fu > k_) return;

          dp_state ns;
          ns.kappa = s.kappa + t_u;
          ns.ell = ell;
          ns.f.resize(bag.size());
          for (size_t i = 0, j = 0; i < child_bag.size(); ++i, ++j) {
            if (static_cast<int>(j) == p) ++j;
            ns.f[j] = s.f[i];
          }
          for (size_t t = 0; t < nbr.size(); ++t) {
            int pos = nbr[t] < p ? nbr[t] : nbr[t] + 1;
            ns.f[pos] = static_cast<int8_t>(s.f[nbr[t]] - gv[t]);
          }
          ns.f[p] = static_cast<int8_t>(fu);
          ns.tprime = shift_mask(s.tprime, p) | (t_u ? (1u << p) : 0);
          ns.type = introduce_type(s.type, child_bag, bag, u, p, ns.tprime);
          out.push_back(std::move(ns));
        });
      }
    }
    return clean(std::move(out));
  }

  std::vector<dp_state> forget(const std::vector<dp_state>& child_states,
                               const std::vector<vertex>& child_bag, vertex u) {
    const int p = static_cast<int>(
        std::lower_bound(child_bag.begin(), child_bag.end(), u) - child_bag.begin());
    std::vector<dp_state> out;
    for (const dp_state& s : child_states) {
      // u's neighborhood is complete: every owed or parked token must be
      // settled, which also settles the demand of u in T'
      if (s.f[p] != 0) continue;
      dp_state ns;
      ns.kappa = s.kappa;
      ns.ell = s.ell;
      ns.f = s.f;
      ns.f.erase(ns.f.begin() + p);
      ns.tprime = unshift_mask(s.tprime, p);
      ns.type = engine_.forget_boundary(s.type, static_cast<size_t>(p));
      out.push_back(std::move(ns));
    }
    return clean(std::move(out));
  }

  std::vector<dp_state> join(const std::vector<dp_state>& left,
                             const std::vector<dp_state>& right,
                             const std::vector<vertex>& bag) {
    uint32_t s_mask = 0;
    for (size_t i = 0; i < bag.size(); ++i)
      if (inst_.start.contains(bag[i])) s_mask |= 1u << i;

    std::vector<dp_state> out;
    for (const dp_state& a : left) {
      for (const dp_state& b : right) {
        if (a.tprime != b.tprime) continue;
        int shared = __builtin_popcount(a.tprime);
        int kappa = a.kappa + b.kappa - shared;
        if (kappa > k_) continue;
        long long ell = a.ell + b.ell;
        if (ell > ell_cap_) continue;
        dp_state ns;
        ns.kappa = kappa;
        ns.ell = ell;
        ns.tprime = a.tprime;
        ns.f.resize(bag.size());
        bool ok = true;
        for (size_t i = 0; i < bag.size(); ++i) {
          // one standing token and one pending T'-demand are shared between
          // the two sides, not duplicated
          int v = a.f[i] + b.f[i] - ((s_mask >> i) & 1) + ((a.tprime >> i) & 1);
          if (v < -k_ || v > k_) {
            ok = false;
            break;
          }
          ns.f[i] = static_cast<int8_t>(v);
        }
        if (!ok) continue;
        ns.type = engine_.compose(a.type, b.type);
        out.push_back(std::move(ns));
      }
    }
    return clean(std::move(out));
  }

  // ---- full run ----

  tw_result run() {
    const auto& nodes = ntd_.nodes;
    std::vector<std::vector<dp_state>> table(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      const nice_node& nd = nodes[i];
      switch (nd.kind) {
        case nice_kind::leaf: table[i] = leaf(); break;
        case nice_kind::introduce:
          table[i] = introduce(table[nd.left], nodes[nd.left].bag, nd.v);
          break;
        case nice_kind::forget:
          table[i] = forget(table[nd.left], nodes[nd.left].bag, nd.v);
          break;
        case nice_kind::join:
          table[i] = join(table[nd.left], table[nd.right], nd.bag);
          break;
      }
      if (static_cast<long long>(table[i].size()) > lim_.max_states_per_node)
        fail(errc::state_budget_exceeded,
             "node " + std::to_string(i) + " holds " + std::to_string(table[i].size()) + " states");
      if (nd.left >= 0) table[nd.left].clear();
      if (nd.right >= 0) table[nd.right].clear();
    }
    tw_result res;
    for (const dp_state& s : table[ntd_.root]) {
      if (s.kappa != k_ || s.ell > ell_cap_) continue;
      if (!engine_.root_accepts(s.type, inst_.phi)) continue;
      if (!res.yes || s.ell < res.cost) {
        res.yes = true;
        res.cost = s.ell;
      }
    }
    return res;
  }

  // keeps every state (adds per-node tables) for audits
  std::vector<std::vector<dp_state>> run_tables() {
    const auto& nodes = ntd_.nodes;
    std::vector<std::vector<dp_state>> table(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
      const nice_node& nd = nodes[i];
      switch (nd.kind) {
        case nice_kind::leaf: table[i] = leaf(); break;
        case nice_kind::introduce:
          table[i] = introduce(table[nd.left], nodes[nd.left].bag, nd.v);
          break;
        case nice_kind::forget:
          table[i] = forget(table[nd.left], nodes[nd.left].bag, nd.v);
          break;
        case nice_kind::join:
          table[i] = join(table[nd.left], table[nd.right], nd.bag);
          break;
      }
    }
    return table;
  }

  Engine& engine() { return engine_; }

 private:
  template <typename Visit>
  void enumerate_g(const dp_state& s, const std::vector<int>& nbr, size_t idx,
                   std::vector<int>& g, const Visit& visit, long long cost = 0) {
    if (idx == nbr.size()) {
      visit(g, cost);
      return;
    }
    int fv = s.f[nbr[idx]];
    int lo = std::min(0, fv), hi = std::max(0, fv);
    for (int x = lo; x <= hi; ++x) {
      g[idx] = x;
      enumerate_g(s, nbr, idx + 1, g, visit, cost + std::abs(x));
    }
  }

  static uint32_t shift_mask(uint32_t m, int p) {
    uint32_t low = m & ((1u << p) - 1);
    uint32_t high = m >> p;
    return low | (high << (p + 1));
  }
  static uint32_t unshift_mask(uint32_t m, int p) {
    uint32_t low = m & ((1u << p) - 1);
    uint32_t high = m >> (p + 1);
    return low | (high << p);
  }

  int introduce_type(int child_type, const std::vector<vertex>& child_bag,
                     const std::vector<vertex>& bag, vertex u, int p, uint32_t tprime) {
    // extend the child's representative with the new vertex and its bag edges
    int64_t memo_key = (static_cast<int64_t>(child_type) << 16) |
                       (static_cast<int64_t>(tprime & 0x3ff) << 6) |
                       (static_cast<int64_t>(p) << 1) | (inst_.start.contains(u) ? 1 : 0);
    auto cache = intro_memo_.find(intro_ctx{u, child_bag, memo_key});
    if (cache != intro_memo_.end()) return cache->second;

    const boundaried_structure& base = engine_.rep(child_type);
    boundaried_structure ext = base;
    int uid = ext.n++;
    ext.colors.push_back(color_mask(u));
    ext.token.push_back((tprime >> p) & 1);
    for (size_t i = 0; i < child_bag.size(); ++i)
      if (inst_.graph.has_edge(u, child_bag[i]))
        ext.edges.push_back({std::min(uid, base.boundary[i]), std::max(uid, base.boundary[i])});
    ext.normalize();
    ext.boundary.insert(ext.boundary.begin() + p, uid);
    (void)bag;
    int h = engine_.type_of(ext);
    intro_memo_.emplace(intro_ctx{u, child_bag, memo_key}, h);
    return h;
  }

  uint32_t color_mask(vertex v) const {
    uint32_t m = 0;
    const auto& universe = engine_.color_universe();
    for (size_t c = 0; c < universe.size(); ++c)
      if (inst_.graph.vertex_has_color(universe[c], v)) m |= 1u << c;
    return m;
  }

  std::vector<dp_state> clean(std::vector<dp_state> in) {
    std::unordered_map<std::string, size_t> best;
    std::vector<dp_state> out;
    out.reserve(in.size());
    for (auto& s : in) {
      std::string key;
      key.reserve(16 + s.f.size());
      key += std::to_string(s.kappa) + "|" + std::to_string(s.tprime) + "|" +
             std::to_string(s.type) + "|";
      for (int8_t v : s.f) key += static_cast<char>(v + 64);
      if (!lim_.cleaning) key += "@" + std::to_string(s.ell);
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(std::move(key), out.size());
        out.push_back(std::move(s));
      } else if (s.ell < out[it->second].ell) {
        out[it->second] = std::move(s);
      }
    }
    return out;
  }

  struct intro_ctx {
    vertex u;
    std::vector<vertex> child_bag;
    int64_t key;
    bool operator==(const intro_ctx& o) const {
      return u == o.u && key == o.key && child_bag == o.child_bag;
    }
  };
  struct intro_hash {
    size_t operator()(const intro_ctx& c) const {
      size_t h = std::hash<int64_t>()(c.key * 1000003 + c.u);
      for (vertex v : c.child_bag) h = h * 31 + static_cast<size_t>(v) + 7;
      return h;
    }
  };

  const discovery_instance& inst_;
  const nice_tree_decomposition& ntd_;
  Engine& engine_;
  tw_limits lim_;
  int k_ = 0;
  long long ell_cap_ = 0;
  std::unordered_map<intro_ctx, int, intro_hash> intro_memo_;
};

// The treewidth XP solver: runs the DP over a nice decomposition with the
// given type engine and reports the minimal number of slides.
template <typename Engine>
inline tw_result solve_tw(const discovery_instance& inst, const nice_tree_decomposition& ntd,
                          Engine& engine, tw_limits lim = {}) {
  inst.validate();
  dp_runner<Engine> runner(inst, ntd, engine, lim);
  return runner.run();
}

}  // namespace tsd::tw
