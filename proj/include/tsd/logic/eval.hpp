#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "tsd/config.hpp"
#include "tsd/graph.hpp"
#include "tsd/logic/ast.hpp"

namespace tsd::logic {

struct eval_limits {
  int max_set_domain_bits = 24;   // vertex-set quantifier enumeration
  int max_edge_domain_bits = 22;  // edge-set quantifier enumeration
};

// Recursive semantics over colored graphs. Vertex quantifiers range over V,
// set quantifiers over vertex subsets (enumerated, with domain restriction
// mined from guard conjuncts), edge-set quantifiers over edge subsets.
//
// A checker instance caches subformula values per variable assignment; results
// of X-independent subformulas survive across X reassignments, which makes
// repeated checks of one formula against many configurations cheap.
class model_checker {
 public:
  explicit model_checker(const colored_graph& g, eval_limits lim = {}) : g_(g), lim_(lim) {}

  bool check(const formula& f, const configuration& x, const std::vector<vertex>& vassign = {}) {
    return run(f, &x, vassign);
  }
  // For sentences that do not mention X.
  bool check_sentence(const formula& f, const std::vector<vertex>& vassign = {}) {
    return run(f, nullptr, vassign);
  }

 private:
  struct node_info {
    std::vector<int> free_v;  // sorted vertex slots occurring free below
    bool uses_x = false;
    uint32_t set_mask = 0;
    uint32_t eset_mask = 0;
    bool cacheable = false;
  };

  struct form_state {
    std::vector<node_info> info;
    std::vector<std::unordered_map<uint64_t, uint8_t>> cache_xfree;
    std::vector<std::unordered_map<uint64_t, uint8_t>> cache_xdep;
    std::vector<vertex> last_x;
    bool have_x = false;
  };

  bool run(const formula& f, const configuration* x, const std::vector<vertex>& vassign) {
    if (!f.valid()) fail(errc::invalid_instance, "empty formula");
    if (vassign.size() != f.free_vertex_vars.size())
      fail(errc::unassigned_free_variable,
           "expected " + std::to_string(f.free_vertex_vars.size()) + " vertex assignments");
    for (vertex v : vassign)
      if (v < 0 || v >= g_.n()) fail(errc::invalid_instance, "assignment out of range");

    if (f.uid < 0) fail(errc::invalid_instance, "formula was not produced by a builder");
    f_ = &f;
    st_ = &states_[f.uid];
    if (st_->info.empty()) analyze();

    if (st_->info[f.root].uses_x && x == nullptr)
      fail(errc::unassigned_free_variable, "formula mentions X but no set was given");

    x_flags_.assign(g_.n(), 0);
    x_members_.clear();
    if (x != nullptr) {
      for (vertex v : *x) {
        if (v < 0 || v >= g_.n()) fail(errc::invalid_instance, "X contains an invalid vertex");
        x_flags_[v] = 1;
      }
      x_members_ = x->vertices();
    }
    if (!st_->have_x || st_->last_x != x_members_) {
      for (auto& m : st_->cache_xdep) m.clear();
      st_->last_x = x_members_;
      st_->have_x = true;
    }

    venv_.assign(count_vertex_quantifiers() + vassign.size(), -1);
    for (size_t i = 0; i < vassign.size(); ++i) venv_[i] = vassign[i];
    senv_.clear();
    eenv_.clear();
    v_depth_ = static_cast<int>(vassign.size());
    return eval(f.root);
  }

  int count_vertex_quantifiers() const {
    int c = 0;
    for (auto& nd : f_->nodes)
      if (is_vertex_quantifier(nd.kind)) ++c;
    return c;
  }

  // ---- analysis ----

  void analyze() {
    st_->info.assign(f_->nodes.size(), {});
    st_->cache_xfree.assign(f_->nodes.size(), {});
    st_->cache_xdep.assign(f_->nodes.size(), {});
    int vd = static_cast<int>(f_->free_vertex_vars.size());
    int sd = 0, ed = 0;
    analyze_rec(f_->root, vd, sd, ed);
  }

  static void merge_sorted(std::vector<int>& into, const std::vector<int>& from) {
    for (int s : from)
      if (!std::binary_search(into.begin(), into.end(), s))
        into.insert(std::upper_bound(into.begin(), into.end(), s), s);
  }

  void analyze_rec(int id, int vd, int sd, int ed) {
    const node& nd = f_->at(id);
    node_info& in = st_->info[id];
    int child_vd = vd + (is_vertex_quantifier(nd.kind) ? 1 : 0);
    int child_sd = sd + (is_set_quantifier(nd.kind) ? 1 : 0);
    int child_ed = ed + (is_edge_set_quantifier(nd.kind) ? 1 : 0);
    if (nd.a >= 0) {
      analyze_rec(nd.a, child_vd, child_sd, child_ed);
      in.free_v = st_->info[nd.a].free_v;
      in.uses_x = st_->info[nd.a].uses_x;
      in.set_mask = st_->info[nd.a].set_mask;
      in.eset_mask = st_->info[nd.a].eset_mask;
    }
    if (nd.b >= 0) {
      analyze_rec(nd.b, child_vd, child_sd, child_ed);
      merge_sorted(in.free_v, st_->info[nd.b].free_v);
      in.uses_x |= st_->info[nd.b].uses_x;
      in.set_mask |= st_->info[nd.b].set_mask;
      in.eset_mask |= st_->info[nd.b].eset_mask;
    }
    if (nd.v1 >= 0 && !std::binary_search(in.free_v.begin(), in.free_v.end(), nd.v1))
      in.free_v.insert(std::upper_bound(in.free_v.begin(), in.free_v.end(), nd.v1), nd.v1);
    if (nd.v2 >= 0 && !std::binary_search(in.free_v.begin(), in.free_v.end(), nd.v2))
      in.free_v.insert(std::upper_bound(in.free_v.begin(), in.free_v.end(), nd.v2), nd.v2);
    if (nd.kind == node_kind::atom_free_set) in.uses_x = true;
    if (nd.kind == node_kind::atom_set_member) in.set_mask |= 1u << nd.set_slot;
    if (nd.kind == node_kind::atom_edge_set_member) in.eset_mask |= 1u << nd.set_slot;

    if (is_vertex_quantifier(nd.kind)) {
      auto it = std::find(in.free_v.begin(), in.free_v.end(), vd);
      if (it != in.free_v.end()) in.free_v.erase(it);
    }
    if (is_set_quantifier(nd.kind)) in.set_mask &= ~(1u << sd);
    if (is_edge_set_quantifier(nd.kind)) in.eset_mask &= ~(1u << ed);

    in.cacheable = in.set_mask == 0 && in.eset_mask == 0 && in.free_v.size() <= 4 &&
                   g_.n() < (1 << 15);
  }

  // ---- evaluation ----

  uint64_t cache_key(const node_info& in) const {
    uint64_t key = 1;
    for (int slot : in.free_v) key = (key << 15) | static_cast<uint64_t>(venv_[slot]);
    return key;
  }

  bool eval(int id) {
    const node_info& in = st_->info[id];
    uint64_t key = 0;
    const bool cached = in.cacheable;
    if (cached) {
      key = cache_key(in);
      auto& map = in.uses_x ? st_->cache_xdep[id] : st_->cache_xfree[id];
      auto it = map.find(key);
      if (it != map.end()) return it->second != 0;
    }
    bool result = eval_raw(id);
    if (cached) {
      auto& map = in.uses_x ? st_->cache_xdep[id] : st_->cache_xfree[id];
      map.emplace(key, result ? 1 : 0);
    }
    return result;
  }

  bool eval_raw(int id) {
    const node& nd = f_->at(id);
    switch (nd.kind) {
      case node_kind::atom_edge: return g_.has_edge(venv_[nd.v1], venv_[nd.v2]);
      case node_kind::atom_eq: return venv_[nd.v1] == venv_[nd.v2];
      case node_kind::atom_color: return g_.vertex_has_color(nd.name, venv_[nd.v1]);
      case node_kind::atom_free_set: return x_flags_[venv_[nd.v1]] != 0;
      case node_kind::atom_set_member: return senv_[nd.set_slot][venv_[nd.v1]] != 0;
      case node_kind::atom_edge_set_member: {
        vertex u = venv_[nd.v1], v = venv_[nd.v2];
        if (!g_.has_edge(u, v)) return false;
        return eenv_[nd.set_slot][edge_id(u, v)] != 0;
      }
      case node_kind::lnot: return !eval(nd.a);
      case node_kind::land: return eval(nd.a) && eval(nd.b);
      case node_kind::lor: return eval(nd.a) || eval(nd.b);
      case node_kind::implies: return !eval(nd.a) || eval(nd.b);
      case node_kind::iff: return eval(nd.a) == eval(nd.b);
      case node_kind::exists_v: return eval_vertex_quant(nd, true);
      case node_kind::forall_v: return eval_vertex_quant(nd, false);
      case node_kind::exists_s: return eval_set_quant(nd, true);
      case node_kind::forall_s: return eval_set_quant(nd, false);
      case node_kind::exists_e: return eval_edge_set_quant(nd, true);
      case node_kind::forall_e: return eval_edge_set_quant(nd, false);
    }
    return false;
  }

  int edge_id(vertex u, vertex v) {
    if (edge_ids_.empty()) {
      const auto& es = g_.edges();
      for (size_t i = 0; i < es.size(); ++i)
        edge_ids_[static_cast<int64_t>(es[i].first) * g_.n() + es[i].second] =
            static_cast<int>(i);
    }
    if (u > v) std::swap(u, v);
    return edge_ids_.at(static_cast<int64_t>(u) * g_.n() + v);
  }

  void flatten_conjuncts(int id, std::vector<int>& out) const {
    const node& nd = f_->at(id);
    if (nd.kind == node_kind::land) {
      flatten_conjuncts(nd.a, out);
      flatten_conjuncts(nd.b, out);
    } else {
      out.push_back(id);
    }
  }

  // Candidate iteration domain for a vertex quantifier binding `slot`, mined
  // from conjuncts that must hold of the bound vertex. Returns false if no
  // restriction applies.
  bool restrict_domain(const std::vector<int>& conjuncts, int slot, std::vector<vertex>& domain) {
    const std::vector<vertex>* best = nullptr;
    std::vector<vertex> local;
    for (int cid : conjuncts) {
      const node& c = f_->at(cid);
      const std::vector<vertex>* cand = nullptr;
      std::vector<vertex> tmp;
      switch (c.kind) {
        case node_kind::atom_color:
          if (c.v1 == slot) cand = &g_.color_members(c.name);
          break;
        case node_kind::atom_free_set:
          if (c.v1 == slot) cand = &x_members_;
          break;
        case node_kind::atom_set_member:
          if (c.v1 == slot) {
            const auto& flags = senv_[c.set_slot];
            for (vertex v = 0; v < g_.n(); ++v)
              if (flags[v]) tmp.push_back(v);
            local = tmp;
            cand = &local;
          }
          break;
        case node_kind::atom_edge: {
          int other = -1;
          if (c.v1 == slot && c.v2 != slot) other = c.v2;
          if (c.v2 == slot && c.v1 != slot) other = c.v1;
          if (other >= 0 && venv_[other] >= 0) cand = &g_.neighbors(venv_[other]);
          break;
        }
        case node_kind::atom_eq: {
          int other = -1;
          if (c.v1 == slot && c.v2 != slot) other = c.v2;
          if (c.v2 == slot && c.v1 != slot) other = c.v1;
          if (other >= 0 && venv_[other] >= 0) {
            local = {venv_[other]};
            cand = &local;
          }
          break;
        }
        default: break;
      }
      if (cand && (!best || cand->size() < best->size())) {
        if (cand == &local) {
          domain = local;
          best = &domain;
        } else {
          best = cand;
        }
      }
    }
    if (!best) return false;
    if (best != &domain) domain = *best;
    return true;
  }

  bool eval_vertex_quant(const node& nd, bool existential) {
    const int slot = v_depth_++;
    std::vector<int> conjuncts;
    const node& body = f_->at(nd.a);
    if (existential) {
      flatten_conjuncts(nd.a, conjuncts);
    } else if (body.kind == node_kind::implies) {
      flatten_conjuncts(body.a, conjuncts);
    }
    std::vector<vertex> domain;
    bool restricted = restrict_domain(conjuncts, slot, domain);

    bool result = !existential;
    auto visit = [&](vertex v) {
      venv_[slot] = v;
      bool b = eval(nd.a);
      if (b == existential) {
        result = existential;
        return true;
      }
      return false;
    };
    if (restricted) {
      for (vertex v : domain)
        if (visit(v)) break;
    } else {
      for (vertex v = 0; v < g_.n(); ++v)
        if (visit(v)) break;
    }
    venv_[slot] = -1;
    --v_depth_;
    return result;
  }

  // Set guards: literal membership conjuncts pin vertices in or out; a
  // conjunct of shape `forall z. (S(z) -> delta(z))` with delta independent of
  // S restricts the enumeration domain to delta's extension; a Horn closure
  // conjunct `forall u. forall v. (S(u) & psi(u,v) -> S(v))` forces the
  // psi-closure of the pinned vertices into every candidate subset.
  struct set_guards {
    std::vector<vertex> forced_in, forced_out;
    std::vector<int> domain_deltas;  // body ids of forall-guards (delta, bound slot is v_depth_)
    std::vector<std::vector<int>> closure_psis;  // psi conjunct ids per Horn closure rule
    std::vector<int> skip;                       // conjunct ids consumed by the guards
    bool contradictory = false;
  };

  set_guards mine_set_guards(const std::vector<int>& conjuncts, int slot) {
    set_guards gd;
    for (int cid : conjuncts) {
      const node& c = f_->at(cid);
      if (c.kind == node_kind::atom_set_member && c.set_slot == slot) {
        gd.forced_in.push_back(venv_[c.v1]);
        gd.skip.push_back(cid);
      } else if (c.kind == node_kind::lnot) {
        const node& inner = f_->at(c.a);
        if (inner.kind == node_kind::atom_set_member && inner.set_slot == slot) {
          gd.forced_out.push_back(venv_[inner.v1]);
          gd.skip.push_back(cid);
        }
      } else if (c.kind == node_kind::forall_v) {
        const node& b = f_->at(c.a);
        if (b.kind == node_kind::implies) {
          const node& ante = f_->at(b.a);
          const node_info& delta_info = st_->info[b.b];
          if (ante.kind == node_kind::atom_set_member && ante.set_slot == slot &&
              ante.v1 == v_depth_ && (delta_info.set_mask & (1u << slot)) == 0) {
            gd.domain_deltas.push_back(b.b);
            gd.skip.push_back(cid);
            continue;
          }
        }
        // closure rule: forall u. forall v. ((S(u) & psi) -> S(v)) with psi
        // independent of S; the rule itself is still re-checked per subset,
        // but it lets the pinned part be closed upfront
        if (b.kind == node_kind::forall_v) {
          const node& inner = f_->at(b.a);
          if (inner.kind != node_kind::implies) continue;
          const node& cons = f_->at(inner.b);
          if (cons.kind != node_kind::atom_set_member || cons.set_slot != slot ||
              cons.v1 != v_depth_ + 1)
            continue;
          std::vector<int> ante_parts;
          flatten_conjuncts(inner.a, ante_parts);
          bool has_su = false;
          std::vector<int> psi;
          bool clean_rule = true;
          for (int pid : ante_parts) {
            const node& pn = f_->at(pid);
            if (pn.kind == node_kind::atom_set_member && pn.set_slot == slot &&
                pn.v1 == v_depth_) {
              has_su = true;
            } else if ((st_->info[pid].set_mask & (1u << slot)) == 0) {
              psi.push_back(pid);
            } else {
              clean_rule = false;
            }
          }
          if (has_su && clean_rule) gd.closure_psis.push_back(std::move(psi));
        }
      }
    }
    for (vertex v : gd.forced_in)
      for (vertex w : gd.forced_out)
        if (v == w) gd.contradictory = true;
    return gd;
  }

  // closure of `base` under the mined rules, restricted to the domain
  void close_under_rules(const set_guards& gd, const std::vector<uint8_t>& in_domain,
                         std::vector<uint8_t>& members) {
    if (gd.closure_psis.empty()) return;
    const int u_slot = v_depth_, v_slot = v_depth_ + 1;
    v_depth_ += 2;
    bool grown = true;
    while (grown) {
      grown = false;
      for (vertex u = 0; u < g_.n(); ++u) {
        if (!members[u]) continue;
        venv_[u_slot] = u;
        for (vertex w = 0; w < g_.n(); ++w) {
          if (members[w] || !in_domain[w]) continue;
          venv_[v_slot] = w;
          for (const auto& psi : gd.closure_psis) {
            bool all = true;
            for (int pid : psi)
              if (!eval(pid)) {
                all = false;
                break;
              }
            if (all) {
              members[w] = 1;
              grown = true;
              break;
            }
          }
        }
      }
    }
    venv_[u_slot] = -1;
    venv_[v_slot] = -1;
    v_depth_ -= 2;
  }

  bool delta_holds(int delta_id, vertex v) {
    const int slot = v_depth_++;
    venv_[slot] = v;
    bool ok = eval(delta_id);
    venv_[slot] = -1;
    --v_depth_;
    return ok;
  }

  bool eval_set_quant(const node& nd, bool existential) {
    const int slot = s_depth_;
    // For forall we search for a counterexample subset: guards come from the
    // antecedent of an implication body when present.
    std::vector<int> conjuncts;
    int check_id = nd.a;           // evaluated per subset (conjunct list overrides)
    int consequent_id = -1;        // forall with implication body
    const node& body = f_->at(nd.a);
    if (existential) {
      flatten_conjuncts(nd.a, conjuncts);
    } else if (body.kind == node_kind::implies) {
      flatten_conjuncts(body.a, conjuncts);
      consequent_id = body.b;
    }
    set_guards gd = mine_set_guards(conjuncts, slot);
    if (gd.contradictory) return !existential;

    std::vector<uint8_t> in_domain(g_.n(), gd.domain_deltas.empty() ? 1 : 0);
    if (!gd.domain_deltas.empty()) {
      for (vertex v = 0; v < g_.n(); ++v) {
        bool ok = true;
        for (int d : gd.domain_deltas)
          if (!delta_holds(d, v)) {
            ok = false;
            break;
          }
        in_domain[v] = ok;
      }
    }
    for (vertex v : gd.forced_in)
      if (!in_domain[v]) return !existential;  // no admissible subset can contain v

    std::vector<uint8_t> base(g_.n(), 0);
    for (vertex v : gd.forced_in) base[v] = 1;
    close_under_rules(gd, in_domain, base);
    for (vertex v : gd.forced_out)
      if (base[v]) return !existential;  // the forced closure hits a pinned non-member
    std::vector<vertex> free_vs;
    for (vertex v = 0; v < g_.n(); ++v)
      if (in_domain[v] && !base[v]) free_vs.push_back(v);
    for (vertex v : gd.forced_out) {
      auto it = std::find(free_vs.begin(), free_vs.end(), v);
      if (it != free_vs.end()) free_vs.erase(it);
    }
    if (static_cast<int>(free_vs.size()) > lim_.max_set_domain_bits)
      fail(errc::search_space_too_large,
           "set quantifier over " + std::to_string(free_vs.size()) + " candidate vertices");

    std::vector<int> rest;
    if (existential || consequent_id >= 0) {
      for (int cid : conjuncts)
        if (std::find(gd.skip.begin(), gd.skip.end(), cid) == gd.skip.end()) rest.push_back(cid);
    }

    senv_.push_back(base);
    const int my_slot = s_depth_++;
    bool result = !existential;
    const uint64_t total = 1ull << free_vs.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
      auto& flags = senv_[my_slot];  // re-fetch: nested quantifiers may reallocate
      for (size_t i = 0; i < free_vs.size(); ++i) flags[free_vs[i]] = (mask >> i) & 1;
      bool witness;
      if (existential || consequent_id >= 0) {
        bool all = true;
        for (int cid : rest)
          if (!eval(cid)) {
            all = false;
            break;
          }
        witness = existential ? all : (all && !eval(consequent_id));
      } else {
        witness = !eval(check_id);
      }
      if (witness) {
        result = existential;
        break;
      }
    }
    --s_depth_;
    senv_.pop_back();
    return result;
  }

  bool eval_edge_set_quant(const node& nd, bool existential) {
    const int m = g_.m();
    if (m > lim_.max_edge_domain_bits)
      fail(errc::search_space_too_large,
           "edge-set quantifier over " + std::to_string(m) + " edges");
    eenv_.emplace_back(m, 0);
    const int my_slot = e_depth_++;
    bool result = !existential;
    const uint64_t total = 1ull << m;
    for (uint64_t mask = 0; mask < total; ++mask) {
      auto& flags = eenv_[my_slot];  // re-fetch: nested quantifiers may reallocate
      for (int i = 0; i < m; ++i) flags[i] = (mask >> i) & 1;
      if (eval(nd.a) == existential) {
        result = existential;
        break;
      }
    }
    --e_depth_;
    eenv_.pop_back();
    return result;
  }

  const colored_graph& g_;
  eval_limits lim_;
  std::map<long long, form_state> states_;
  const formula* f_ = nullptr;
  form_state* st_ = nullptr;

  std::vector<vertex> venv_;
  std::vector<std::vector<uint8_t>> senv_;
  std::vector<std::vector<uint8_t>> eenv_;
  std::vector<uint8_t> x_flags_;
  std::vector<vertex> x_members_;
  std::unordered_map<int64_t, int> edge_ids_;
  int v_depth_ = 0;
  int s_depth_ = 0;
  int e_depth_ = 0;
};

// One-shot convenience wrapper.
inline bool model_check(const colored_graph& g, const formula& f, const configuration& x,
                        const std::vector<vertex>& vassign = {}) {
  model_checker mc(g);
  return mc.check(f, x, vassign);
}

}  // namespace tsd::logic
