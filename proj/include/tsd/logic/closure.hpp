#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "tsd/config.hpp"
#include "tsd/graph.hpp"
#include "tsd/logic/ast.hpp"
#include "tsd/logic/eval.hpp"

namespace tsd::logic {

enum class step_model { slide, jump };

namespace detail {

inline int set_atom(formula_builder& fb, int set_ref, int v) {
  return set_ref < 0 ? fb.free_set(v) : fb.set_member(set_ref, v);
}

// One transformation step between set variables: either equality or moving
// exactly one token (along an edge in the slide model).
inline int step_formula(formula_builder& fb, int from_ref, int to_ref, step_model model) {
  int stay = fb.forall("w", [&](int w) {
    return fb.iff(set_atom(fb, from_ref, w), set_atom(fb, to_ref, w));
  });
  int move = fb.exists("u", [&](int u) {
    return fb.exists("v", [&](int v) {
      std::vector<int> cs;
      if (model == step_model::slide) cs.push_back(fb.edge(u, v));
      cs.push_back(set_atom(fb, from_ref, u));
      cs.push_back(fb.lnot(set_atom(fb, from_ref, v)));
      cs.push_back(fb.lnot(set_atom(fb, to_ref, u)));
      cs.push_back(set_atom(fb, to_ref, v));
      cs.push_back(fb.forall("w", [&](int w) {
        return fb.implies(fb.land(fb.lnot(fb.eq(w, u)), fb.lnot(fb.eq(w, v))),
                          fb.iff(set_atom(fb, from_ref, w), set_atom(fb, to_ref, w)));
      }));
      return fb.conj(cs);
    });
  });
  return fb.lor(stay, move);
}

}  // namespace detail

// psi(X): there are configurations X = X_1, X_2, ..., X_{b+1}, consecutive
// ones equal or one slide (jump) apart, with phi holding of the last. Thus
// G |= psi(S) iff (G, S, b, phi) is a yes-instance.
inline formula budget_closure(const formula& phi, int b, step_model model = step_model::slide) {
  if (b < 0) fail(errc::negative_budget, std::to_string(b));
  if (!phi.free_vertex_vars.empty())
    fail(errc::invalid_instance, "budget closure needs X as the only free variable");
  formula_builder fb;
  if (b == 0) return fb.take(fb.import(phi, phi.root, 0, 0, 0));

  std::vector<int> slots;
  for (int i = 0; i < b; ++i) slots.push_back(fb.bind_set());
  std::vector<int> parts;
  int prev = -1;  // the free set X
  for (int i = 0; i < b; ++i) {
    parts.push_back(detail::step_formula(fb, prev, slots[i], model));
    prev = slots[i];
  }
  parts.push_back(fb.import(phi, phi.root, 0, b, 0, slots.back()));
  int body = fb.conj(parts);
  for (int i = b - 1; i >= 0; --i) body = fb.exists_s("X" + std::to_string(i + 2), body);
  return fb.take(body);
}

// Same verdict as evaluating the expanded closure, obtained by searching the
// successor configurations directly (breadth-first, at most b steps).
inline bool closure_decide_lazy(const colored_graph& g, const formula& phi,
                                const configuration& start, int b,
                                step_model model = step_model::slide) {
  if (b < 0) fail(errc::negative_budget, std::to_string(b));
  if (g.n() > 62) fail(errc::search_space_too_large, "lazy closure needs n <= 62");
  model_checker mc(g);

  auto to_mask = [](const configuration& c) {
    uint64_t m = 0;
    for (vertex v : c) m |= 1ull << v;
    return m;
  };
  auto to_config = [&](uint64_t m) {
    std::vector<vertex> vs;
    for (vertex v = 0; v < g.n(); ++v)
      if (m >> v & 1) vs.push_back(v);
    return configuration(std::move(vs));
  };

  std::unordered_set<uint64_t> seen;
  std::vector<uint64_t> frontier{to_mask(start)};
  seen.insert(frontier[0]);
  for (int depth = 0; depth <= b; ++depth) {
    std::vector<uint64_t> next;
    for (uint64_t cur : frontier) {
      if (mc.check(phi, to_config(cur))) return true;
      if (depth == b) continue;
      for (vertex u = 0; u < g.n(); ++u) {
        if (!(cur >> u & 1)) continue;
        if (model == step_model::slide) {
          for (vertex v : g.neighbors(u)) {
            if (cur >> v & 1) continue;
            uint64_t nxt = (cur ^ (1ull << u)) | (1ull << v);
            if (seen.insert(nxt).second) next.push_back(nxt);
          }
        } else {
          for (vertex v = 0; v < g.n(); ++v) {
            if (cur >> v & 1) continue;
            uint64_t nxt = (cur ^ (1ull << u)) | (1ull << v);
            if (seen.insert(nxt).second) next.push_back(nxt);
          }
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return false;
}

// Dispatcher: small budgets run through the materialized formula, larger ones
// through the lazy search (the expanded AST grows exponentially with b while
// the semantics coincide).
inline bool closure_decide(const colored_graph& g, const formula& phi, const configuration& start,
                           int b, step_model model = step_model::slide) {
  if (b <= 3) {
    formula psi = budget_closure(phi, b, model);
    model_checker mc(g);
    return mc.check(psi, start);
  }
  return closure_decide_lazy(g, phi, start, b, model);
}

}  // namespace tsd::logic
