#pragma once

#include "tsd/logic/ast.hpp"

namespace tsd::logic {

enum class fragment { fo, mso1, mso2 };

inline const char* fragment_name(fragment f) {
  switch (f) {
    case fragment::fo: return "FO";
    case fragment::mso1: return "MSO1";
    default: return "MSO2";
  }
}

struct formula_stats {
  fragment frag = fragment::fo;
  int quantifier_rank = 0;       // max nesting depth of quantifiers of any kind
  int set_quantifier_count = 0;  // vertex-set quantifiers
  int vertex_quantifier_count = 0;
  int edge_set_quantifier_count = 0;

  // q(phi) = 2^{q_s} * q_v
  long long q_phi() const { return (1LL << set_quantifier_count) * vertex_quantifier_count; }
};

namespace detail {
inline int stats_rec(const formula& f, int id, formula_stats& st) {
  const node& nd = f.at(id);
  int depth = 0;
  if (nd.a >= 0) depth = stats_rec(f, nd.a, st);
  if (nd.b >= 0) depth = std::max(depth, stats_rec(f, nd.b, st));
  if (is_quantifier(nd.kind)) {
    if (is_vertex_quantifier(nd.kind)) ++st.vertex_quantifier_count;
    if (is_set_quantifier(nd.kind)) ++st.set_quantifier_count;
    if (is_edge_set_quantifier(nd.kind)) ++st.edge_set_quantifier_count;
    return depth + 1;
  }
  return depth;
}
}  // namespace detail

inline formula_stats stats(const formula& f) {
  formula_stats st;
  st.quantifier_rank = detail::stats_rec(f, f.root, st);
  if (st.edge_set_quantifier_count > 0)
    st.frag = fragment::mso2;
  else if (st.set_quantifier_count > 0)
    st.frag = fragment::mso1;
  else
    st.frag = fragment::fo;
  return st;
}

}  // namespace tsd::logic
