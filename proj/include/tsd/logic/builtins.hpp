#pragma once

#include <string>
#include <vector>

#include "tsd/logic/ast.hpp"

namespace tsd::logic {

// Built-in formula families used by the reduction generators, plus the helper
// predicates they are assembled from. Color indices follow the generators:
//
//   stars/paths   C1 purple roots, C2 teal vertex-block, C3 black edge-roots,
//                 C4 gray edge-block, C5 green connectors
//   twincover     C1 purple vertex, C2 black arc, C3 yellow demand,
//                 C4 orange supply, C5 teal index, C6 brown reservoir
//   bandwidth     C1 purple, C2 yellow, C3 gray, C4 teal, C5 brown,
//                 C6 black, C7 orange

namespace detail {

inline int any_color(formula_builder& fb, const std::vector<std::string>& colors, int x) {
  std::vector<int> parts;
  for (const auto& c : colors) parts.push_back(fb.color(c, x));
  return fb.disj(parts);
}

inline int col367(formula_builder& fb, int x) { return any_color(fb, {"C3", "C6", "C7"}, x); }

// A walk of length exactly k between the two slots; with colored==true the
// intermediate vertices are confined to the gray/black/orange subgraph, which
// keeps the distance tests of one ladder from leaking into the next gadget.
inline int dist_chain(formula_builder& fb, int from, int to, int k, bool colored) {
  if (k <= 0) return fb.eq(from, to);
  if (k == 1) return fb.edge(from, to);
  return fb.exists("d" + std::to_string(k), [&](int z) {
    std::vector<int> cs{fb.edge(from, z)};
    if (colored) cs.push_back(col367(fb, z));
    cs.push_back(dist_chain(fb, z, to, k - 1, colored));
    return fb.conj(cs);
  });
}

// x and y lie in the same connected component of the gray/black/orange
// subgraph (MSO1: no subset separates them inside that subgraph).
inline int con367(formula_builder& fb, int x, int y) {
  int same = fb.eq(x, y);
  int s = fb.bind_set();
  std::vector<int> cs;
  cs.push_back(fb.set_member(s, x));
  cs.push_back(fb.lnot(fb.set_member(s, y)));
  cs.push_back(fb.forall(
      "cz", [&](int z) { return fb.implies(fb.set_member(s, z), col367(fb, z)); }));
  cs.push_back(fb.forall("cu", [&](int u) {
    return fb.forall("cv", [&](int v) {
      int ante = fb.conj({fb.set_member(s, u), col367(fb, u), fb.edge(u, v), col367(fb, v)});
      return fb.implies(ante, fb.set_member(s, v));
    });
  }));
  int separated = fb.exists_s("S", fb.conj(cs));
  return fb.lor(same, fb.conj({col367(fb, x), col367(fb, y), fb.lnot(separated)}));
}

// Token-free orange vertex x at (in-gadget) distance four from black vertex y.
inline int ctfc6(formula_builder& fb, int x, int y) {
  return fb.conj({fb.color("C7", x), fb.lnot(fb.free_set(x)), fb.color("C6", y),
                  dist_chain(fb, x, y, 4, true)});
}

// --- stars / paths ---

inline formula build_stars() {
  formula_builder fb;
  std::vector<std::string> all = {"C1", "C2", "C3", "C4", "C5"};
  auto colored = [&](int x) { return any_color(fb, all, x); };

  // no colored node carries a token
  int s1 = fb.forall("x", [&](int x) { return fb.implies(colored(x), fb.lnot(fb.free_set(x))); });

  // per block node: exactly one adjacent root whose uncolored neighborhood is
  // fully chosen-state, all other roots fully in the opposite state
  auto one_of = [&](const std::string& block_color, const std::string& root_color,
                    bool chosen_empty) {
    auto leaves_state = [&](int root, bool empty) {
      return fb.forall("z", [&](int z) {
        int ante = fb.land(fb.edge(root, z), fb.lnot(colored(z)));
        int val = fb.free_set(z);
        return fb.implies(ante, empty ? fb.lnot(val) : val);
      });
    };
    return fb.forall("t", [&](int t) {
      return fb.implies(
          fb.color(block_color, t), fb.exists("p", [&](int p) {
            std::vector<int> cs{fb.color(root_color, p), fb.edge(t, p),
                                leaves_state(p, chosen_empty)};
            cs.push_back(fb.forall("q", [&](int q) {
              int ante = fb.conj({fb.color(root_color, q), fb.edge(t, q), fb.lnot(fb.eq(q, p))});
              return fb.implies(ante, leaves_state(q, !chosen_empty));
            }));
            return fb.conj(cs);
          }));
    });
  };
  int s2 = one_of("C2", "C1", true);   // one vertex-gadget releases its leaves
  int s3 = one_of("C4", "C3", false);  // one edge-gadget fills its leaves
  return fb.take(fb.conj({s1, s2, s3}));
}

inline formula build_paths() {
  formula_builder fb;
  std::vector<std::string> blocks = {"C2", "C4", "C5"};
  auto colored = [&](int x) { return any_color(fb, blocks, x); };

  int p1 = fb.forall("x", [&](int x) { return fb.implies(colored(x), fb.lnot(fb.free_set(x))); });
  int p2 = fb.forall("t", [&](int t) {
    return fb.implies(fb.color("C2", t), fb.exists("p", [&](int p) {
                        return fb.conj(
                            {fb.edge(t, p), fb.lnot(colored(p)), fb.lnot(fb.free_set(p))});
                      }));
  });
  int p3 = fb.forall("t", [&](int t) {
    return fb.implies(fb.color("C4", t), fb.exists("p", [&](int p) {
                        return fb.conj({fb.edge(t, p), fb.lnot(colored(p)), fb.free_set(p)});
                      }));
  });
  // distance <= 2 inside the uncolored subgraph
  auto near2 = [&](int x, int z) {
    int direct = fb.edge(x, z);
    int via = fb.exists("y", [&](int y) {
      return fb.conj({fb.edge(x, y), fb.lnot(colored(y)), fb.edge(y, z)});
    });
    return fb.lor(direct, via);
  };
  int p4 = fb.forall("x", [&](int x) {
    int all_near = fb.forall("z", [&](int z) {
      int ante = fb.conj({fb.lnot(fb.eq(z, x)), fb.lnot(colored(z)), near2(x, z)});
      return fb.implies(ante, fb.free_set(z));
    });
    return fb.implies(fb.lnot(colored(x)), fb.iff(fb.free_set(x), all_near));
  });
  return fb.take(fb.conj({p1, p2, p3, p4}));
}

// --- twin cover ---

inline formula build_twincover() {
  formula_builder fb;
  int t1 = fb.forall("x", [&](int x) { return fb.implies(fb.color("C3", x), fb.free_set(x)); });
  int t2 = fb.forall(
      "x", [&](int x) { return fb.implies(fb.color("C6", x), fb.lnot(fb.free_set(x))); });

  // clique(z) is reachable as z itself plus the supply-colored neighbors of z
  auto clique_state = [&](int z, bool flipped) {
    int self = flipped ? fb.lnot(fb.free_set(z)) : fb.free_set(z);
    int others = fb.forall("w", [&](int w) {
      int orange = fb.implies(fb.color("C4", w),
                              flipped ? fb.lnot(fb.free_set(w)) : fb.free_set(w));
      int teal = fb.implies(fb.color("C5", w),
                            flipped ? fb.free_set(w) : fb.lnot(fb.free_set(w)));
      return fb.implies(fb.edge(z, w), fb.land(orange, teal));
    });
    return fb.land(self, others);
  };
  int t3 = fb.forall("p", [&](int p) {
    return fb.forall("a", [&](int a) {
      int guard = fb.conj({fb.color("C1", p), fb.color("C2", a), fb.exists("z0", [&](int z0) {
                             return fb.conj({fb.color("C4", z0), fb.edge(p, z0), fb.edge(a, z0)});
                           })});
      int pick = fb.exists("z", [&](int z) {
        std::vector<int> cs{fb.color("C4", z), fb.edge(p, z), fb.edge(a, z),
                            clique_state(z, true)};
        cs.push_back(fb.forall("z2", [&](int z2) {
          int other = fb.conj({fb.color("C4", z2), fb.edge(p, z2), fb.edge(a, z2),
                               fb.lnot(fb.eq(z2, z)), fb.lnot(fb.edge(z2, z))});
          return fb.implies(other, clique_state(z2, false));
        }));
        return fb.conj(cs);
      });
      return fb.implies(guard, pick);
    });
  });
  int t4 = fb.forall("x", [&](int x) {
    return fb.implies(fb.lor(fb.color("C1", x), fb.color("C2", x)), fb.lnot(fb.free_set(x)));
  });
  return fb.take(fb.conj({t1, t2, t3, t4}));
}

// --- bandwidth ---

inline formula build_bandwidth() {
  formula_builder fb;
  int b1 = fb.forall("x", [&](int x) {
    return fb.implies(any_color(fb, {"C3", "C1", "C5"}, x), fb.lnot(fb.free_set(x)));
  });
  int b2 = fb.forall("x", [&](int x) { return fb.implies(fb.color("C2", x), fb.free_set(x)); });
  int b3 = fb.forall("x", [&](int x) {
    int witness = fb.exists("y", [&](int y) {
      return fb.conj({fb.color("C7", y), fb.lnot(fb.free_set(y)), dist_chain(fb, x, y, 5, false)});
    });
    return fb.implies(fb.color("C4", x), fb.iff(fb.free_set(x), witness));
  });
  int b4 = fb.forall("x", [&](int x) {
    int body = fb.forall("y", [&](int y) {
      return fb.implies(fb.land(fb.color("C7", y), dist_chain(fb, x, y, 4, true)),
                        fb.iff(fb.free_set(x), fb.free_set(y)));
    });
    return fb.implies(fb.color("C7", x), body);
  });
  // per gray/black/orange component: exactly one rung pair of empty oranges
  int b5 = fb.forall("x", [&](int x) {
    int guard = fb.lor(fb.color("C6", x), fb.color("C7", x));
    int body = fb.exists("y1", [&](int y1) {
      std::vector<int> c1{fb.color("C7", y1), fb.lnot(fb.free_set(y1))};
      c1.push_back(fb.exists("u1", [&](int u1) {
        std::vector<int> c2{fb.color("C6", u1), dist_chain(fb, y1, u1, 4, true)};
        c2.push_back(fb.exists("y2", [&](int y2) {
          std::vector<int> c3{fb.color("C7", y2), fb.lnot(fb.free_set(y2)),
                              fb.lnot(fb.eq(y1, y2))};
          c3.push_back(fb.exists("u2", [&](int u2) {
            std::vector<int> c4{fb.color("C6", u2),
                                fb.lnot(fb.eq(u1, u2)),
                                dist_chain(fb, y2, u2, 4, true),
                                dist_chain(fb, u1, u2, 6, true),
                                con367(fb, x, y1),
                                con367(fb, x, y2),
                                con367(fb, x, u1),
                                con367(fb, x, u2)};
            c4.push_back(fb.forall("v", [&](int v) {
              int has_empty = fb.exists("w", [&](int w) {
                return fb.conj({fb.color("C7", w), fb.lnot(fb.free_set(w)),
                                dist_chain(fb, w, v, 4, true)});
              });
              int ante = fb.conj({fb.color("C6", v), has_empty, con367(fb, x, v)});
              return fb.implies(ante, fb.lor(fb.eq(v, u1), fb.eq(v, u2)));
            }));
            return fb.conj(c4);
          }));
          return fb.conj(c3);
        }));
        return fb.conj(c2);
      }));
      return fb.conj(c1);
    });
    return fb.implies(guard, body);
  });
  return fb.take(fb.conj({b1, b2, b3, b4, b5}));
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  return {"S_STARS", "P_PATHS", "T_TWINCOVER", "B_BANDWIDTH", "DIST_1", "DIST_2",
          "DIST_3",  "DIST_4",  "DIST_5",      "DIST_6",      "COL_367", "CON_367",
          "CTFC6"};
}

inline formula builtin(const std::string& name) {
  if (name == "S_STARS") return detail::build_stars();
  if (name == "P_PATHS") return detail::build_paths();
  if (name == "T_TWINCOVER") return detail::build_twincover();
  if (name == "B_BANDWIDTH") return detail::build_bandwidth();
  if (name.rfind("DIST_", 0) == 0 && name.size() == 6 && name[5] >= '1' && name[5] <= '6') {
    formula_builder fb({"x", "y"});
    return fb.take(detail::dist_chain(fb, 0, 1, name[5] - '0', false));
  }
  if (name == "COL_367") {
    formula_builder fb({"x"});
    return fb.take(detail::col367(fb, 0));
  }
  if (name == "CON_367") {
    formula_builder fb({"x", "y"});
    return fb.take(detail::con367(fb, 0, 1));
  }
  if (name == "CTFC6") {
    formula_builder fb({"x", "y"});
    return fb.take(detail::ctfc6(fb, 0, 1));
  }
  fail(errc::unknown_name, name);
}

}  // namespace tsd::logic
