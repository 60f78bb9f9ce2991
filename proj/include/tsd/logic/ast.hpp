#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "tsd/errors.hpp"

namespace tsd::logic {

enum class node_kind : uint8_t {
  atom_edge,             // E(x,y)
  atom_eq,               // eq(x,y)
  atom_color,            // C(x)
  atom_free_set,         // X(x)
  atom_set_member,       // Y(x) for a bound set variable Y
  atom_edge_set_member,  // Z(x,y) for a bound edge-set variable Z
  lnot,
  land,
  lor,
  implies,
  iff,
  exists_v,
  forall_v,
  exists_s,
  forall_s,
  exists_e,
  forall_e,
};

inline bool is_quantifier(node_kind k) {
  return k >= node_kind::exists_v && k <= node_kind::forall_e;
}
inline bool is_vertex_quantifier(node_kind k) {
  return k == node_kind::exists_v || k == node_kind::forall_v;
}
inline bool is_set_quantifier(node_kind k) {
  return k == node_kind::exists_s || k == node_kind::forall_s;
}
inline bool is_edge_set_quantifier(node_kind k) {
  return k == node_kind::exists_e || k == node_kind::forall_e;
}

// Variable references are resolved to slots: free vertex variables occupy
// slots 0..t-1, quantifiers push further slots in binding order. Vertex, set,
// and edge-set variables index separate slot spaces.
struct node {
  node_kind kind;
  int a = -1;         // first child (or body for quantifiers)
  int b = -1;         // second child
  int v1 = -1;        // first vertex-variable slot
  int v2 = -1;        // second vertex-variable slot
  int set_slot = -1;  // set / edge-set variable slot
  std::string name;   // color name, or binder name for quantifiers
};

class formula {
 public:
  std::vector<node> nodes;
  int root = -1;
  std::vector<std::string> free_vertex_vars;  // declared free vertex variables
  long long uid = -1;                         // distinct per built formula; shared by copies

  const node& at(int id) const { return nodes[id]; }
  bool valid() const { return root >= 0 && root < static_cast<int>(nodes.size()); }
};

namespace detail {
inline bool equal_rec(const formula& f, int a, const formula& g, int b) {
  const node& x = f.at(a);
  const node& y = g.at(b);
  if (x.kind != y.kind || x.v1 != y.v1 || x.v2 != y.v2 || x.set_slot != y.set_slot) return false;
  if (x.kind == node_kind::atom_color && x.name != y.name) return false;
  if (x.a >= 0 || y.a >= 0) {
    if ((x.a >= 0) != (y.a >= 0) || (x.a >= 0 && !equal_rec(f, x.a, g, y.a))) return false;
  }
  if (x.b >= 0 || y.b >= 0) {
    if ((x.b >= 0) != (y.b >= 0) || (x.b >= 0 && !equal_rec(f, x.b, g, y.b))) return false;
  }
  return true;
}
}  // namespace detail

// Structural equality up to renaming of bound variables (slots are de Bruijn
// style, so binder names do not participate).
inline bool structurally_equal(const formula& f, const formula& g) {
  if (!f.valid() || !g.valid()) return f.valid() == g.valid();
  if (f.free_vertex_vars.size() != g.free_vertex_vars.size()) return false;
  return detail::equal_rec(f, f.root, g, g.root);
}

// Incremental construction of formulas. Binder slots are assigned in the order
// bind_* is called; atoms reference slots directly.
class formula_builder {
 public:
  explicit formula_builder(std::vector<std::string> free_vvars = {}) {
    f_.free_vertex_vars = std::move(free_vvars);
    next_v_ = static_cast<int>(f_.free_vertex_vars.size());
  }

  int free_var_slot(const std::string& name) const {
    for (size_t i = 0; i < f_.free_vertex_vars.size(); ++i)
      if (f_.free_vertex_vars[i] == name) return static_cast<int>(i);
    fail(errc::unbound_variable, name);
  }

  int edge(int x, int y) { return add({node_kind::atom_edge, -1, -1, x, y}); }
  int eq(int x, int y) { return add({node_kind::atom_eq, -1, -1, x, y}); }
  int color(const std::string& c, int x) {
    return add({node_kind::atom_color, -1, -1, x, -1, -1, c});
  }
  int free_set(int x) { return add({node_kind::atom_free_set, -1, -1, x}); }
  int set_member(int set_slot, int x) {
    return add({node_kind::atom_set_member, -1, -1, x, -1, set_slot});
  }
  int edge_set_member(int set_slot, int x, int y) {
    return add({node_kind::atom_edge_set_member, -1, -1, x, y, set_slot});
  }

  int lnot(int a) { return add({node_kind::lnot, a}); }
  int land(int a, int b) { return add({node_kind::land, a, b}); }
  int lor(int a, int b) { return add({node_kind::lor, a, b}); }
  int implies(int a, int b) { return add({node_kind::implies, a, b}); }
  int iff(int a, int b) { return add({node_kind::iff, a, b}); }

  int conj(const std::vector<int>& parts) { return fold(parts, &formula_builder::land); }
  int disj(const std::vector<int>& parts) { return fold(parts, &formula_builder::lor); }

  // Quantifiers: obtain the slot first, build the body, then close.
  int bind_vertex() { return next_v_++; }
  int bind_set() { return next_s_++; }
  int bind_edge_set() { return next_e_++; }
  void release_vertex() { --next_v_; }
  void release_set() { --next_s_; }
  void release_edge_set() { --next_e_; }

  int exists_v(const std::string& name, int body) {
    release_vertex();
    return add({node_kind::exists_v, body, -1, -1, -1, -1, name});
  }
  int forall_v(const std::string& name, int body) {
    release_vertex();
    return add({node_kind::forall_v, body, -1, -1, -1, -1, name});
  }
  int exists_s(const std::string& name, int body) {
    release_set();
    return add({node_kind::exists_s, body, -1, -1, -1, -1, name});
  }
  int forall_s(const std::string& name, int body) {
    release_set();
    return add({node_kind::forall_s, body, -1, -1, -1, -1, name});
  }
  int exists_e(const std::string& name, int body) {
    release_edge_set();
    return add({node_kind::exists_e, body, -1, -1, -1, -1, name});
  }
  int forall_e(const std::string& name, int body) {
    release_edge_set();
    return add({node_kind::forall_e, body, -1, -1, -1, -1, name});
  }

  // Convenience: vertex quantifier over a body generated from the fresh slot.
  template <typename Fn>
  int exists(const std::string& name, Fn&& body_of_slot) {
    int slot = bind_vertex();
    return exists_v(name, body_of_slot(slot));
  }
  template <typename Fn>
  int forall(const std::string& name, Fn&& body_of_slot) {
    int slot = bind_vertex();
    return forall_v(name, body_of_slot(slot));
  }

  formula take(int root) {
    static std::atomic<long long> next_uid{0};
    f_.root = root;
    f_.uid = next_uid.fetch_add(1);
    return std::move(f_);
  }

  // Copies another formula's subtree into this arena, remapping slots: vertex
  // slots shift by v_off, set slots by s_off, edge-set slots by e_off, and the
  // free set atom X may be redirected to a bound set slot (x_to >= 0).
  int import(const formula& src, int id, int v_off, int s_off, int e_off, int x_to = -1) {
    const node& nd = src.at(id);
    node copy = nd;
    if (copy.v1 >= 0) copy.v1 += v_off;
    if (copy.v2 >= 0) copy.v2 += v_off;
    if (copy.set_slot >= 0)
      copy.set_slot += is_edge_set_member(nd) ? e_off : s_off;
    if (nd.kind == node_kind::atom_free_set && x_to >= 0) {
      copy.kind = node_kind::atom_set_member;
      copy.set_slot = x_to;
    }
    if (nd.a >= 0) copy.a = import(src, nd.a, v_off, s_off, e_off, x_to);
    if (nd.b >= 0) copy.b = import(src, nd.b, v_off, s_off, e_off, x_to);
    f_.nodes.push_back(copy);
    return static_cast<int>(f_.nodes.size()) - 1;
  }

 private:
  static bool is_edge_set_member(const node& n) {
    return n.kind == node_kind::atom_edge_set_member || n.kind == node_kind::exists_e ||
           n.kind == node_kind::forall_e;
  }

  int fold(const std::vector<int>& parts, int (formula_builder::*op)(int, int)) {
    if (parts.empty()) fail(errc::invalid_instance, "empty connective");
    int acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = (this->*op)(acc, parts[i]);
    return acc;
  }

  int add(node n) {
    f_.nodes.push_back(std::move(n));
    return static_cast<int>(f_.nodes.size()) - 1;
  }

  formula f_;
  int next_v_ = 0;
  int next_s_ = 0;
  int next_e_ = 0;
};

}  // namespace tsd::logic
