#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tsd/logic/ast.hpp"

namespace tsd::logic {

// Grammar (ASCII):
//   quantifiers  exists x. / forall x. / existsS Y. / forallS Y. / existsE Z. / forallE Z.
//   connectives  ~  &  |  ->  <->   with precedence ~ > & > | > -> > <->,
//                implications right-associative; quantifier bodies extend as
//                far right as possible.
//   atoms        E(x,y)  eq(x,y)  X(x)  Y(x)  Z(x,y)  C(x) for any color name C
class parser {
 public:
  explicit parser(std::string text, std::vector<std::string> free_vertex_vars = {})
      : text_(std::move(text)), builder_(free_vertex_vars) {
    for (size_t i = 0; i < free_vertex_vars.size(); ++i) {
      if (name_in_scope(free_vertex_vars[i]))
        fail(errc::duplicate_binder, "free variable " + free_vertex_vars[i]);
      vscope_.push_back({free_vertex_vars[i], static_cast<int>(i)});
    }
  }

  formula parse() {
    skip_ws();
    int root = parse_iff();
    skip_ws();
    if (pos_ < text_.size()) syntax_error("unexpected trailing input");
    return builder_.take(root);
  }

 private:
  struct binding {
    std::string name;
    int slot;
  };

  [[noreturn]] void syntax_error(const std::string& what) {
    fail(errc::syntax_error, what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      // keyword tokens must not run into an identifier
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        size_t end = pos_ + tok.size();
        if (end < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
          return false;
      }
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) syntax_error("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  int parse_iff() {
    int lhs = parse_implies();
    if (eat("<->")) return builder_.iff(lhs, parse_iff());
    return lhs;
  }

  int parse_implies() {
    int lhs = parse_or();
    if (eat("->")) return builder_.implies(lhs, parse_implies());
    return lhs;
  }

  int parse_or() {
    int lhs = parse_and();
    while (true) {
      skip_ws();
      // '|' but not part of '->' etc.
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = builder_.lor(lhs, parse_and());
      } else {
        return lhs;
      }
    }
  }

  int parse_and() {
    int lhs = parse_unary();
    while (eat("&")) lhs = builder_.land(lhs, parse_unary());
    return lhs;
  }

  int parse_unary() {
    if (eat("~")) return builder_.lnot(parse_unary());
    if (eat("existsS")) return parse_quantifier(node_kind::exists_s);
    if (eat("forallS")) return parse_quantifier(node_kind::forall_s);
    if (eat("existsE")) return parse_quantifier(node_kind::exists_e);
    if (eat("forallE")) return parse_quantifier(node_kind::forall_e);
    if (eat("exists")) return parse_quantifier(node_kind::exists_v);
    if (eat("forall")) return parse_quantifier(node_kind::forall_v);
    return parse_atom();
  }

  bool name_in_scope(const std::string& name) const {
    if (name == "X" || name == "E" || name == "eq") return true;
    for (auto& b : vscope_)
      if (b.name == name) return true;
    for (auto& b : sscope_)
      if (b.name == name) return true;
    for (auto& b : escope_)
      if (b.name == name) return true;
    return false;
  }

  int parse_quantifier(node_kind kind) {
    std::string name = ident();
    if (name_in_scope(name))
      fail(errc::duplicate_binder, name + " rebound at offset " + std::to_string(pos_));
    skip_ws();
    if (!eat(".")) syntax_error("expected '.' after quantified variable");

    int body;
    if (is_vertex_quantifier(kind)) {
      vscope_.push_back({name, builder_.bind_vertex()});
      body = parse_iff();
      vscope_.pop_back();
      return kind == node_kind::exists_v ? builder_.exists_v(name, body)
                                         : builder_.forall_v(name, body);
    }
    if (is_set_quantifier(kind)) {
      sscope_.push_back({name, builder_.bind_set()});
      body = parse_iff();
      sscope_.pop_back();
      return kind == node_kind::exists_s ? builder_.exists_s(name, body)
                                         : builder_.forall_s(name, body);
    }
    escope_.push_back({name, builder_.bind_edge_set()});
    body = parse_iff();
    escope_.pop_back();
    return kind == node_kind::exists_e ? builder_.exists_e(name, body)
                                       : builder_.forall_e(name, body);
  }

  int vertex_slot(const std::string& name) {
    for (auto it = vscope_.rbegin(); it != vscope_.rend(); ++it)
      if (it->name == name) return it->slot;
    fail(errc::unbound_variable, name + " at offset " + std::to_string(pos_));
  }

  const binding* find(const std::vector<binding>& scope, const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }

  int parse_atom() {
    if (eat("(")) {
      int inner = parse_iff();
      if (!eat(")")) syntax_error("expected ')'");
      return inner;
    }
    std::string name = ident();
    skip_ws();
    if (!eat("(")) syntax_error("expected '(' after '" + name + "'");
    std::string arg1 = ident();
    std::string arg2;
    bool binary = false;
    if (eat(",")) {
      binary = true;
      arg2 = ident();
    }
    if (!eat(")")) syntax_error("expected ')'");

    if (binary) {
      int x = vertex_slot(arg1);
      int y = vertex_slot(arg2);
      if (name == "E") return builder_.edge(x, y);
      if (name == "eq") return builder_.eq(x, y);
      if (const binding* b = find(escope_, name)) return builder_.edge_set_member(b->slot, x, y);
      syntax_error("'" + name + "' is not a binary predicate");
    }
    int x = vertex_slot(arg1);
    if (name == "X") return builder_.free_set(x);
    if (const binding* b = find(sscope_, name)) return builder_.set_member(b->slot, x);
    if (find(escope_, name) || name == "E" || name == "eq")
      syntax_error("'" + name + "' applied to one argument");
    if (find(vscope_, name)) syntax_error("vertex variable '" + name + "' used as predicate");
    return builder_.color(name, x);
  }

  std::string text_;
  size_t pos_ = 0;
  formula_builder builder_;
  std::vector<binding> vscope_, sscope_, escope_;
};

inline formula parse(const std::string& text, std::vector<std::string> free_vertex_vars = {}) {
  return parser(text, std::move(free_vertex_vars)).parse();
}

// Precedence-aware printer; output reparses to a structurally equal formula.
class printer {
 public:
  explicit printer(const formula& f) : f_(f) {
    for (auto& v : f.free_vertex_vars) vnames_.push_back(v);
  }

  std::string str() { return rec(f_.root, 0); }

 private:
  static int prec(node_kind k) {
    switch (k) {
      case node_kind::iff: return 1;
      case node_kind::implies: return 2;
      case node_kind::lor: return 3;
      case node_kind::land: return 4;
      case node_kind::lnot: return 5;
      default: return is_quantifier(k) ? 1 : 6;
    }
  }

  std::string fresh_name(const std::string& hint, char fallback) {
    std::string cand = hint;
    if (cand.empty()) cand = std::string(1, fallback) + std::to_string(counter_);
    while (cand == "X" || cand == "E" || cand == "eq" || used(cand))
      cand = (hint.empty() ? std::string(1, fallback) : hint) + "_" + std::to_string(++counter_);
    return cand;
  }

  bool used(const std::string& n) const {
    for (auto& v : vnames_)
      if (v == n) return true;
    for (auto& v : snames_)
      if (v == n) return true;
    for (auto& v : enames_)
      if (v == n) return true;
    return false;
  }

  std::string rec(int id, int parent_prec) {
    const node& nd = f_.at(id);
    std::string out;
    int myprec = prec(nd.kind);
    switch (nd.kind) {
      case node_kind::atom_edge:
        return "E(" + vnames_[nd.v1] + "," + vnames_[nd.v2] + ")";
      case node_kind::atom_eq:
        return "eq(" + vnames_[nd.v1] + "," + vnames_[nd.v2] + ")";
      case node_kind::atom_color:
        return nd.name + "(" + vnames_[nd.v1] + ")";
      case node_kind::atom_free_set:
        return "X(" + vnames_[nd.v1] + ")";
      case node_kind::atom_set_member:
        return snames_[nd.set_slot] + "(" + vnames_[nd.v1] + ")";
      case node_kind::atom_edge_set_member:
        return enames_[nd.set_slot] + "(" + vnames_[nd.v1] + "," + vnames_[nd.v2] + ")";
      case node_kind::lnot:
        out = "~" + rec(nd.a, myprec);
        break;
      case node_kind::land:
        out = rec(nd.a, myprec - 1) + " & " + rec(nd.b, myprec);
        break;
      case node_kind::lor:
        out = rec(nd.a, myprec - 1) + " | " + rec(nd.b, myprec);
        break;
      case node_kind::implies:
        out = rec(nd.a, myprec) + " -> " + rec(nd.b, myprec - 1);
        break;
      case node_kind::iff:
        out = rec(nd.a, myprec) + " <-> " + rec(nd.b, myprec - 1);
        break;
      default: {
        std::string kw;
        std::vector<std::string>* scope;
        char fb;
        switch (nd.kind) {
          case node_kind::exists_v: kw = "exists"; scope = &vnames_; fb = 'x'; break;
          case node_kind::forall_v: kw = "forall"; scope = &vnames_; fb = 'x'; break;
          case node_kind::exists_s: kw = "existsS"; scope = &snames_; fb = 'Y'; break;
          case node_kind::forall_s: kw = "forallS"; scope = &snames_; fb = 'Y'; break;
          case node_kind::exists_e: kw = "existsE"; scope = &enames_; fb = 'Z'; break;
          default: kw = "forallE"; scope = &enames_; fb = 'Z'; break;
        }
        std::string nm = fresh_name(nd.name, fb);
        scope->push_back(nm);
        out = kw + " " + nm + ". " + rec(nd.a, 0);
        scope->pop_back();
        break;
      }
    }
    if (myprec <= parent_prec) out = "(" + out + ")";
    return out;
  }

  const formula& f_;
  std::vector<std::string> vnames_, snames_, enames_;
  int counter_ = 0;
};

inline std::string to_string(const formula& f) { return printer(f).str(); }

}  // namespace tsd::logic
