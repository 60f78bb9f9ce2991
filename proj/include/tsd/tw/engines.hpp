#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsd/logic/ast.hpp"
#include "tsd/logic/eval.hpp"
#include "tsd/logic/stats.hpp"
#include "tsd/tw/structure.hpp"

namespace tsd::tw {

// Logical-type engines. A handle stands for the "type" of a boundaried,
// token-marked, colored structure; composing the handles of two compatible
// parts must give the handle of their glued union, and root acceptance must
// reflect truth of the formula on the represented structure.

// Engine A: handles are canonical forms under boundary/color/token-preserving
// isomorphism; composition glues stored representatives. Exact for any logic.
class canonical_subgraph_engine {
 public:
  using handle = int;

  explicit canonical_subgraph_engine(std::vector<std::string> color_universe)
      : colors_(std::move(color_universe)) {}

  handle type_of(const boundaried_structure& s) {
    std::string key = canonical_key(s);
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;
    int id = static_cast<int>(reps_.size());
    reps_.push_back(s);
    by_key_.emplace(std::move(key), id);
    return id;
  }

  const boundaried_structure& rep(handle h) const { return reps_[h]; }

  handle compose(handle a, handle b) { return type_of(glue(reps_[a], reps_[b])); }

  handle forget_boundary(handle h, size_t pos) {
    return type_of(drop_boundary(reps_[h], pos));
  }

  bool root_accepts(handle h, const logic::formula& phi) {
    auto it = accept_cache_.find({h, &phi});
    if (it != accept_cache_.end()) return it->second;
    configuration tokens;
    colored_graph g = to_graph(reps_[h], colors_, &tokens);
    std::vector<vertex> vassign(reps_[h].boundary.begin(), reps_[h].boundary.end());
    bool ok = logic::model_check(g, phi, tokens, vassign);
    accept_cache_.emplace(std::make_pair(h, &phi), ok);
    return ok;
  }

  const std::vector<std::string>& color_universe() const { return colors_; }
  int num_types() const { return static_cast<int>(reps_.size()); }

 private:
  std::vector<std::string> colors_;
  std::vector<boundaried_structure> reps_;
  std::unordered_map<std::string, int> by_key_;
  std::map<std::pair<int, const logic::formula*>, bool> accept_cache_;
};

// Engine B (FO only): handles are equivalence classes under the q-round
// Ehrenfeucht-Fraisse game on boundaried token-marked colored structures with
// the boundary pinned. Coarser than engine A, must yield the same verdicts.
class ef_game_engine {
 public:
  using handle = int;

  ef_game_engine(std::vector<std::string> color_universe, int rank)
      : colors_(std::move(color_universe)), rank_(rank) {}

  handle type_of(const boundaried_structure& s) {
    for (int id = 0; id < static_cast<int>(reps_.size()); ++id)
      if (reps_[id].boundary.size() == s.boundary.size() && equivalent(reps_[id], s)) {
        merged_pairs_.push_back({id, s});
        return id;
      }
    reps_.push_back(s);
    return static_cast<int>(reps_.size()) - 1;
  }

  const boundaried_structure& rep(handle h) const { return reps_[h]; }

  handle compose(handle a, handle b) { return type_of(glue(reps_[a], reps_[b])); }

  handle forget_boundary(handle h, size_t pos) {
    return type_of(drop_boundary(reps_[h], pos));
  }

  bool root_accepts(handle h, const logic::formula& phi) {
    auto st = logic::stats(phi);
    if (st.frag != logic::fragment::fo)
      fail(errc::fragment_unsupported, "EF-game engine handles FO only");
    if (st.quantifier_rank > rank_)
      fail(errc::fragment_unsupported, "formula rank exceeds the engine's game depth");
    configuration tokens;
    colored_graph g = to_graph(reps_[h], colors_, &tokens);
    std::vector<vertex> vassign(reps_[h].boundary.begin(), reps_[h].boundary.end());
    return logic::model_check(g, phi, tokens, vassign);
  }

  // q-round game equivalence with the boundary (plus earlier picks) pinned.
  bool equivalent(const boundaried_structure& a, const boundaried_structure& b) {
    std::vector<int> ta(a.boundary), tb(b.boundary);
    return game(a, b, ta, tb, rank_);
  }

  // structures recorded as equal to an existing class representative
  const std::vector<std::pair<int, boundaried_structure>>& merged_pairs() const {
    return merged_pairs_;
  }

  const std::vector<std::string>& color_universe() const { return colors_; }
  int num_types() const { return static_cast<int>(reps_.size()); }
  int rank() const { return rank_; }

 private:
  static bool has_edge(const boundaried_structure& s, int u, int v) {
    auto p = std::minmax(u, v);
    return std::binary_search(s.edges.begin(), s.edges.end(),
                              std::make_pair(p.first, p.second));
  }

  // atomic equivalence of the pinned tuples
  static bool partial_iso(const boundaried_structure& a, const boundaried_structure& b,
                          const std::vector<int>& ta, const std::vector<int>& tb) {
    for (size_t i = 0; i < ta.size(); ++i) {
      if (a.colors[ta[i]] != b.colors[tb[i]] || a.token[ta[i]] != b.token[tb[i]]) return false;
      for (size_t j = i + 1; j < ta.size(); ++j) {
        if ((ta[i] == ta[j]) != (tb[i] == tb[j])) return false;
        if (has_edge(a, ta[i], ta[j]) != has_edge(b, tb[i], tb[j])) return false;
      }
    }
    return true;
  }

  bool game(const boundaried_structure& a, const boundaried_structure& b, std::vector<int>& ta,
            std::vector<int>& tb, int rounds) {
    if (!partial_iso(a, b, ta, tb)) return false;
    if (rounds == 0) return true;
    // spoiler picks in a, duplicator answers in b; then the mirrored game
    for (int side = 0; side < 2; ++side) {
      const boundaried_structure& s = side == 0 ? a : b;
      const boundaried_structure& o = side == 0 ? b : a;
      std::vector<int>& ts = side == 0 ? ta : tb;
      std::vector<int>& to = side == 0 ? tb : ta;
      for (int pick = 0; pick < s.n; ++pick) {
        ts.push_back(pick);
        bool answered = false;
        for (int resp = 0; resp < o.n && !answered; ++resp) {
          to.push_back(resp);
          answered = game(a, b, ta, tb, rounds - 1);
          to.pop_back();
        }
        ts.pop_back();
        if (!answered) return false;
      }
    }
    return true;
  }

  std::vector<std::string> colors_;
  int rank_;
  std::vector<boundaried_structure> reps_;
  std::vector<std::pair<int, boundaried_structure>> merged_pairs_;
};

}  // namespace tsd::tw
