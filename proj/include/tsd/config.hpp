#pragma once

#include <algorithm>
#include <vector>

#include "tsd/errors.hpp"
#include "tsd/graph.hpp"

namespace tsd {

// A set of token positions (one token per vertex).
class configuration {
 public:
  configuration() = default;
  explicit configuration(std::vector<vertex> vs) : v_(std::move(vs)) {
    std::sort(v_.begin(), v_.end());
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
      fail(errc::invalid_instance, "duplicate token vertex");
  }

  int size() const { return static_cast<int>(v_.size()); }
  bool empty() const { return v_.empty(); }
  bool contains(vertex v) const { return std::binary_search(v_.begin(), v_.end(), v); }
  const std::vector<vertex>& vertices() const { return v_; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const configuration& o) const { return v_ == o.v_; }
  bool operator!=(const configuration& o) const { return v_ != o.v_; }
  bool operator<(const configuration& o) const { return v_ < o.v_; }

 private:
  std::vector<vertex> v_;
};

struct transformation_sequence {
  std::vector<std::pair<vertex, vertex>> slides;  // (from, to), each along an edge

  int length() const { return static_cast<int>(slides.size()); }
  void push(vertex from, vertex to) { slides.emplace_back(from, to); }
  bool operator==(const transformation_sequence& o) const { return slides == o.slides; }
};

// Plays a sequence in the discovery sliding model: transient multiplicities are
// fine, but the final multiset must collapse to a set.
inline configuration apply_sequence(const colored_graph& g, const configuration& s,
                                    const transformation_sequence& seq) {
  std::vector<int> count(g.n(), 0);
  for (vertex v : s) {
    if (v < 0 || v >= g.n()) fail(errc::invalid_instance, "token off the graph");
    ++count[v];
  }
  for (auto [from, to] : seq.slides) {
    if (from < 0 || from >= g.n() || to < 0 || to >= g.n())
      fail(errc::non_edge_slide, "slide endpoint out of range");
    if (!g.has_edge(from, to))
      fail(errc::non_edge_slide,
           "(" + std::to_string(from) + "," + std::to_string(to) + ") is not an edge");
    if (count[from] == 0)
      fail(errc::empty_source_vertex, "no token on vertex " + std::to_string(from));
    --count[from];
    ++count[to];
  }
  std::vector<vertex> out;
  for (vertex v = 0; v < g.n(); ++v) {
    if (count[v] > 1)
      fail(errc::final_overlap,
           "vertex " + std::to_string(v) + " ends with " + std::to_string(count[v]) + " tokens");
    if (count[v] == 1) out.push_back(v);
  }
  return configuration(std::move(out));
}

}  // namespace tsd
