#pragma once

#include "tsd/config.hpp"
#include "tsd/graph.hpp"
#include "tsd/logic/ast.hpp"
#include "tsd/logic/eval.hpp"
#include "tsd/logic/stats.hpp"

namespace tsd {

// A solution-discovery instance (G, S, b, phi).
struct discovery_instance {
  colored_graph graph;
  configuration start;
  int budget = 0;
  logic::formula phi;
  std::string formula_text;  // source text when read from a file / builtin name

  void validate() const {
    if (budget < 0) fail(errc::negative_budget, std::to_string(budget));
    for (vertex v : start)
      if (v < 0 || v >= graph.n())
        fail(errc::schema_violation, "token on nonexistent vertex " + std::to_string(v));
    if (!phi.valid()) fail(errc::schema_violation, "instance carries no formula");
    if (!phi.free_vertex_vars.empty())
      fail(errc::schema_violation, "instance formula must have X as its only free variable");
  }

  int token_count() const { return start.size(); }
};

}  // namespace tsd
