#pragma once

#include "tsd/tw/dp.hpp"
#include "tsd/tw/treewidth.hpp"

namespace tsd::tw {

inline tw_result solve_tw_canonical(const discovery_instance& inst,
                                    const nice_tree_decomposition& ntd, tw_limits lim = {}) {
  canonical_subgraph_engine engine(inst.graph.color_names());
  return solve_tw(inst, ntd, engine, lim);
}

inline tw_result solve_tw_ef(const discovery_instance& inst, const nice_tree_decomposition& ntd,
                             tw_limits lim = {}) {
  auto st = logic::stats(inst.phi);
  if (st.frag != logic::fragment::fo)
    fail(errc::fragment_unsupported, "EF-game engine handles FO only");
  ef_game_engine engine(inst.graph.color_names(), st.quantifier_rank);
  return solve_tw(inst, ntd, engine, lim);
}

}  // namespace tsd::tw
