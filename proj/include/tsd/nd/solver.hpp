#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "tsd/instance.hpp"
#include "tsd/logic/stats.hpp"
#include "tsd/nd/flow_model.hpp"
#include "tsd/nd/partition.hpp"
#include "tsd/nd/shape.hpp"

namespace tsd::nd {

struct nd_result {
  bool yes = false;
  configuration target;            // representative of the accepted shape
  long long cost = -1;
  shape used_shape;
  transformation_sequence seq;     // realizes the flow; lands on a set of the same shape
  configuration seq_target;        // apply_sequence(S, seq)
};

namespace detail {

// Representative of a shape given the flow's chosen balances: exact entries
// take the first sigma vertices of the class, bot entries the first
// s_i + balance vertices (clamped into the band).
inline configuration representative(const vertex_type_partition& p, const configuration& s,
                                    const shape& sh, const std::vector<long long>& balance,
                                    long long qphi) {
  std::vector<vertex> out;
  for (int i = 0; i < p.size(); ++i) {
    long long s_i = 0;
    for (vertex v : p.classes[i])
      if (s.contains(v)) ++s_i;
    long long size_i = static_cast<long long>(p.classes[i].size());
    long long c;
    if (sh.entries[i] == shape::bot)
      c = std::clamp(s_i + balance[i], qphi, size_i - qphi);
    else
      c = sh.entries[i];
    for (long long t = 0; t < c; ++t) out.push_back(p.classes[i][t]);
  }
  return configuration(std::move(out));
}

// Converts the per-arc unit decomposition of a feasible flow into token
// slides. A token leaving class i for adjacent class j slides straight across
// the complete bipartite connection, so the sequence length equals the flow
// cost exactly.
inline transformation_sequence realize_flow(const vertex_type_partition& p,
                                            const configuration& s, const flow_network& net,
                                            const minmcf_result& mcf,
                                            const configuration& rep) {
  const int ell = p.size();
  // net arc flows, antiparallel flow cancelled defensively
  std::vector<std::vector<long long>> flow(ell, std::vector<long long>(ell, 0));
  for (size_t a = 0; a < net.arcs.size(); ++a) flow[net.arcs[a].from][net.arcs[a].to] += mcf.arc_flow[a];
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) {
      long long c = std::min(flow[i][j], flow[j][i]);
      flow[i][j] -= c;
      flow[j][i] -= c;
    }

  std::vector<long long> emitted(ell, 0), absorbed(ell, 0);
  std::vector<long long> outf(ell, 0), inf(ell, 0);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      outf[i] += flow[i][j];
      inf[j] += flow[i][j];
    }
  for (int i = 0; i < ell; ++i) {
    long long ba = inf[i] - outf[i];
    if (ba >= 0) {
      absorbed[i] = ba;
      emitted[i] = 0;
    } else {
      emitted[i] = -ba;
      absorbed[i] = 0;
    }
  }

  // movers per class: prefer to keep tokens that already sit on representative
  // vertices; arrivals prefer representative vertices without a resting token
  std::vector<std::vector<vertex>> movers(ell), landing(ell);
  for (int i = 0; i < ell; ++i) {
    std::vector<vertex> tokens;
    for (vertex v : p.classes[i])
      if (s.contains(v)) tokens.push_back(v);
    long long stay = static_cast<long long>(tokens.size()) - emitted[i];
    std::vector<vertex> stayers, rest;
    for (vertex v : tokens)
      (rep.contains(v) && static_cast<long long>(stayers.size()) < stay ? stayers : rest)
          .push_back(v);
    while (static_cast<long long>(stayers.size()) < stay && !rest.empty()) {
      stayers.push_back(rest.front());
      rest.erase(rest.begin());
    }
    movers[i] = rest;

    auto is_stayer = [&](vertex v) {
      return std::find(stayers.begin(), stayers.end(), v) != stayers.end();
    };
    std::vector<vertex> cands_rep, cands_other;
    for (vertex v : p.classes[i]) {
      if (is_stayer(v)) continue;
      (rep.contains(v) ? cands_rep : cands_other).push_back(v);
    }
    for (long long need = absorbed[i]; need > 0; --need) {
      if (!cands_rep.empty()) {
        landing[i].push_back(cands_rep.front());
        cands_rep.erase(cands_rep.begin());
      } else {
        landing[i].push_back(cands_other.front());
        cands_other.erase(cands_other.begin());
      }
    }
  }

  // peel unit paths source -> ... -> sink off the flow
  transformation_sequence seq;
  auto residual = flow;
  for (int src_cls = 0; src_cls < ell; ++src_cls) {
    while (emitted[src_cls] > 0) {
      std::vector<int> path{src_cls};
      int cur = src_cls;
      while (true) {
        if (cur != src_cls && absorbed[cur] > 0) break;
        int nxt = -1;
        for (int j = 0; j < ell; ++j)
          if (residual[cur][j] > 0) {
            nxt = j;
            break;
          }
        if (nxt < 0) break;
        --residual[cur][nxt];
        path.push_back(nxt);
        cur = nxt;
      }
      --emitted[src_cls];
      --absorbed[cur];
      vertex token = movers[src_cls].back();
      movers[src_cls].pop_back();
      vertex dest = landing[cur].back();
      landing[cur].pop_back();
      // slide along the class path; intermediate hops use the first vertex of
      // the class (transient multiplicity is fine in the discovery model)
      vertex at = token;
      for (size_t step = 1; step < path.size(); ++step) {
        vertex to =
            step + 1 == path.size() ? dest : p.classes[path[step]].front();
        seq.push(at, to);
        at = to;
      }
    }
  }
  return seq;
}

}  // namespace detail

// The neighborhood-diversity solver: enumerate shapes, test each with an
// interval flow, model-check one representative per surviving shape, accept
// the first success.
inline nd_result solve_nd(const discovery_instance& inst) {
  inst.validate();
  auto st = logic::stats(inst.phi);
  if (st.frag == logic::fragment::mso2)
    fail(errc::fragment_unsupported, "nd solver handles FO and MSO1 only");

  vertex_type_partition p = twin_partition(inst.graph);
  const long long qphi = st.q_phi();
  const int k = inst.start.size();

  nd_result out;
  logic::model_checker mc(inst.graph);
  enumerate_shapes(p, qphi, k, [&](const shape& sh) {
    flow_network net = build_network(p, inst.start, sh, qphi);
    minmcf_result flow;
    try {
      flow = solve_minmcf(net);
    } catch (const error& e) {
      if (e.code() == errc::unbalanced_intervals) return true;  // next shape
      throw;
    }
    if (!flow.feasible || flow.cost > inst.budget) return true;
    configuration rep = detail::representative(p, inst.start, sh, flow.balance, qphi);
    if (!mc.check(inst.phi, rep)) return true;
    out.yes = true;
    out.target = rep;
    out.cost = flow.cost;
    out.used_shape = sh;
    out.seq = detail::realize_flow(p, inst.start, net, flow, rep);
    out.seq_target = apply_sequence(inst.graph, inst.start, out.seq);
    return false;  // stop at the first accepted shape
  });
  return out;
}

// Minimum feasible budget over all shapes whose representative satisfies phi.
inline std::optional<long long> nd_min_budget(const colored_graph& g, const configuration& start,
                                              const logic::formula& phi) {
  auto st = logic::stats(phi);
  if (st.frag == logic::fragment::mso2)
    fail(errc::fragment_unsupported, "nd solver handles FO and MSO1 only");
  vertex_type_partition p = twin_partition(g);
  const long long qphi = st.q_phi();

  std::optional<long long> best;
  logic::model_checker mc(g);
  enumerate_shapes(p, qphi, start.size(), [&](const shape& sh) {
    flow_network net = build_network(p, start, sh, qphi);
    minmcf_result flow;
    try {
      flow = solve_minmcf(net);
    } catch (const error& e) {
      if (e.code() == errc::unbalanced_intervals) return true;
      throw;
    }
    if (!flow.feasible) return true;
    configuration rep = detail::representative(p, start, sh, flow.balance, qphi);
    if (!mc.check(phi, rep)) return true;
    if (!best || flow.cost < *best) best = flow.cost;
    return true;
  });
  return best;
}

}  // namespace tsd::nd
