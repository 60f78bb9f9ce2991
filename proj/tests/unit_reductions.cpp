#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "support/builders.hpp"
#include "support/mini_ladder.hpp"
#include "tsd/gen/generated.hpp"

using namespace tsd;
using namespace tsd::gen;

namespace {

mcc_instance triangle_mcc(int kappa, int n) {
  // one clique across the first vertex of every class, plus some noise edges
  mcc_instance m;
  m.kappa = kappa;
  m.nsize = n;
  for (int i = 0; i < kappa; ++i)
    for (int j = i + 1; j < kappa; ++j) m.edges.push_back({i * n, j * n});
  if (n > 1) m.edges.push_back({0 * n + 1, 1 * n + 1});
  m.validate();
  return m;
}

mcc_instance random_mcc(std::mt19937& rng, int kappa, int n, double p) {
  mcc_instance m;
  m.kappa = kappa;
  m.nsize = n;
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < kappa; ++i)
    for (int j = i + 1; j < kappa; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (coin(rng)) m.edges.push_back({i * n + a, j * n + b});
  m.validate();
  return m;
}

arc_supply_instance one_arc_pas() {
  arc_supply_instance p;
  p.num_vertices = 2;
  p.demand = {1, 1};
  p.arcs.push_back({0, 1, {{1, 1}}});
  p.validate();
  return p;
}

configuration perturb(std::mt19937& rng, const colored_graph& g, const configuration& base,
                      int flips) {
  std::vector<uint8_t> in(g.n(), 0);
  for (vertex v : base) in[v] = 1;
  for (int i = 0; i < flips; ++i) {
    int v = std::uniform_int_distribution<int>(0, g.n() - 1)(rng);
    in[v] ^= 1;
  }
  std::vector<vertex> out;
  for (vertex v = 0; v < g.n(); ++v)
    if (in[v]) out.push_back(v);
  return configuration(std::move(out));
}

}  // namespace

TEST_CASE("stars construction arithmetic") {
  mcc_instance m = triangle_mcc(3, 3);
  auto gen = gen_stars(m);
  CHECK(gen.inst.budget == 36);                       // 2 n (kappa-1) kappa
  CHECK(gen.inst.start.size() == 3 * 3 * 3 * 2);      // kappa n * n(kappa-1)
  auto wit = witness_modulator(gen);
  CHECK(wit.measured == 18);                          // 5 C(3,2) + 3
  CHECK(wit.valid);

  // every vertex gadget: root plus (kappa-1) groups of n leaves
  for (const auto& g : gen.layout.vgadgets) {
    CHECK(g.groups.size() == 2);
    for (const auto& grp : g.groups) CHECK(grp.size() == 3);
  }
}

TEST_CASE("stars certificate and checker") {
  mcc_instance m = triangle_mcc(3, 2);
  auto gen = gen_stars(m);
  auto clique = solve_mcc_bruteforce(m);
  REQUIRE(clique.has_value());
  auto seq = certificate_modulator(gen, *clique);
  CHECK(seq.length() == 24);  // = b for kappa=3, n=2
  CHECK(seq.length() == gen.inst.budget);
  auto final_cfg = apply_sequence(gen.inst.graph, gen.inst.start, seq);
  auto rep = check_conditions_s(gen, final_cfg);
  INFO(rep.violation);
  CHECK(rep.ok);
  // the initial configuration violates the edge-side condition
  auto bad = check_conditions_s(gen, gen.inst.start);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.substr(0, 2) == "S3");
  // the full formula accepts the final configuration too
  CHECK(logic::model_check(gen.inst.graph, gen.inst.phi, final_cfg));
  CHECK_FALSE(logic::model_check(gen.inst.graph, gen.inst.phi, gen.inst.start));
  // invalid source solutions are rejected
  std::vector<int> not_clique = *clique;
  not_clique[0] = (not_clique[0] + 1) % 2;  // another vertex of class 0
  if (!mcc_solution_valid(m, not_clique))
    CHECK_THROWS_AS(certificate_modulator(gen, not_clique), error);
}

TEST_CASE("paths construction and certificate") {
  mcc_instance m4 = triangle_mcc(4, 2);
  auto gen4 = gen_paths(m4);
  // path vertex-gadget has n(kappa-1) nodes
  const auto& g0 = gen4.layout.vgadgets[0];
  int total = 0;
  for (const auto& grp : g0.groups) total += static_cast<int>(grp.size());
  CHECK(total == 6);

  mcc_instance m = triangle_mcc(3, 2);
  auto gen = gen_paths(m);
  CHECK(gen.inst.budget == 24);
  auto clique = solve_mcc_bruteforce(m);
  REQUIRE(clique.has_value());
  auto seq = certificate_modulator(gen, *clique);
  CHECK(seq.length() == gen.inst.budget);
  auto final_cfg = apply_sequence(gen.inst.graph, gen.inst.start, seq);
  auto rep = check_conditions_p(gen, final_cfg);
  INFO(rep.violation);
  CHECK(rep.ok);
  auto bad = check_conditions_p(gen, gen.inst.start);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.substr(0, 2) == "P3");
  CHECK(logic::model_check(gen.inst.graph, gen.inst.phi, final_cfg));

  auto wit = witness_modulator(gen);
  CHECK(wit.valid);
  CHECK(wit.measured <= wit.bound);
}

TEST_CASE("structured deciders equal the source brute force") {
  std::mt19937 rng(777);
  int yes_seen = 0, no_seen = 0;
  for (int round = 0; round < 12; ++round) {
    mcc_instance m = random_mcc(rng, 3, std::uniform_int_distribution<int>(1, 3)(rng), 0.45);
    bool src = solve_mcc_bruteforce(m).has_value();
    auto gs = gen_stars(m);
    auto gp = gen_paths(m);
    CHECK(decide_modulator(gs) == src);
    CHECK(decide_modulator(gp) == src);
    (src ? yes_seen : no_seen)++;
  }
  // edgeless source is a no-instance
  mcc_instance empty;
  empty.kappa = 3;
  empty.nsize = 2;
  CHECK_FALSE(decide_modulator(gen_stars(empty)));
  // removing one clique edge from a tight yes-instance flips the verdict
  mcc_instance tight = triangle_mcc(3, 2);
  tight.edges.erase(tight.edges.begin());  // drop clique edge (0, n)
  if (!solve_mcc_bruteforce(tight).has_value())
    CHECK_FALSE(decide_modulator(gen_stars(tight)));
  CHECK(yes_seen + no_seen == 12);
}

TEST_CASE("twincover construction, certificate, witness") {
  arc_supply_instance pas = one_arc_pas();
  auto gen = gen_twincover(pas);
  CHECK(gen.layout.sigma == 8);        // 2 * (1+1+1+1)
  CHECK(gen.inst.budget == 132);       // 2*2 + 1*2*64
  CHECK(gen.layout.supply[0][0][0].teal.size() == 64);  // sigma^2 - sigma*0
  CHECK(gen.layout.supply[0][0][0].orange.size() == 1);
  CHECK(gen.layout.supply[0][0][1].teal.empty());       // sigma*(i-1) with i=1

  auto pick = solve_pas_bruteforce(pas);
  REQUIRE(pick.has_value());
  auto seq = certificate_twincover(gen, *pick);
  CHECK(seq.length() == 132);
  auto final_cfg = apply_sequence(gen.inst.graph, gen.inst.start, seq);
  auto rep = check_conditions_t(gen, final_cfg);
  INFO(rep.violation);
  CHECK(rep.ok);
  auto bad = check_conditions_t(gen, gen.inst.start);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.substr(0, 2) == "T1");

  // displacing one token off a demand node violates exactly the demand
  // condition
  std::vector<vertex> moved;
  int demand_node = gen.layout.demand_nodes[0][0];
  for (vertex v : final_cfg)
    if (v != demand_node) moved.push_back(v);
  moved.push_back(gen.layout.vertex_node[0]);
  auto rep2 = check_conditions_t(gen, configuration(moved));
  CHECK_FALSE(rep2.ok);
  CHECK(rep2.violation.substr(0, 2) == "T1");

  auto wit = witness_twincover(gen);
  CHECK(wit.valid);
  CHECK(wit.measured == 4);  // |V| + 2|A|
  CHECK(wit.bound == 3 + 2 * 3);
}

TEST_CASE("bandwidth construction, certificate, witness") {
  arc_supply_instance pas = one_arc_pas();
  auto gen = gen_bandwidth(pas);
  CHECK(gen.layout.sigma == 12);   // 3 * (1+1+1+1)
  CHECK(gen.layout.vrail_len() == 96);
  CHECK(gen.inst.budget == 192);   // 2 + 95 + 95

  auto pick = solve_pas_bruteforce(pas);
  REQUIRE(pick.has_value());
  auto seq = certificate_bandwidth(gen, *pick);
  CHECK(seq.length() == 192);
  auto final_cfg = apply_sequence(gen.inst.graph, gen.inst.start, seq);
  auto rep = check_conditions_b(gen, final_cfg);
  INFO(rep.violation);
  CHECK(rep.ok);
  auto bad = check_conditions_b(gen, gen.inst.start);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violation.substr(0, 2) == "B2");

  auto wit = witness_bandwidth_order(gen);
  CHECK(wit.valid);
  CHECK(wit.bound == 66 * 3);
  CHECK(wit.measured <= wit.bound);
}

TEST_CASE("checker and formula agree: stars and paths") {
  std::mt19937 rng(101);
  mcc_instance m = triangle_mcc(2, 2);
  for (bool stars : {true, false}) {
    auto gen = stars ? gen_stars(m) : gen_paths(m);
    REQUIRE(gen.inst.graph.n() <= 40);
    logic::model_checker mc(gen.inst.graph);
    auto clique = solve_mcc_bruteforce(m);
    REQUIRE(clique.has_value());
    auto cert_cfg = apply_sequence(gen.inst.graph, gen.inst.start,
                                   certificate_modulator(gen, *clique));
    std::vector<configuration> cfgs{gen.inst.start, cert_cfg};
    while (cfgs.size() < 52) {
      int style = std::uniform_int_distribution<int>(0, 2)(rng);
      if (style == 0)
        cfgs.push_back(testing::random_configuration(
            rng, gen.inst.graph.n(),
            std::uniform_int_distribution<int>(0, gen.inst.graph.n())(rng)));
      else
        cfgs.push_back(perturb(rng, gen.inst.graph, style == 1 ? cert_cfg : gen.inst.start,
                               std::uniform_int_distribution<int>(1, 4)(rng)));
    }
    for (const auto& c : cfgs) {
      bool procedural = check_conditions_modulator(gen, c).ok;
      bool logical = mc.check(gen.inst.phi, c);
      INFO((stars ? "stars" : "paths"));
      REQUIRE(procedural == logical);
    }
  }
}

TEST_CASE("checker and formula agree: twincover") {
  std::mt19937 rng(202);
  auto gen = gen_twincover(one_arc_pas(), 2);  // down-scaled numerics
  REQUIRE(gen.inst.graph.n() <= 40);
  logic::model_checker mc(gen.inst.graph);
  auto pick = solve_pas_bruteforce(gen.layout.source);
  REQUIRE(pick.has_value());
  auto cert_cfg =
      apply_sequence(gen.inst.graph, gen.inst.start, certificate_twincover(gen, *pick));
  std::vector<configuration> cfgs{gen.inst.start, cert_cfg};
  while (cfgs.size() < 52) {
    int style = std::uniform_int_distribution<int>(0, 2)(rng);
    if (style == 0)
      cfgs.push_back(testing::random_configuration(
          rng, gen.inst.graph.n(),
          std::uniform_int_distribution<int>(0, gen.inst.graph.n())(rng)));
    else
      cfgs.push_back(perturb(rng, gen.inst.graph, style == 1 ? cert_cfg : gen.inst.start,
                             std::uniform_int_distribution<int>(1, 4)(rng)));
  }
  for (const auto& c : cfgs) {
    bool procedural = check_conditions_t(gen, c).ok;
    bool logical = mc.check(gen.inst.phi, c);
    REQUIRE(procedural == logical);
  }
}

TEST_CASE("checker and formula agree: bandwidth mini ladder") {
  std::mt19937 rng(303);
  auto gen = testing::mini_bandwidth_gadget();
  REQUIRE(gen.inst.graph.n() <= 40);
  logic::model_checker mc(gen.inst.graph);

  // the intended final pattern: oranges of the (only) sub-ladder emptied,
  // tokens on their teal mirrors and the demand node
  std::vector<vertex> good;
  good.push_back(gen.layout.vg[0].conn[3]);  // yellow
  good.push_back(gen.layout.vg[0].iso[1]);   // mirror of orange@4
  good.push_back(gen.layout.vg[0].iso[2]);   // mirror of orange@8
  configuration good_cfg{good};

  std::vector<configuration> cfgs{gen.inst.start, good_cfg};
  while (cfgs.size() < 52) {
    int style = std::uniform_int_distribution<int>(0, 1)(rng);
    cfgs.push_back(perturb(rng, gen.inst.graph, style == 0 ? good_cfg : gen.inst.start,
                           std::uniform_int_distribution<int>(1, 3)(rng)));
  }
  int agree_ok = 0;
  for (const auto& c : cfgs) {
    bool procedural = check_conditions_b(gen, c).ok;
    bool logical = mc.check(gen.inst.phi, c);
    REQUIRE(procedural == logical);
    agree_ok += procedural == logical;
  }
  CHECK(agree_ok == static_cast<int>(cfgs.size()));
  // sanity: the intended pattern is actually accepted
  CHECK(check_conditions_b(gen, good_cfg).ok);
}

TEST_CASE("generated instance round trip") {
  std::string path = (std::filesystem::temp_directory_path() / "tsd_gen_roundtrip.json").string();
  mcc_instance m = triangle_mcc(3, 2);
  generated_instance g = generate("stars", m.to_json());
  write_generated(path, g);
  generated_instance back = load_generated(path);
  CHECK(back.inst().graph == g.inst().graph);
  CHECK(back.inst().start == g.inst().start);
  CHECK(back.inst().budget == g.inst().budget);

  // byte-identical repeated generation
  std::string path2 = path + "2";
  write_generated(path2, generate("stars", m.to_json()));
  std::ifstream a(path), b(path2);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::remove(path.c_str());
  std::remove(path2.c_str());
}
