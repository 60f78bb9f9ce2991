#include <cstdlib>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsd/gen/generated.hpp"
#include "tsd/io.hpp"
#include "tsd/logic/closure.hpp"
#include "tsd/nd/solver.hpp"
#include "tsd/oracle.hpp"
#include "tsd/tw/solver.hpp"

using tsd::json;

namespace {

// exit codes: 0 = yes/valid, 1 = no/invalid, 2 = error
constexpr int exit_yes = 0;
constexpr int exit_no = 1;
constexpr int exit_err = 2;

long long env_limit(long long fallback) {
  if (const char* s = std::getenv("TSD_SEARCH_LIMIT")) {
    try {
      return std::stoll(s);
    } catch (...) {
    }
  }
  return fallback;
}

struct solve_options {
  std::string engine = "oracle";
  std::string instance_path;
  std::string td_path;
  std::string type_engine = "canonical";
  long long limit = env_limit(5'000'000);
  int threads = 1;
  bool as_json = false;
};

json sequence_json(const tsd::transformation_sequence& seq) {
  json j = json::array();
  for (auto [from, to] : seq.slides) j.push_back({from, to});
  return j;
}

tsd::transformation_sequence sequence_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) tsd::fail(tsd::errc::parse_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    tsd::fail(tsd::errc::parse_error, e.what());
  }
  tsd::transformation_sequence seq;
  for (const auto& mv : j) {
    if (!mv.is_array() || mv.size() != 2)
      tsd::fail(tsd::errc::schema_violation, "sequence entries must be [from,to] pairs");
    seq.push(mv[0].get<int>(), mv[1].get<int>());
  }
  return seq;
}

void emit(const json& payload, bool as_json) {
  if (as_json) {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  if (payload.contains("verdict")) {
    std::cout << payload.at("verdict").get<std::string>();
    if (payload.contains("cost")) std::cout << " cost=" << payload.at("cost").get<long long>();
    std::cout << "\n";
    if (payload.contains("target"))
      std::cout << "target: " << payload.at("target").dump() << "\n";
    if (payload.contains("sequence"))
      std::cout << "sequence: " << payload.at("sequence").dump() << "\n";
  } else {
    std::cout << payload.dump(2) << "\n";
  }
}

int run_solve(const solve_options& opt) {
  tsd::discovery_instance inst = tsd::read_instance(opt.instance_path);
  json out;
  bool yes = false;

  if (opt.engine == "oracle" || opt.engine == "bfs") {
    tsd::oracle_limits lim;
    lim.max_subsets = opt.limit;
    lim.max_bfs_nodes = opt.limit;
    lim.threads = opt.threads;
    tsd::solve_result res =
        opt.engine == "oracle" ? tsd::solve_enumerate(inst, lim) : tsd::solve_bfs(inst, lim);
    yes = res.yes;
    out["verdict"] = res.yes ? "yes" : "no";
    if (res.yes) {
      out["cost"] = res.cost;
      out["target"] = res.target.vertices();
      out["sequence"] = sequence_json(res.seq);
    }
  } else if (opt.engine == "nd") {
    auto res = tsd::nd::solve_nd(inst);
    yes = res.yes;
    out["verdict"] = res.yes ? "yes" : "no";
    if (res.yes) {
      out["cost"] = res.cost;
      out["target"] = res.target.vertices();
      out["sequence"] = sequence_json(res.seq);
    }
  } else if (opt.engine == "tw") {
    tsd::tw::nice_tree_decomposition ntd;
    if (!opt.td_path.empty()) {
      tsd::tw::tree_decomposition td = tsd::tw::read_td_file(opt.td_path);
      tsd::tw::validate(td, inst.graph);
      ntd = tsd::tw::make_nice(td);
    } else {
      ntd = tsd::tw::compute_td(inst.graph);  // exact search, small n only
    }
    tsd::tw::tw_result res;
    if (opt.type_engine == "ef")
      res = tsd::tw::solve_tw_ef(inst, ntd);
    else
      res = tsd::tw::solve_tw_canonical(inst, ntd);
    yes = res.yes;
    out["verdict"] = res.yes ? "yes" : "no";
    if (res.yes) out["cost"] = res.cost;
  } else if (opt.engine == "closure") {
    yes = tsd::logic::closure_decide(inst.graph, inst.phi, inst.start, inst.budget);
    out["verdict"] = yes ? "yes" : "no";
  } else {
    tsd::fail(tsd::errc::unknown_name, "engine " + opt.engine);
  }
  emit(out, opt.as_json);
  return yes ? exit_yes : exit_no;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"token-sliding solution discovery toolkit"};
  app.require_subcommand(1);

  solve_options sopt;
  auto* solve = app.add_subcommand("solve", "decide a discovery instance");
  solve->add_option("--engine", sopt.engine, "oracle | bfs | nd | tw | closure")
      ->check(CLI::IsMember({"oracle", "bfs", "nd", "tw", "closure"}));
  solve->add_option("--instance", sopt.instance_path, "instance JSON file")->required();
  solve->add_option("--td", sopt.td_path, "PACE-style .td file (tw engine)");
  solve->add_option("--type-engine", sopt.type_engine, "canonical | ef (tw engine)")
      ->check(CLI::IsMember({"canonical", "ef"}));
  solve->add_option("--limit", sopt.limit, "search-space cap");
  solve->add_option("--threads", sopt.threads, "worker cap for the oracle enumeration")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--json", sopt.as_json, "JSON on stdout");

  std::string gen_family, gen_source, gen_out, gen_dot;
  auto* generate = app.add_subcommand("generate", "build a hardness construction");
  generate->add_option("--family", gen_family, "stars | paths | twincover | bandwidth")
      ->required()
      ->check(CLI::IsMember({"stars", "paths", "twincover", "bandwidth"}));
  generate->add_option("--source", gen_source, "source instance JSON file")->required();
  generate->add_option("--out", gen_out, "output instance file")->required();
  generate->add_option("--dot", gen_dot, "also write a graphviz rendering");

  std::string chk_what, chk_instance, chk_sequence, chk_config;
  bool chk_json = false;
  auto* check = app.add_subcommand("check", "validate instances, sequences, conditions, witnesses");
  check->add_option("--what", chk_what, "instance | sequence | conditions | witness")
      ->required()
      ->check(CLI::IsMember({"instance", "sequence", "conditions", "witness"}));
  check->add_option("--instance", chk_instance, "instance JSON file")->required();
  check->add_option("--sequence", chk_sequence, "sequence JSON file ([ [from,to], ... ])");
  check->add_option("--config", chk_config, "configuration as v1,v2,...");
  check->add_flag("--json", chk_json, "JSON on stdout");

  std::string mc_instance, mc_set;
  bool mc_json = false;
  auto* mc = app.add_subcommand("mc", "model-check the instance formula on a set");
  mc->add_option("--instance", mc_instance, "instance JSON file")->required();
  mc->add_option("--set", mc_set, "vertex set as v1,v2,... (default: the instance tokens)");
  mc->add_flag("--json", mc_json, "JSON on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_yes : exit_err;
  }

  try {
    if (solve->parsed()) return run_solve(sopt);

    if (generate->parsed()) {
      std::ifstream in(gen_source);
      if (!in) tsd::fail(tsd::errc::parse_error, "cannot open " + gen_source);
      json src;
      try {
        in >> src;
      } catch (const json::exception& e) {
        tsd::fail(tsd::errc::parse_error, e.what());
      }
      tsd::gen::generated_instance g = tsd::gen::generate(gen_family, src);
      tsd::gen::write_generated(gen_out, g);
      if (!gen_dot.empty()) {
        std::ofstream dot(gen_dot);
        dot << tsd::gen::to_dot(g);
      }
      std::cerr << "wrote " << gen_out << " (n=" << g.inst().graph.n()
                << ", budget=" << g.inst().budget << ")\n";
      return exit_yes;
    }

    if (check->parsed()) {
      json out;
      bool ok = false;
      if (chk_what == "instance") {
        tsd::discovery_instance inst = tsd::read_instance(chk_instance);
        out["valid"] = true;
        out["n"] = inst.graph.n();
        out["tokens"] = inst.start.size();
        ok = true;
      } else if (chk_what == "sequence") {
        tsd::discovery_instance inst = tsd::read_instance(chk_instance);
        if (chk_sequence.empty())
          tsd::fail(tsd::errc::parse_error, "--sequence required for --what sequence");
        auto seq = sequence_from_file(chk_sequence);
        tsd::configuration target = tsd::apply_sequence(inst.graph, inst.start, seq);
        bool within = seq.length() <= inst.budget;
        bool sat = tsd::logic::model_check(inst.graph, inst.phi, target);
        out["applies"] = true;
        out["length"] = seq.length();
        out["within_budget"] = within;
        out["target"] = target.vertices();
        out["satisfies_formula"] = sat;
        ok = within && sat;
      } else if (chk_what == "conditions") {
        tsd::gen::generated_instance g = tsd::gen::load_generated(chk_instance);
        tsd::configuration cfg = g.inst().start;
        if (!chk_sequence.empty())
          cfg = tsd::apply_sequence(g.inst().graph, g.inst().start,
                                    sequence_from_file(chk_sequence));
        else if (!chk_config.empty()) {
          std::vector<int> vs;
          std::stringstream ss(chk_config);
          std::string tok;
          while (std::getline(ss, tok, ',')) vs.push_back(std::stoi(tok));
          cfg = tsd::configuration(vs);
        }
        auto rep = tsd::gen::check_conditions(g, cfg);
        out["family"] = g.family;
        out["conditions_hold"] = rep.ok;
        if (!rep.ok) out["violation"] = rep.violation;
        ok = rep.ok;
      } else {  // witness
        tsd::gen::generated_instance g = tsd::gen::load_generated(chk_instance);
        auto rep = tsd::gen::witness(g);
        out["family"] = g.family;
        out["valid"] = rep.valid;
        out["measured"] = rep.measured;
        out["bound"] = rep.bound;
        out["detail"] = rep.detail;
        ok = rep.valid;
      }
      if (chk_json)
        std::cout << out.dump(2) << "\n";
      else
        std::cout << (ok ? "valid" : "invalid") << ": " << out.dump() << "\n";
      return ok ? exit_yes : exit_no;
    }

    if (mc->parsed()) {
      tsd::discovery_instance inst = tsd::read_instance(mc_instance);
      tsd::configuration set = inst.start;
      if (!mc_set.empty()) {
        std::vector<int> vs;
        std::stringstream ss(mc_set);
        std::string tok;
        while (std::getline(ss, tok, ',')) vs.push_back(std::stoi(tok));
        set = tsd::configuration(vs);
      }
      bool truth = tsd::logic::model_check(inst.graph, inst.phi, set);
      if (mc_json) {
        json out;
        out["truth"] = truth;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << (truth ? "true" : "false") << "\n";
      }
      return truth ? exit_yes : exit_no;
    }
  } catch (const tsd::error& e) {
    std::cerr << e.what() << "\n";
    return exit_err;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_err;
  }
  return exit_err;
}
