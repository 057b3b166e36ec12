// Command-line front end: prove / simulate / graph / bench.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "adp/graph.hpp"
#include "adp/parser.hpp"
#include "adp/prover.hpp"
#include "adp/simulate.hpp"

namespace fs = std::filesystem;
using namespace adp;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitMaybe = 1;
constexpr int kExitInputError = 2;

Goal parse_goal(const std::string& s) {
  if (s == "ast") return Goal::ast;
  if (s == "bast") return Goal::bast;
  if (s == "iast") return Goal::iast;
  throw CLI::ValidationError("--goal must be ast, bast or iast");
}

Term default_start(const PTRS& r, const std::string& file) {
  if (r.start) return *r.start;
  throw std::runtime_error(file + " declares no START term");
}

struct ProveArgs {
  std::string file;
  std::string goal = "ast";
  int max_coeff = 3;
  int degree = 1;
  std::string smt;
  double timeout = 60.0;
  std::string proof = "text";
  std::uint64_t seed = 0;
};

void print_proof_text(const ProofNode& n, int indent, std::ostream& out) {
  out << std::string(indent * 2, ' ') << n.processor;
  if (n.processor == "RP")
    out << " strict=" << n.payload.at("strict").dump()
        << " " << interp_from_json(n.payload.at("interpretation")).str();
  if (n.processor == "DG") out << " components=" << n.payload.at("components").dump();
  out << "\n";
  for (const ProofNode& c : n.children) print_proof_text(c, indent + 1, out);
}

int cmd_prove(const ProveArgs& args) {
  PTRS r = parse_ptrs_file(args.file);
  ProverConfig cfg;
  cfg.max_coeff = args.max_coeff;
  cfg.degree = args.degree;
  cfg.smt_command = args.smt;
  cfg.timeout_seconds = args.timeout;
  cfg.seed = args.seed;
  Verdict v = prove(r, parse_goal(args.goal), cfg);
  std::cout << v.result_name() << "  (" << v.seconds << " s)\n";
  if (v.proof) {
    if (args.proof == "json")
      std::cout << proof_to_json(*v.proof).dump(2) << "\n";
    else if (args.proof == "text")
      print_proof_text(*v.proof, 0, std::cout);
  }
  return v.proved ? kExitProved : kExitMaybe;
}

int cmd_simulate(const std::string& file, int runs, int max_steps, const std::string& policy,
                 std::uint64_t seed, const std::string& csv) {
  PTRS r = parse_ptrs_file(file);
  Term start = default_start(r, file);
  Estimate est = estimate_termination_prob(r, start, parse_policy(policy), runs, max_steps, seed);
  std::cout << "terminated " << est.fraction.str() << " ~ " << est.fraction.to_double()
            << " +- " << est.half_width << " (95%)\n";
  if (!csv.empty()) {
    std::ofstream out(csv);
    out << runs_to_csv(est.runs);
  }
  return kExitProved;
}

int cmd_graph(const std::string& file, const std::string& goal, const std::string& dot) {
  PTRS r = parse_ptrs_file(file);
  ADPProblem p = canonical_adps(r, parse_goal(goal));
  DependencyGraph g = build_dependency_graph(p);
  std::string text = graph_to_dot(g);
  if (dot.empty() || dot == "-") {
    std::cout << text;
  } else {
    std::ofstream out(dot);
    out << text;
  }
  auto d = sccs(g);
  std::cout << "; " << g.nodes.size() << " nodes, " << g.edges.size() << " edges, "
            << d.components.size() << " cyclic components\n";
  return kExitProved;
}

int cmd_bench(const std::string& dir, double timeout) {
  int regressions = 0, cases = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".ptrs") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    fs::path expect = file;
    expect.replace_extension(".expected");
    if (!fs::exists(expect)) continue;
    PTRS r = parse_ptrs_file(file.string());
    std::ifstream in(expect);
    std::string goal, want;
    while (in >> goal >> want) {
      if (goal.empty() || goal[0] == '#' || goal[0] == ';') continue;
      ++cases;
      ProverConfig cfg;
      cfg.timeout_seconds = timeout;
      Verdict v = prove(r, parse_goal(goal), cfg);
      std::size_t proof_size = 0;
      if (v.proof) proof_size = proof_to_json(*v.proof).dump().size();
      bool ok = v.result_name() == want;
      if (!ok) ++regressions;
      printf("%-24s %-5s %-6s expected %-6s %8.3fs %8zuB %s\n",
             file.filename().c_str(), goal.c_str(), v.result_name().c_str(), want.c_str(),
             v.seconds, proof_size, ok ? "ok" : "REGRESSION");
    }
  }
  printf("%d case(s), %d regression(s)\n", cases, regressions);
  return regressions == 0 ? kExitProved : kExitMaybe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-sure termination prover for probabilistic term rewrite systems"};
  app.require_subcommand(1);

  ProveArgs pa;
  CLI::App* prove_cmd = app.add_subcommand("prove", "decide AST/bAST/iAST for a system");
  prove_cmd->add_option("file", pa.file)->required();
  prove_cmd->add_option("--goal", pa.goal, "ast|bast|iast")->required();
  prove_cmd->add_option("--max-coeff", pa.max_coeff, "coefficient bound for interpretations");
  prove_cmd->add_option("--degree", pa.degree)->check(CLI::Range(1, 2));
  prove_cmd->add_option("--smt", pa.smt, "external QF_NIA solver command (reads stdin)");
  prove_cmd->add_option("--timeout", pa.timeout, "wall-clock budget in seconds");
  prove_cmd->add_option("--proof", pa.proof)->check(CLI::IsMember({"text", "json", "none"}));
  prove_cmd->add_option("--seed", pa.seed);

  std::string sim_file, sim_policy = "lo", sim_csv;
  int sim_runs = 10000, sim_steps = 2000;
  std::uint64_t sim_seed = 1;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo termination estimate");
  sim_cmd->add_option("file", sim_file)->required();
  sim_cmd->add_option("--runs", sim_runs);
  sim_cmd->add_option("--max-steps", sim_steps);
  sim_cmd->add_option("--policy", sim_policy, "li|lo|random[;prio=...][;prio-first]");
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--csv", sim_csv, "write per-run records to a file");

  std::string graph_file, graph_goal = "ast", graph_dot;
  CLI::App* graph_cmd = app.add_subcommand("graph", "dependency graph of the canonical ADPs");
  graph_cmd->add_option("file", graph_file)->required();
  graph_cmd->add_option("--goal", graph_goal);
  graph_cmd->add_option("--dot", graph_dot, "output file, '-' for stdout");

  std::string bench_dir;
  double bench_timeout = 120.0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a corpus against expected verdicts");
  bench_cmd->add_option("dir", bench_dir)->required();
  bench_cmd->add_option("--timeout", bench_timeout);

  CLI11_PARSE(app, argc, argv);
  try {
    if (prove_cmd->parsed()) return cmd_prove(pa);
    if (sim_cmd->parsed())
      return cmd_simulate(sim_file, sim_runs, sim_steps, sim_policy, sim_seed, sim_csv);
    if (graph_cmd->parsed()) return cmd_graph(graph_file, graph_goal, graph_dot);
    if (bench_cmd->parsed()) return cmd_bench(bench_dir, bench_timeout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
