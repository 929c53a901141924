#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uniflab/acunh_automata.hpp"
#include "uniflab/acunh_ground.hpp"
#include "uniflab/asym_syntactic.hpp"
#include "uniflab/crosscheck.hpp"
#include "uniflab/problem.hpp"
#include "uniflab/reductions.hpp"
#include "uniflab/rewrite.hpp"
#include "uniflab/xor_linear.hpp"

using json = nlohmann::ordered_json;
using namespace uniflab;

namespace {

// Exit codes: 0 solvable / all checks pass, 1 unsolvable, 2 error.
constexpr int kSolvable = 0;
constexpr int kUnsolvable = 1;
constexpr int kError = 2;

struct SolveConfig {
  std::vector<std::string> inputs;
  std::string backend = "auto";  // acunh asym: auto|automata|ground
  bool json_out = false;
  bool trace = false;
  bool timing = false;
  int depth = 1;
  unsigned long long max_guesses = 1ull << 20;
};

std::uint64_t env_seed_fallback(std::uint64_t seed, bool seed_given) {
  if (seed_given) return seed;
  if (const char* env = std::getenv("UNIFLAB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return seed;
}

bool has_relation(const Problem& p, Relation rel) {
  for (const ProblemItem& item : p.items)
    if (item.rel == rel) return true;
  return false;
}

struct SolveRun {
  Decision decision;
  std::string backend;
};

SolveRun dispatch(const Problem& p, const SolveConfig& cfg) {
  bool asym = has_relation(p, Relation::AsymEq);
  bool diseq = has_relation(p, Relation::Diseq);
  switch (p.theory) {
    case Theory::R1:
      if (diseq && !asym)
        return {decide_disunif_r1(p, cfg.depth), "r1-ground-search"};
      if (!diseq) return {asym_unify(p, cfg.trace), "asym-syntactic"};
      throw std::invalid_argument("r1 supports asym/eq or eq/diseq problems");
    case Theory::R5:
      if (diseq) throw std::invalid_argument("r5 problems take eq/asym items only");
      return {asym_unify(p, cfg.trace), "asym-syntactic"};
    case Theory::R4:
      if (diseq) throw std::invalid_argument("r4 problems take eq/asym items only");
      return {decide_asym_r4(p, cfg.max_guesses), "r4-ground-search"};
    case Theory::ACUN:
      if (asym && diseq)
        throw std::invalid_argument("acun problems mix asym with diseq");
      if (asym) return {ground_asym_unify_acun(p, cfg.max_guesses), "acun-ground-search"};
      return {decide_disunif_acun(p), "xor-gauss"};
    case Theory::ACUNH: {
      if (asym && diseq)
        throw std::invalid_argument("acunh problems mix asym with diseq");
      if (diseq) return {decide_ground_disunif_acunh(p), "acunh-snf"};
      if (cfg.backend == "ground") {
        if (asym)
          throw std::invalid_argument(
              "the snf backend handles symmetric instances only");
        return {decide_ground_disunif_acunh(p), "acunh-snf"};
      }
      AcunhOptions opt;
      opt.max_guesses = cfg.max_guesses;
      return {ground_asym_unify_acunh(p, opt), "acunh-automata"};
    }
    case Theory::Custom:
      break;
  }
  throw std::invalid_argument("no solver for this theory");
}

json decision_json(const SolveRun& run, const SolveConfig& cfg, double elapsed) {
  json out;
  out["solvable"] = run.decision.solvable;
  if (run.decision.solvable) {
    json unifier = json::object();
    for (const auto& [var, value] : run.decision.unifier)
      unifier[var] = print_term(value);
    out["unifier"] = unifier;
    out["fail_rule"] = nullptr;
  } else {
    out["unifier"] = nullptr;
    out["fail_rule"] = run.decision.detail;
    if (run.decision.bounded) out["bounded"] = true;
  }
  out["backend"] = run.backend;
  if (cfg.trace) out["trace"] = run.decision.trace;
  if (cfg.timing) out["elapsed_ms"] = elapsed;
  return out;
}

int cmd_solve(const SolveConfig& cfg) {
  int worst = kSolvable;
  for (const std::string& path : cfg.inputs) {
    Problem p = parse_problem_file(path);
    auto start = std::chrono::steady_clock::now();
    SolveRun run = dispatch(p, cfg);
    double elapsed = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    // Never print an unverified solution.
    if (run.decision.solvable && !verify_solution(p, run.decision.unifier))
      throw std::runtime_error("internal: unifier failed re-verification");
    if (cfg.json_out) {
      std::cout << decision_json(run, cfg, elapsed).dump(2) << "\n";
    } else {
      std::cout << path << ": "
                << (run.decision.solvable ? "solvable" : "unsolvable");
      if (!run.decision.solvable && !run.decision.detail.empty())
        std::cout << " (" << run.decision.detail << ")";
      std::cout << " [" << run.backend << "]";
      if (cfg.timing) std::cout << " " << elapsed << " ms";
      std::cout << "\n";
      if (run.decision.solvable)
        for (const auto& [var, value] : run.decision.unifier)
          std::cout << "  " << var << " -> " << print_term(value) << "\n";
      if (cfg.trace && !run.decision.trace.empty()) {
        std::cout << "  trace:";
        for (const std::string& rule : run.decision.trace) std::cout << " " << rule;
        std::cout << "\n";
      }
    }
    if (!run.decision.solvable) worst = std::max(worst, kUnsolvable);
  }
  return worst;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_reduce(const std::string& kind, const std::string& input,
               const std::string& output) {
  Problem p;
  std::string stats;
  if (kind == "3sat") {
    CnfFormula f = parse_dimacs(slurp(input));
    p = sat3_to_r1_disunif(f);
    stats = std::to_string(f.nvars) + " vars, " +
            std::to_string(f.clauses.size()) + " clauses -> " +
            std::to_string(p.items.size()) + " items";
  } else if (kind == "3col") {
    Graph g = parse_edge_graph(slurp(input));
    p = coloring_to_acun_asym(g);
    stats = std::to_string(g.nverts) + " vertices, " +
            std::to_string(g.edges.size()) + " edges -> " +
            std::to_string(p.items.size()) + " items";
  } else if (kind == "nae3sat") {
    NaeInstance f;
    CnfFormula raw = parse_dimacs(slurp(input));
    f.nvars = raw.nvars;
    f.clauses = raw.clauses;
    p = nae3sat_to_r4_asym(f);
    stats = std::to_string(f.nvars) + " vars, " +
            std::to_string(f.clauses.size()) + " clauses -> " +
            std::to_string(p.items.size()) + " items";
  } else {
    throw std::invalid_argument("unknown reduction kind '" + kind + "'");
  }
  std::ofstream out(output);
  if (!out) throw std::runtime_error("cannot write '" + output + "'");
  out << write_problem(p);
  std::cout << kind << ": " << stats << "\n";
  return kSolvable;
}

int cmd_oracle(const std::string& kind, const std::string& input) {
  bool verdict = false;
  if (kind == "3sat") verdict = brute_sat(parse_dimacs(slurp(input)));
  else if (kind == "3col") verdict = brute_coloring(parse_edge_graph(slurp(input)));
  else if (kind == "nae3sat") {
    CnfFormula raw = parse_dimacs(slurp(input));
    NaeInstance f;
    f.nvars = raw.nvars;
    f.clauses = raw.clauses;
    verdict = brute_nae(f);
  } else {
    throw std::invalid_argument("unknown oracle kind '" + kind + "'");
  }
  std::cout << (verdict ? "satisfiable" : "unsatisfiable") << "\n";
  return verdict ? kSolvable : kUnsolvable;
}

int cmd_normalize(const std::string& theory_name_, const std::string& text) {
  Theory theory;
  if (theory_name_ == "r1") theory = Theory::R1;
  else if (theory_name_ == "r4") theory = Theory::R4;
  else if (theory_name_ == "r5") theory = Theory::R5;
  else if (theory_name_ == "acun") theory = Theory::ACUN;
  else if (theory_name_ == "acunh") theory = Theory::ACUNH;
  else throw std::invalid_argument("unknown theory '" + theory_name_ + "'");
  Signature sig = base_signature(theory);
  if (theory == Theory::ACUN || theory == Theory::ACUNH)
    for (const char* c : {"c1", "c2", "c3", "c4"}) sig.add_constant(c);
  Term t = parse_term_lenient(text, sig);
  std::cout << print_term(normalize(t, builtin_theory(theory), sig)) << "\n";
  return kSolvable;
}

int cmd_crosscheck(const CrosscheckOptions& opt, bool json_out,
                   const std::string& replay_path) {
  CrosscheckReport report = run_crosscheck(opt);
  if (json_out) {
    json out;
    out["seed"] = opt.seed;
    json suites = json::array();
    for (const SuiteResult& s : report.suites) {
      json row;
      row["name"] = s.name;
      row["cases"] = s.cases;
      row["mismatches"] = s.mismatches;
      row["skipped"] = s.skipped;
      suites.push_back(row);
    }
    out["suites"] = suites;
    out["ok"] = report.ok();
    std::cout << out.dump(2) << "\n";
  } else {
    for (const SuiteResult& s : report.suites) {
      std::cout << (s.ok() ? "PASS" : "FAIL") << "  " << s.name << "  cases="
                << s.cases << " mismatches=" << s.mismatches
                << " skipped=" << s.skipped << "  (" << s.elapsed_ms << " ms)\n";
    }
    if (opt.timing) {
      std::cout << "\npolynomial backend (gaussian disunification):\n";
      std::cout << "  vars    ms\n";
      for (const TimingRow& row : report.gauss_scaling)
        std::cout << "  " << row.size << "\t" << row.ms << "\n";
      std::cout << "  log-log fit degree: " << report.gauss_fit_degree
                << " (expected <= 3)\n";
      std::cout << "\nexponential ground search (coloring reductions, "
                   "unsatisfiable path+K4):\n";
      std::cout << "  verts   ms\n";
      for (const TimingRow& row : report.search_scaling)
        std::cout << "  " << row.size << "\t" << row.ms << "\n";
      std::cout << "  (documented contrast; growth is super-polynomial)\n";
    }
  }
  if (!report.ok()) {
    for (const SuiteResult& s : report.suites)
      if (!s.ok() && !s.first_failure.empty()) {
        std::ofstream out(replay_path);
        out << s.first_failure;
        std::cerr << "first failing instance written to " << replay_path << "\n";
        break;
      }
    return kUnsolvable;
  }
  return kSolvable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equational unification workbench"};
  app.require_subcommand(1);

  SolveConfig solve_cfg;
  std::string theory_override;  // accepted for symmetry; files carry theories
  auto* solve = app.add_subcommand("solve", "decide a problem file");
  solve->add_option("files", solve_cfg.inputs, "problem files")->required();
  solve->add_option("--backend", solve_cfg.backend,
                    "acunh asym backend: auto|automata|ground");
  solve->add_option("--depth", solve_cfg.depth, "ground search depth (r1 diseq)");
  solve->add_option("--max-guesses", solve_cfg.max_guesses, "search budget");
  solve->add_option("--theory", theory_override,
                    "override check: fail if the file's theory differs");
  solve->add_flag("--json", solve_cfg.json_out, "JSON output");
  solve->add_flag("--trace", solve_cfg.trace, "include rule trace");
  solve->add_flag("--timing", solve_cfg.timing, "include elapsed_ms");

  std::string reduce_kind, reduce_in, reduce_out;
  auto* reduce = app.add_subcommand("reduce", "generate a problem from an instance");
  reduce->add_option("kind", reduce_kind, "3sat|3col|nae3sat")->required();
  reduce->add_option("input", reduce_in, "DIMACS or edge-list file")->required();
  reduce->add_option("output", reduce_out, "problem file to write")->required();

  std::string oracle_kind, oracle_in;
  auto* oracle = app.add_subcommand("oracle", "brute-force an instance directly");
  oracle->add_option("kind", oracle_kind, "3sat|3col|nae3sat")->required();
  oracle->add_option("input", oracle_in, "DIMACS or edge-list file")->required();

  std::string norm_theory, norm_term;
  auto* norm = app.add_subcommand("normalize", "print a term's normal form");
  norm->add_option("--theory", norm_theory, "r1|r4|r5|acun|acunh")->required();
  norm->add_option("term", norm_term, "term text")->required();

  CrosscheckOptions cc;
  bool cc_json = false;
  bool seed_given = false;
  std::string replay_path = "crosscheck-failure.problem";
  auto* cross = app.add_subcommand("crosscheck",
                                   "randomized solver/oracle agreement suites");
  cross->add_option("--seed", cc.seed, "RNG seed")
      ->each([&](const std::string&) { seed_given = true; });
  cross->add_option("--reduction-cases", cc.reduction_cases, "cases per reduction");
  cross->add_option("--agreement-cases", cc.agreement_cases, "cases per agreement");
  cross->add_option("--replay-file", replay_path, "failure replay path");
  cross->add_flag("--timing", cc.timing, "emit the scaling tables");
  cross->add_flag("--inject-bug", cc.inject_bug,
                  "corrupt one Gaussian pivot; the run passes only if detected");
  cross->add_flag("--json", cc_json, "JSON output");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      if (!theory_override.empty())
        for (const std::string& path : solve_cfg.inputs)
          if (theory_name(parse_problem_file(path).theory) != theory_override)
            throw std::invalid_argument("file theory differs from --theory");
      return cmd_solve(solve_cfg);
    }
    if (reduce->parsed()) return cmd_reduce(reduce_kind, reduce_in, reduce_out);
    if (oracle->parsed()) return cmd_oracle(oracle_kind, oracle_in);
    if (norm->parsed()) return cmd_normalize(norm_theory, norm_term);
    if (cross->parsed()) {
      cc.seed = env_seed_fallback(cc.seed, seed_given);
      return cmd_crosscheck(cc, cc_json, replay_path);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position << ": " << e.what()
              << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
