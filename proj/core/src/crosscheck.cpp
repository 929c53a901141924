#include "uniflab/crosscheck.hpp"

#include <chrono>
#include <cmath>

#include "uniflab/acunh_automata.hpp"
#include "uniflab/acunh_ground.hpp"
#include "uniflab/asym_syntactic.hpp"
#include "uniflab/bruteforce.hpp"
#include "uniflab/randgen.hpp"
#include "uniflab/reductions.hpp"
#include "uniflab/rewrite.hpp"
#include "uniflab/xor_linear.hpp"

namespace uniflab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SuiteTimer {
  SuiteResult& result;
  Clock::time_point start = Clock::now();
  ~SuiteTimer() { result.elapsed_ms = ms_since(start); }
};

void record_failure(SuiteResult& suite, const Problem& p, const std::string& why) {
  ++suite.mismatches;
  if (suite.first_failure.empty())
    suite.first_failure = "# " + why + "\n" + write_problem(p);
}

}  // namespace

SuiteResult suite_reduction_3sat(std::uint64_t seed, int cases, int max_vars,
                                 int max_clauses) {
  SuiteResult suite{.name = "reduction-3sat-r1-disunif"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    CnfFormula f = random_cnf(rng, max_vars, max_clauses);
    Problem p = sat3_to_r1_disunif(f);
    bool expect = brute_sat(f);
    Decision got = decide_disunif_r1(p);
    ++suite.cases;
    if (got.solvable != expect) {
      record_failure(suite, p, "oracle/solver verdict mismatch");
      continue;
    }
    if (got.solvable) {
      auto decoded = decode_bool_assignment(got.unifier, f.nvars);
      bool transported = decoded.has_value();
      if (transported) {
        for (const auto& cl : f.clauses) {
          bool sat = false;
          for (int lit : cl) {
            bool v = (*decoded)[std::abs(lit) - 1];
            if (lit > 0 ? v : !v) sat = true;
          }
          if (!sat) transported = false;
        }
      }
      if (!transported) record_failure(suite, p, "witness transport failed");
    }
  }
  return suite;
}

SuiteResult suite_reduction_coloring(std::uint64_t seed, int cases,
                                     int max_verts) {
  SuiteResult suite{.name = "reduction-3col-acun-asym"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    Graph g = random_graph(rng, max_verts);
    Problem p = coloring_to_acun_asym(g);
    bool expect = brute_coloring(g);
    Decision got = ground_asym_unify_acun(p);
    ++suite.cases;
    if (got.solvable != expect) {
      record_failure(suite, p, "oracle/solver verdict mismatch");
      continue;
    }
    if (got.solvable) {
      auto colors = decode_coloring(got.unifier, g.nverts);
      bool proper = colors.has_value();
      if (proper)
        for (auto [u, v] : g.edges)
          if ((*colors)[u - 1] == (*colors)[v - 1]) proper = false;
      if (!proper) record_failure(suite, p, "decoded coloring not proper");
    }
  }
  return suite;
}

SuiteResult suite_reduction_nae(std::uint64_t seed, int cases, int max_vars) {
  SuiteResult suite{.name = "reduction-nae3sat-r4-asym"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    NaeInstance f = random_nae(rng, max_vars);
    Problem p = nae3sat_to_r4_asym(f);
    bool expect = brute_nae(f);
    Decision got = decide_asym_r4(p);
    ++suite.cases;
    if (got.solvable != expect) {
      record_failure(suite, p, "oracle/solver verdict mismatch");
      continue;
    }
    if (got.solvable) {
      auto decoded = decode_bool_assignment(got.unifier, f.nvars);
      bool transported = decoded.has_value();
      if (transported) {
        for (const auto& cl : f.clauses) {
          int truths = 0;
          for (int lit : cl)
            if ((*decoded)[std::abs(lit) - 1] == (lit > 0)) ++truths;
          if (truths == 0 || truths == 3) transported = false;
        }
      }
      if (!transported) record_failure(suite, p, "witness transport failed");
    }
  }
  return suite;
}

SuiteResult suite_agreement_asym(std::uint64_t seed, int cases, Theory theory) {
  SuiteResult suite{.name = std::string("agreement-asym-") + theory_name(theory)};
  SuiteTimer timer{suite};
  Rng rng(seed);
  int depth = theory == Theory::R1 ? 3 : 2;
  for (int i = 0; i < cases; ++i) {
    Problem p = random_asym_problem(rng, theory, 4, 3);
    Decision got = asym_unify(p);
    SearchOutcome oracle = bounded_ground_search(p, ground_pool(p, depth));
    ++suite.cases;
    if (!oracle.complete_within_pool && !oracle.decision.solvable) {
      ++suite.skipped;
      continue;
    }
    if (oracle.decision.solvable && !got.solvable) {
      record_failure(suite, p, "oracle found a unifier the solver missed");
      continue;
    }
    if (got.solvable && !oracle.decision.solvable) {
      // The solver self-verifies its witness; a complete oracle must agree.
      record_failure(suite, p, "solver unifier outside the oracle's reach");
    }
  }
  return suite;
}

SuiteResult suite_agreement_xor(std::uint64_t seed, int cases, bool inject_bug) {
  SuiteResult suite{.name = inject_bug ? "agreement-acun-xor(inject-bug)"
                                       : "agreement-acun-xor"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  GaussOptions opt;
  opt.inject_pivot_bug = inject_bug;
  for (int i = 0; i < cases; ++i) {
    Problem p = random_acun_problem(rng, 3, 3, 4);
    Decision got = decide_disunif_acun(p, opt);

    // Free-variable solutions are simulated by giving the oracle one extra
    // free constant per variable.
    Problem extended = p;
    for (std::size_t v = 0; v < p.sig.variables().size(); ++v)
      extended.sig.add_constant("_d" + std::to_string(v + 1));
    SearchOutcome oracle =
        bounded_ground_search(extended, xor_value_pool(extended.sig, 0));
    ++suite.cases;
    if (!oracle.complete_within_pool && !oracle.decision.solvable) {
      ++suite.skipped;
      continue;
    }
    if (oracle.decision.solvable != got.solvable)
      record_failure(suite, p, "oracle/solver verdict mismatch");
  }
  return suite;
}

SuiteResult suite_agreement_acunh_ground(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "agreement-acunh-ground"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  const int degree = 3;
  for (int i = 0; i < cases; ++i) {
    Problem p = random_acunh_problem(rng, 2, 2, 3, 2);
    Decision got = decide_ground_disunif_acunh(p);
    SearchOutcome oracle = bounded_ground_search(p, xor_value_pool(p.sig, degree));
    ++suite.cases;
    if (!oracle.complete_within_pool && !oracle.decision.solvable) {
      ++suite.skipped;
      continue;
    }
    if (oracle.decision.solvable && !got.solvable) {
      record_failure(suite, p, "oracle found a solution the solver missed");
      continue;
    }
    if (got.solvable && !oracle.decision.solvable) {
      // Only a mismatch when the solver's witness lies inside the oracle's
      // degree window; deeper witnesses are legitimately out of reach.
      int maxdeg = 0;
      for (const auto& [var, value] : got.unifier)
        maxdeg = std::max(maxdeg, value.depth());
      if (maxdeg <= degree)
        record_failure(suite, p, "solver witness inside oracle window missed");
    }
  }
  return suite;
}

SuiteResult suite_agreement_acunh_automata(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "agreement-acunh-automata"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  const int degree = 3;
  for (int i = 0; i < cases; ++i) {
    Problem p = random_acunh_asym_problem(rng, 3, 2, 3);
    Decision got = ground_asym_unify_acunh(p);
    SearchOutcome oracle = bounded_ground_search(p, xor_value_pool(p.sig, degree));
    ++suite.cases;
    if (!oracle.complete_within_pool && !oracle.decision.solvable) {
      ++suite.skipped;
      continue;
    }
    if (oracle.decision.solvable && !got.solvable) {
      record_failure(suite, p, "oracle found a unifier the solver missed");
      continue;
    }
    if (got.solvable && !oracle.decision.solvable) {
      int maxdeg = 0;
      for (const auto& [var, value] : got.unifier)
        maxdeg = std::max(maxdeg, value.depth());
      if (maxdeg <= degree)
        record_failure(suite, p, "solver witness inside oracle window missed");
    }
  }
  return suite;
}

SuiteResult suite_backend_cross(std::uint64_t seed, int cases) {
  SuiteResult suite{.name = "cross-backend-acunh-symmetric"};
  SuiteTimer timer{suite};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    Problem p = random_acunh_problem(rng, 2, 2, 3, 2);
    // Symmetric instances only: drop the disequations.
    Problem eq_only = p;
    eq_only.items.clear();
    for (const ProblemItem& item : p.items)
      if (item.rel == Relation::Eq) eq_only.items.push_back(item);
    Decision via_automata = ground_asym_unify_acunh(eq_only);
    Decision via_snf = decide_ground_disunif_acunh(eq_only);
    ++suite.cases;
    if (via_automata.solvable != via_snf.solvable)
      record_failure(suite, eq_only, "automata and SNF backends disagree");
  }
  return suite;
}

std::vector<TimingRow> timing_gauss(const std::vector<int>& sizes,
                                    std::uint64_t seed) {
  std::vector<TimingRow> rows;
  for (int n : sizes) {
    Rng rng(seed + static_cast<std::uint64_t>(n));
    Problem p;
    p.theory = Theory::ACUN;
    p.sig = base_signature(Theory::ACUN);
    for (int c = 1; c <= 3; ++c) p.sig.add_constant("c" + std::to_string(c));
    for (int v = 1; v <= n; ++v) p.sig.declare_variable("x" + std::to_string(v));
    for (int r = 0; r < n; ++r) {
      std::vector<Term> parts;
      for (int k = 0; k < 6; ++k)
        parts.push_back(Term::variable(
            "x" + std::to_string(1 + static_cast<int>(rng.below(n)))));
      if (rng.chance(0.5))
        parts.push_back(Term::constant(
            "c" + std::to_string(1 + static_cast<int>(rng.below(3)))));
      Relation rel = r % 5 == 4 ? Relation::Diseq : Relation::Eq;
      p.items.push_back(
          {canonicalize(Term::sum(std::move(parts)), p.sig), Term::zero(), rel});
    }
    auto start = Clock::now();
    XorSystem sys = to_xor_system(p);
    XorSystem red = gaussian_eliminate(sys);
    (void)red;
    rows.push_back({n, ms_since(start)});
  }
  return rows;
}

double fit_loglog_degree(const std::vector<TimingRow>& rows) {
  // Least-squares slope of log(time) against log(size).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const TimingRow& row : rows) {
    if (row.ms <= 0) continue;
    double x = std::log(static_cast<double>(row.size));
    double y = std::log(row.ms);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<TimingRow> timing_ground_search(int min_verts, int max_verts) {
  std::vector<TimingRow> rows;
  for (int n = min_verts; n <= max_verts; ++n) {
    // A path followed by a K4 on the last four vertices: not 3-colorable,
    // and the search only discovers that after branching down the path.
    Graph g;
    g.nverts = n;
    for (int i = 1; i < n - 3; ++i) g.edges.push_back({i, i + 1});
    for (int i = n - 3; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) g.edges.push_back({i, j});
    Problem p = coloring_to_acun_asym(g);
    auto start = Clock::now();
    Decision d = ground_asym_unify_acun(p, 1ull << 40);
    rows.push_back({n, ms_since(start)});
    if (d.solvable) rows.back().ms = -1;  // should never happen
  }
  return rows;
}

CrosscheckReport run_crosscheck(const CrosscheckOptions& opt) {
  CrosscheckReport report;
  if (opt.inject_bug) {
    SuiteResult sanity = suite_agreement_xor(opt.seed, opt.agreement_cases, true);
    report.bug_detected = sanity.mismatches > 0;
    sanity.name = "inject-bug-sanity";
    // The run is healthy exactly when the corruption is caught.
    if (report.bug_detected) sanity.mismatches = 0;
    else sanity.mismatches = 1;
    report.suites.push_back(std::move(sanity));
    return report;
  }
  report.suites.push_back(
      suite_reduction_3sat(opt.seed, opt.reduction_cases, 12, 20));
  report.suites.push_back(
      suite_reduction_coloring(opt.seed + 1, opt.reduction_cases, 8));
  report.suites.push_back(suite_reduction_nae(opt.seed + 2, opt.reduction_cases, 12));
  report.suites.push_back(
      suite_agreement_asym(opt.seed + 3, opt.agreement_cases, Theory::R1));
  report.suites.push_back(
      suite_agreement_asym(opt.seed + 4, opt.agreement_cases, Theory::R5));
  report.suites.push_back(suite_agreement_xor(opt.seed + 5, opt.agreement_cases));
  report.suites.push_back(
      suite_agreement_acunh_ground(opt.seed + 6, opt.agreement_cases));
  report.suites.push_back(
      suite_agreement_acunh_automata(opt.seed + 7, opt.agreement_cases));
  report.suites.push_back(suite_backend_cross(opt.seed + 8, opt.agreement_cases / 2));
  if (opt.timing) {
    std::vector<int> sizes;
    for (int n = 10; n <= 200; n += 10) sizes.push_back(n);
    report.gauss_scaling = timing_gauss(sizes, opt.seed);
    report.gauss_fit_degree = fit_loglog_degree(report.gauss_scaling);
    report.search_scaling = timing_ground_search(6, 12);
  }
  return report;
}

}  // namespace uniflab
