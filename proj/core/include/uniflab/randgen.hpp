#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uniflab/problem.hpp"
#include "uniflab/reductions.hpp"

namespace uniflab {

// All randomized suites draw through this wrapper: mt19937_64 output is
// specified, and avoiding std distributions keeps runs byte-reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }
  std::size_t below(std::size_t n) { return n ? engine_() % n : 0; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
  }
  bool chance(double p) {
    return static_cast<double>(engine_()) / static_cast<double>(UINT64_MAX) < p;
  }

 private:
  std::mt19937_64 engine_;
};

CnfFormula random_cnf(Rng& rng, int max_vars, int max_clauses);
Graph random_graph(Rng& rng, int max_verts);
NaeInstance random_nae(Rng& rng, int max_vars);  // positive literals

// Random ACUN systems: sums of variables/constants, eq and diseq rows.
Problem random_acun_problem(Rng& rng, int max_vars, int max_consts,
                            int max_rows);

// Random ACUNh eq/diseq systems with h-nesting up to max_degree.
Problem random_acunh_problem(Rng& rng, int max_vars, int max_consts,
                             int max_rows, int max_degree);

// Random ACUNh eq/asym systems in the automata standard shapes.
Problem random_acunh_asym_problem(Rng& rng, int max_vars, int max_consts,
                                  int max_rows);

// Random R1/R5 problems built from standard-form equations.
Problem random_asym_problem(Rng& rng, Theory theory, int max_vars,
                            int max_eqs);

Term random_term(Rng& rng, const Signature& sig, int depth);

}  // namespace uniflab
