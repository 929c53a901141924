#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"

namespace uniflab {

// Signed DIMACS-style literals, exactly three per clause.
struct CnfFormula {
  int nvars = 0;
  std::vector<std::array<int, 3>> clauses;
};

struct Graph {
  int nverts = 0;
  std::vector<std::pair<int, int>> edges;  // 1-indexed, no self-loops
};

// Same shape as CnfFormula; a clause is satisfied when it has at least one
// true and at least one false literal.
struct NaeInstance {
  int nvars = 0;
  std::vector<std::array<int, 3>> clauses;
};

// h(x_j) = f(x_j, c) per variable, plus one disequation per clause against
// the falsifying assignment (T is a, F is b).
Problem sat3_to_r1_disunif(const CnfFormula& f);

// c1+c2+c3 =v y_i + y_j + z_k per edge, z_k fresh per edge.
Problem coloring_to_acun_asym(const Graph& g);

// f(x_i,x_i,x_i) = g(x_i) per variable plus z_j =v f(.,.,.) per clause.
// A negated literal uses a complement variable xn_i tied to x_i by the
// asymmetric equation wn_i =v f(x_i, xn_i, x_i), which forces them apart.
Problem nae3sat_to_r4_asym(const NaeInstance& f);

// Bounded ground search over constants and depth-1 terms by default;
// complete for reduction-shaped instances, reported as bounded otherwise.
Decision decide_disunif_r1(const Problem& p, int depth = 1,
                           unsigned long long max_nodes = 1ull << 22);

// Search over {a, b, g(a), g(b)} and normal f-terms over those, with clause
// variables taking their instantiated right sides.
Decision decide_asym_r4(const Problem& p,
                        unsigned long long max_nodes = 1ull << 22);

bool reduction_shaped_r1(const Problem& p);

bool brute_sat(const CnfFormula& f);       // n <= 20
bool brute_coloring(const Graph& g);       // |V| <= 10, three colors
bool brute_nae(const NaeInstance& f);      // n <= 20

CnfFormula parse_dimacs(const std::string& text);
Graph parse_edge_graph(const std::string& text);

// Decoders for witness transport: map a/b values of x1..xn back to booleans
// and c1/c2/c3 values of y1..yn back to colors 0..2.
std::optional<std::vector<bool>> decode_bool_assignment(const Substitution& sigma,
                                                        int nvars);
std::optional<std::vector<int>> decode_coloring(const Substitution& sigma,
                                                int nverts);

}  // namespace uniflab
