#pragma once

#include <vector>

#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"

namespace uniflab {

struct SearchOutcome {
  Decision decision;
  // False when the node budget was exhausted before the space was covered.
  bool complete_within_pool = true;
  unsigned long long nodes = 0;
};

// Exhaustive ground search over the given value pool, with two shortcuts
// that do not change the searched space:
//  - a variable occurring exactly once, as the whole left side of an eq or
//    asym item, takes the instantiated right side as its value;
//  - for the XOR theories, an equation whose normalized residue contains
//    exactly one unassigned variable as a bare summand forces that value.
// Every item is checked through the rewrite engine as soon as its variables
// are assigned, and a found assignment is re-verified as a whole.
SearchOutcome bounded_ground_search(const Problem& p,
                                    const std::vector<Term>& pool,
                                    unsigned long long max_nodes = 1ull << 22);

// All normal-form ground terms over the theory's signature up to `depth`.
std::vector<Term> ground_pool(const Problem& p, int depth);

// Ground XOR values: subset sums of h^0..h^max_degree applied to the
// declared constants (plain subset sums when the theory lacks h).
std::vector<Term> xor_value_pool(const Signature& sig, int max_degree);

}  // namespace uniflab
