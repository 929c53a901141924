#pragma once

#include <string>
#include <vector>

#include "uniflab/automata.hpp"
#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"

namespace uniflab {

// Flattens eq/asym items to the automata shapes (P=Q+R, X=h(Y), X=c, X=0,
// X=Y and their asymmetric variants) via fresh variables. Asymmetry
// propagates into the named subterms of an asymmetric right side: every
// intermediate sum and h-argument must stay irreducible.
std::vector<AcunhEq> standardize_acunh(Problem& p);

struct AcunhOptions {
  unsigned long long max_guesses = 1ull << 20;
};

// Single constant: build the DFAs, intersect, decode. Multiple constants:
// enumerate which (variable, constant) components are zero, split each
// equation per constant, and solve every component by the DFA pipeline.
Decision ground_asym_unify_acunh(const Problem& p, const AcunhOptions& opt = {});

}  // namespace uniflab
