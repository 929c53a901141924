#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"
#include "uniflab/snf.hpp"

namespace uniflab {

// The per-constant linear systems A X = B^c over Z2[h]. A is shared: it
// holds the variable coefficients; only the constant side differs. The
// unknown order is the declared variable order followed by the variables
// introduced for disequations.
struct GroundSystems {
  std::vector<std::string> unknowns;
  std::vector<std::string> constants;
  PolyMatrix A;                          // rows = equations
  std::vector<std::vector<GF2Poly>> B;   // one vector per constant
  std::vector<std::size_t> diseq_unknowns;  // must be nonzero somewhere
};

// Disequations e1 != e2 are first normalized to z != 0 via a fresh z with
// z + e1 + e2 = 0; a disequation already of the form x != 0 is kept as is.
GroundSystems build_component_systems(Problem& p);

// Ground disunification: solve every per-constant system by Smith Normal
// Form, check each disequation via the particular solution and the Q2 rows,
// then assemble a ground substitution (verified by the rewrite engine).
Decision decide_ground_disunif_acunh(const Problem& p);

}  // namespace uniflab
