#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniflab/bitvec.hpp"
#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"

namespace uniflab {

// One equation or disequation over Z2: sum of variables plus sum of
// constants, compared against 0.
struct XorRow {
  BitVec vars;
  BitVec consts;
  bool neq = false;

  bool trivial_eq() const { return !neq && !vars.any() && !consts.any(); }
};

struct XorSystem {
  std::vector<std::string> var_names;
  std::vector<std::string> const_names;
  std::vector<XorRow> rows;
  // Filled by gaussian_eliminate: row index owning each variable's pivot,
  // SIZE_MAX for free variables.
  std::vector<std::size_t> pivot_row;
};

// Terms must be sums of variables/constants/0. Duplicate symbols cancel.
XorSystem to_xor_system(const Problem& p);

struct GaussOptions {
  // Test-only hook: deliberately corrupts the first pivot reduction so the
  // cross-check harness can prove it detects mismatches.
  bool inject_pivot_bug = false;
};

// Reduced echelon form: pivots chosen along the declared variable order,
// eliminated from every other row. Disequations are only ever reduced.
XorSystem gaussian_eliminate(const XorSystem& sys, const GaussOptions& opt = {});

std::string row_to_string(const XorRow& row, const XorSystem& sys);

// Solvable iff after elimination no equation is constants-only nonzero and
// no disequation reduced to 0 != 0. The returned substitution re-verifies
// through the rewrite engine.
Decision decide_disunif_acun(const Problem& p, const GaussOptions& opt = {});

// Exhaustive ground search: every variable ranges over subset-sums of the
// declared constants. Equations force single remaining variables, which
// keeps the reduction instances tractable.
Decision ground_asym_unify_acun(const Problem& p,
                                unsigned long long max_nodes = 1ull << 26);

}  // namespace uniflab
