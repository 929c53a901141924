#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uniflab/decision.hpp"
#include "uniflab/problem.hpp"

namespace uniflab {

// Standard-form equation: X ~ Y, X ~ h(Y) (g for R5), X ~ f(...), or X ~ d.
enum class RhsShape { Var, Unary, Wide, Const };

struct StandardEquation {
  std::string lhs;
  RhsShape shape = RhsShape::Var;
  std::string sym;                // unary/wide function or constant name
  std::vector<std::string> args;  // variable arguments

  bool asym = false;

  bool operator==(const StandardEquation&) const = default;
  std::string str() const;
};

// Clausal constraint: a negative unit !(Y=d) or the pair (Y=a) v (Y=b).
struct ConstraintClause {
  enum class Kind { NegUnit, PosPair };
  Kind kind = Kind::NegUnit;
  std::string var;
  std::string c1, c2;  // NegUnit uses c1 only

  bool operator==(const ConstraintClause&) const = default;
  std::string str() const;
};

// The working pair EQ || Gamma.
struct SolveState {
  std::vector<StandardEquation> equations;
  std::vector<ConstraintClause> constraints;

  void add_equation(StandardEquation eq);      // drops trivia and duplicates
  void add_constraint(ConstraintClause cl);    // deduplicated
};

struct TheoryShape {
  Theory tag = Theory::R1;
  std::string unary;       // "h" or "g"
  std::string wide;        // "f"
  std::size_t wide_arity;  // 2 or 5... 2 for R1, 3 for R5
};

TheoryShape theory_shape(Theory t);

// Flattens arbitrary eq/asym items to standard form; fresh variables name
// the non-variable subterms, and each asym item's flag lands on the top
// equation of its right side.
SolveState standardize(Problem& p);

// Replaces every asym X ~ h(Y) by the symmetric equation plus !(Y=a), !(Y=b).
// Asym flags on other shapes are dropped here; the extracted unifier is
// re-verified against the original problem, which re-checks them.
void remove_asymmetry(SolveState& state, const TheoryShape& shape);

enum class StepKind { Progress, Fail, Done };

struct StepResult {
  StepKind kind = StepKind::Done;
  std::string rule;  // "a".."d" on progress, "F1".."F5" on failure
};

// Applies the single highest-priority rule: failure rules first, then
// (a) variable elimination, (b) unary cancellation, (c) wide decomposition,
// (d) unary/wide root conflict.
StepResult infer_step(SolveState& state, const TheoryShape& shape);

struct Assignment {
  // Forced or chosen constants per variable.
  std::vector<std::pair<std::string, std::string>> atoms;
  const std::string* find(const std::string& var) const;
};

// Augments Gamma with units derived from the dag-solved form, then unit
// resolves. Returns one consistent assignment or nullopt (unsat).
std::optional<Assignment> solve_constraints(
    const std::vector<StandardEquation>& dag,
    const std::vector<ConstraintClause>& gamma, const TheoryShape& shape);

// The end-to-end decision procedure for R1 (Appendix-style rules with h/f)
// and R5 (g and ternary f).
Decision asym_unify(const Problem& p, bool want_trace = false);

// Termination metric (asym count, unsolved variables, unary count, wide
// count); decreases lexicographically on every Progress step.
std::array<std::size_t, 4> termination_metric(const SolveState& state,
                                              const TheoryShape& shape);

}  // namespace uniflab
