#include "uniflab/asym_syntactic.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "uniflab/rewrite.hpp"

namespace uniflab {

std::string StandardEquation::str() const {
  std::ostringstream os;
  os << lhs << (asym ? " =v " : " = ");
  switch (shape) {
    case RhsShape::Var: os << args[0]; break;
    case RhsShape::Const: os << sym; break;
    case RhsShape::Unary: os << sym << "(" << args[0] << ")"; break;
    case RhsShape::Wide: {
      os << sym << "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ", ";
        os << args[i];
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

std::string ConstraintClause::str() const {
  if (kind == Kind::NegUnit) return "!(" + var + "=" + c1 + ")";
  return "(" + var + "=" + c1 + ") v (" + var + "=" + c2 + ")";
}

void SolveState::add_equation(StandardEquation eq) {
  if (eq.shape == RhsShape::Var && eq.lhs == eq.args[0]) return;
  if (std::find(equations.begin(), equations.end(), eq) != equations.end())
    return;
  equations.push_back(std::move(eq));
}

void SolveState::add_constraint(ConstraintClause cl) {
  if (std::find(constraints.begin(), constraints.end(), cl) != constraints.end())
    return;
  constraints.push_back(std::move(cl));
}

TheoryShape theory_shape(Theory t) {
  if (t == Theory::R1) return {Theory::R1, "h", "f", 2};
  if (t == Theory::R5) return {Theory::R5, "g", "f", 3};
  throw std::invalid_argument("asym-syntactic handles theories r1 and r5 only");
}

namespace {

struct Standardizer {
  Problem& p;
  FreshVars fresh;
  SolveState out;

  explicit Standardizer(Problem& prob) : p(prob), fresh(prob.sig) {}

  // Names `t` by a variable, emitting symmetric equations for its structure.
  std::string name(const Term& t) {
    if (t.is_variable()) return t.head();
    std::string v = fresh.next();
    emit(v, t, /*asym=*/false);
    return v;
  }

  // Emits `var ~ shape(t)` with the given asym flag on the top equation.
  void emit(const std::string& var, const Term& t, bool asym) {
    StandardEquation eq;
    eq.lhs = var;
    eq.asym = asym;
    if (t.is_variable()) {
      eq.shape = RhsShape::Var;
      eq.args = {t.head()};
    } else if (t.is_constant()) {
      eq.shape = RhsShape::Const;
      eq.sym = t.head();
    } else {
      eq.shape = t.args().size() == 1 ? RhsShape::Unary : RhsShape::Wide;
      eq.sym = t.head();
      for (const Term& a : t.args()) eq.args.push_back(name(a));
    }
    out.add_equation(std::move(eq));
  }

  void item(const ProblemItem& it) {
    bool asym = it.rel == Relation::AsymEq;
    if (it.rhs.is_variable()) {
      if (it.lhs.is_variable()) {
        StandardEquation eq;
        eq.lhs = it.lhs.head();
        eq.shape = RhsShape::Var;
        eq.args = {it.rhs.head()};
        eq.asym = asym;
        out.add_equation(std::move(eq));
      } else {
        emit(it.rhs.head(), it.lhs, /*asym=*/false);
        if (asym) {
          // X stays a variable: the instantiation is normal for any
          // normalized solution, nothing to record.
        }
      }
      return;
    }
    std::string lhs_var = name(it.lhs);
    emit(lhs_var, it.rhs, asym);
  }
};

void check_signature(const Problem& p, const TheoryShape& shape) {
  for (const ProblemItem& it : p.items) {
    for (const Term* side : {&it.lhs, &it.rhs}) {
      auto walk = [&](auto&& self, const Term& t) -> void {
        if (t.is_constant()) {
          if (!p.sig.constant_index(t.head()))
            throw std::invalid_argument("constant '" + t.head() +
                                        "' outside the theory signature");
          return;
        }
        if (t.is_app()) {
          if (t.head() != shape.unary && t.head() != shape.wide)
            throw std::invalid_argument("symbol '" + t.head() +
                                        "' outside the theory signature");
          for (const Term& a : t.args()) self(self, a);
        }
      };
      walk(walk, *side);
    }
  }
}

}  // namespace

SolveState standardize(Problem& p) {
  TheoryShape shape = theory_shape(p.theory);
  check_signature(p, shape);
  for (const ProblemItem& it : p.items)
    if (it.rel == Relation::Diseq)
      throw std::invalid_argument("disequations are not asym-unification items");
  Standardizer std_(p);
  for (const ProblemItem& it : p.items) std_.item(it);
  return std::move(std_.out);
}

void remove_asymmetry(SolveState& state, const TheoryShape& shape) {
  for (StandardEquation& eq : state.equations) {
    if (!eq.asym) continue;
    if (eq.shape == RhsShape::Unary && eq.sym == shape.unary) {
      state.add_constraint({ConstraintClause::Kind::NegUnit, eq.args[0], "a", ""});
      state.add_constraint({ConstraintClause::Kind::NegUnit, eq.args[0], "b", ""});
    }
    // Other shapes carry no clause; the final verification re-checks them.
    eq.asym = false;
  }
}

namespace {

bool occurs_in_equation(const StandardEquation& eq, const std::string& var) {
  if (eq.lhs == var) return true;
  return std::find(eq.args.begin(), eq.args.end(), var) != eq.args.end();
}

void rename_var(SolveState& state, const std::string& from,
                const std::string& to, std::size_t keep_index) {
  for (std::size_t i = 0; i < state.equations.size(); ++i) {
    if (i == keep_index) continue;
    StandardEquation& eq = state.equations[i];
    if (eq.lhs == from) eq.lhs = to;
    for (std::string& a : eq.args)
      if (a == from) a = to;
  }
  for (ConstraintClause& cl : state.constraints)
    if (cl.var == from) cl.var = to;
}

// Drops trivial X ~ X rows and duplicate equations in place.
void tidy(SolveState& state) {
  std::vector<StandardEquation> kept;
  for (StandardEquation& eq : state.equations) {
    if (eq.shape == RhsShape::Var && eq.lhs == eq.args[0]) continue;
    if (std::find(kept.begin(), kept.end(), eq) != kept.end()) continue;
    kept.push_back(std::move(eq));
  }
  state.equations = std::move(kept);
}

// F5: cycle through non-variable right sides.
bool has_cycle(const SolveState& state) {
  std::map<std::string, std::vector<std::string>> edges;
  for (const StandardEquation& eq : state.equations)
    if (eq.shape == RhsShape::Unary || eq.shape == RhsShape::Wide)
      for (const std::string& a : eq.args) edges[eq.lhs].push_back(a);
  std::set<std::string> done, path;
  auto dfs = [&](auto&& self, const std::string& v) -> bool {
    if (path.count(v)) return true;
    if (done.count(v)) return false;
    path.insert(v);
    auto it = edges.find(v);
    if (it != edges.end())
      for (const std::string& w : it->second)
        if (self(self, w)) return true;
    path.erase(v);
    done.insert(v);
    return false;
  };
  for (const auto& [v, _] : edges)
    if (dfs(dfs, v)) return true;
  return false;
}

}  // namespace

StepResult infer_step(SolveState& state, const TheoryShape& shape) {
  tidy(state);
  auto& eqs = state.equations;

  // Failure rules, highest priority. Group per left-hand variable.
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      if (eqs[i].lhs != eqs[j].lhs) continue;
      const StandardEquation* ci = &eqs[i];
      const StandardEquation* cj = &eqs[j];
      for (int swap = 0; swap < 2; ++swap, std::swap(ci, cj)) {
        if (ci->shape != RhsShape::Const) continue;
        if (cj->shape == RhsShape::Wide) return {StepKind::Fail, "F1"};
        if (cj->shape == RhsShape::Unary) return {StepKind::Fail, "F2"};
        if (cj->shape == RhsShape::Const && ci->sym != cj->sym) {
          bool ab = (ci->sym == "a" && cj->sym == "b") ||
                    (ci->sym == "b" && cj->sym == "a");
          return {StepKind::Fail, ab ? "F4" : "F3"};
        }
      }
    }
  }
  if (has_cycle(state)) return {StepKind::Fail, "F5"};

  // (a) variable elimination.
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (eqs[i].shape != RhsShape::Var) continue;
    const std::string x = eqs[i].lhs;
    const std::string v = eqs[i].args[0];
    bool occurs = false;
    for (std::size_t j = 0; j < eqs.size() && !occurs; ++j)
      if (j != i && occurs_in_equation(eqs[j], x)) occurs = true;
    for (const ConstraintClause& cl : state.constraints)
      if (cl.var == x) occurs = true;
    if (!occurs) continue;
    rename_var(state, x, v, i);
    tidy(state);
    return {StepKind::Progress, "a"};
  }

  // (b) unary cancellation, (c) wide decomposition, (d) root conflict.
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      if (eqs[i].lhs != eqs[j].lhs) continue;
      if (eqs[i].shape == RhsShape::Unary && eqs[j].shape == RhsShape::Unary) {
        StandardEquation add;
        add.lhs = eqs[j].args[0];
        add.shape = RhsShape::Var;
        add.args = {eqs[i].args[0]};
        eqs.erase(eqs.begin() + j);
        state.add_equation(std::move(add));
        return {StepKind::Progress, "b"};
      }
    }
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      if (eqs[i].lhs != eqs[j].lhs) continue;
      if (eqs[i].shape == RhsShape::Wide && eqs[j].shape == RhsShape::Wide) {
        std::vector<StandardEquation> adds;
        for (std::size_t k = 0; k < eqs[i].args.size(); ++k) {
          StandardEquation add;
          add.lhs = eqs[j].args[k];
          add.shape = RhsShape::Var;
          add.args = {eqs[i].args[k]};
          adds.push_back(std::move(add));
        }
        eqs.erase(eqs.begin() + j);
        for (StandardEquation& add : adds) state.add_equation(std::move(add));
        return {StepKind::Progress, "c"};
      }
    }
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = i + 1; j < eqs.size(); ++j) {
      if (eqs[i].lhs != eqs[j].lhs) continue;
      std::size_t ui = i, wi = j;
      if (eqs[ui].shape == RhsShape::Wide && eqs[wi].shape == RhsShape::Unary)
        std::swap(ui, wi);
      if (eqs[ui].shape != RhsShape::Unary || eqs[wi].shape != RhsShape::Wide)
        continue;
      const std::string x = eqs[ui].lhs;
      const std::string y = eqs[ui].args[0];
      std::vector<std::string> wide_args = eqs[wi].args;
      std::size_t lo = std::min(ui, wi), hi = std::max(ui, wi);
      eqs.erase(eqs.begin() + hi);
      eqs.erase(eqs.begin() + lo);
      if (shape.tag == Theory::R1) {
        // {X ~ h(Y), X ~ f(U,V)} => U ~ Y, V ~ c, X ~ f(Y,V), (Y=a) v (Y=b)
        StandardEquation e1{wide_args[0], RhsShape::Var, "", {y}, false};
        StandardEquation e2{wide_args[1], RhsShape::Const, "c", {}, false};
        StandardEquation e3{x, RhsShape::Wide, shape.wide, {y, wide_args[1]}, false};
        state.add_equation(std::move(e1));
        state.add_equation(std::move(e2));
        state.add_equation(std::move(e3));
      } else {
        // {X ~ g(Y), X ~ f(U,V,W)} => U,V,W ~ Y, X ~ f(Y,Y,Y), (Y=a) v (Y=b)
        for (const std::string& w : wide_args) {
          StandardEquation e{w, RhsShape::Var, "", {y}, false};
          state.add_equation(std::move(e));
        }
        StandardEquation e3{x, RhsShape::Wide, shape.wide, {y, y, y}, false};
        state.add_equation(std::move(e3));
      }
      state.add_constraint({ConstraintClause::Kind::PosPair, y, "a", "b"});
      return {StepKind::Progress, "d"};
    }
  }
  return {StepKind::Done, ""};
}

std::array<std::size_t, 4> termination_metric(const SolveState& state,
                                              const TheoryShape& shape) {
  std::size_t asym = 0, unary = 0, wide = 0;
  std::map<std::string, std::size_t> occurrences;
  std::map<std::string, bool> lhs_once;
  for (const StandardEquation& eq : state.equations) {
    if (eq.asym) ++asym;
    if (eq.shape == RhsShape::Unary) ++unary;
    if (eq.shape == RhsShape::Wide) ++wide;
    occurrences[eq.lhs]++;
    for (const std::string& a : eq.args) occurrences[a]++;
  }
  std::size_t unsolved = 0;
  for (const auto& [var, count] : occurrences) {
    bool solved = false;
    if (count == 1)
      for (const StandardEquation& eq : state.equations)
        if (eq.lhs == var) solved = true;
    if (!solved) ++unsolved;
  }
  return {asym, unsolved, unary, wide};
}

const std::string* Assignment::find(const std::string& var) const {
  for (const auto& [v, c] : atoms)
    if (v == var) return &c;
  return nullptr;
}

namespace {

struct Units {
  std::set<std::pair<std::string, std::string>> pos, neg;
  bool conflict = false;

  void add_pos(const std::string& v, const std::string& c) {
    if (neg.count({v, c})) conflict = true;
    pos.insert({v, c});
  }
  void add_neg(const std::string& v, const std::string& c) {
    if (pos.count({v, c})) conflict = true;
    neg.insert({v, c});
  }
};

}  // namespace

std::optional<Assignment> solve_constraints(
    const std::vector<StandardEquation>& dag,
    const std::vector<ConstraintClause>& gamma, const TheoryShape& shape) {
  Units units;
  for (const ConstraintClause& cl : gamma)
    if (cl.kind == ConstraintClause::Kind::NegUnit) units.add_neg(cl.var, cl.c1);

  // Step 1: units derived from the solved form. A variable equated to a
  // function term can be neither a nor b; one equated to a constant is
  // forced to it.
  for (const StandardEquation& eq : dag) {
    switch (eq.shape) {
      case RhsShape::Unary:
      case RhsShape::Wide:
        units.add_neg(eq.lhs, "a");
        units.add_neg(eq.lhs, "b");
        break;
      case RhsShape::Const:
        for (const char* d : {"a", "b"})
          if (eq.sym != d) units.add_neg(eq.lhs, d);
        if (eq.sym == "a" || eq.sym == "b") units.add_pos(eq.lhs, eq.sym);
        break;
      case RhsShape::Var:
        break;
    }
  }
  if (units.conflict) return std::nullopt;

  // Step 2: unit resolution with the negative clauses.
  Assignment out;
  for (const auto& [v, c] : units.pos) out.atoms.push_back({v, c});
  for (const ConstraintClause& cl : gamma) {
    if (cl.kind != ConstraintClause::Kind::PosPair) continue;
    if (units.pos.count({cl.var, cl.c1}) || units.pos.count({cl.var, cl.c2}))
      continue;  // already satisfied
    bool no1 = units.neg.count({cl.var, cl.c1}) != 0;
    bool no2 = units.neg.count({cl.var, cl.c2}) != 0;
    if (no1 && no2) return std::nullopt;
    if (const std::string* chosen = out.find(cl.var)) {
      if (*chosen != cl.c1 && *chosen != cl.c2) return std::nullopt;
      continue;
    }
    out.atoms.push_back({cl.var, no1 ? cl.c2 : cl.c1});
  }
  return out;
}

namespace {

// Enumerates consistent assignments over the surviving positive pairs;
// index 0 reproduces solve_constraints' canonical choice.
struct AssignmentSpace {
  Assignment forced;
  std::vector<ConstraintClause> open;  // pairs with both disjuncts possible
  std::vector<ConstraintClause> half;  // pairs with one refuted disjunct

  std::size_t count() const { return std::size_t(1) << open.size(); }

  Assignment get(std::size_t index, const Units& units) const {
    Assignment a = forced;
    for (const ConstraintClause& cl : half) {
      bool no1 = units.neg.count({cl.var, cl.c1}) != 0;
      if (!a.find(cl.var)) a.atoms.push_back({cl.var, no1 ? cl.c2 : cl.c1});
    }
    for (std::size_t i = 0; i < open.size(); ++i) {
      const ConstraintClause& cl = open[i];
      if (!a.find(cl.var))
        a.atoms.push_back({cl.var, (index >> i & 1) ? cl.c2 : cl.c1});
    }
    return a;
  }
};

Term ground_term_for(const TheoryShape& shape) {
  // R1: c is irreducible everywhere it can appear. R5 has only a and b, so
  // verification grounds with an extra free constant.
  return shape.tag == Theory::R1 ? Term::constant("c") : Term::constant("d");
}

struct Extractor {
  const std::vector<StandardEquation>& dag;
  const Assignment& assignment;
  std::map<std::string, Term> memo;

  Term value(const std::string& var) {
    auto it = memo.find(var);
    if (it != memo.end()) return it->second;
    Term result = Term::variable(var);
    if (const std::string* c = assignment.find(var)) {
      result = Term::constant(*c);
    } else {
      for (const StandardEquation& eq : dag) {
        if (eq.lhs != var) continue;
        switch (eq.shape) {
          case RhsShape::Var: result = value(eq.args[0]); break;
          case RhsShape::Const: result = Term::constant(eq.sym); break;
          case RhsShape::Unary: result = Term::app(eq.sym, {value(eq.args[0])}); break;
          case RhsShape::Wide: {
            std::vector<Term> args;
            for (const std::string& a : eq.args) args.push_back(value(a));
            result = Term::app(eq.sym, std::move(args));
            break;
          }
        }
        break;
      }
    }
    memo[var] = result;
    return result;
  }
};

}  // namespace

Decision asym_unify(const Problem& p, bool want_trace) {
  TheoryShape shape = theory_shape(p.theory);
  Problem work = p;  // standardization declares fresh variables
  std::vector<std::string> original_vars = p.sig.variables();

  SolveState state = standardize(work);
  Decision decision;
  auto trace = [&](const std::string& rule) {
    if (want_trace) decision.trace.push_back(rule);
  };

  for (const StandardEquation& eq : state.equations)
    if (eq.asym && eq.shape == RhsShape::Unary) trace("remove-asym");
  remove_asymmetry(state, shape);

  std::size_t vars_before = 0;
  {
    std::set<std::string> names;
    for (const StandardEquation& eq : state.equations) {
      names.insert(eq.lhs);
      names.insert(eq.args.begin(), eq.args.end());
    }
    vars_before = names.size();
  }

  auto metric = termination_metric(state, shape);
  for (;;) {
    StepResult step = infer_step(state, shape);
    if (step.kind == StepKind::Fail) {
      trace(step.rule);
      decision.solvable = false;
      decision.detail = step.rule;
      return decision;
    }
    if (step.kind == StepKind::Done) break;
    trace(step.rule);
    auto next = termination_metric(state, shape);
    assert(next < metric);  // lexicographic termination measure
    metric = next;
    std::set<std::string> names;
    for (const StandardEquation& eq : state.equations) {
      names.insert(eq.lhs);
      names.insert(eq.args.begin(), eq.args.end());
    }
    assert(names.size() <= vars_before);  // no rule introduces variables
  }

  // Dag-solved form reached; decide the clauses and extract.
  Units units;
  for (const ConstraintClause& cl : state.constraints)
    if (cl.kind == ConstraintClause::Kind::NegUnit) units.add_neg(cl.var, cl.c1);
  for (const StandardEquation& eq : state.equations) {
    switch (eq.shape) {
      case RhsShape::Unary:
      case RhsShape::Wide:
        units.add_neg(eq.lhs, "a");
        units.add_neg(eq.lhs, "b");
        break;
      case RhsShape::Const:
        for (const char* d : {"a", "b"})
          if (eq.sym != d) units.add_neg(eq.lhs, d);
        if (eq.sym == "a" || eq.sym == "b") units.add_pos(eq.lhs, eq.sym);
        break;
      case RhsShape::Var:
        break;
    }
  }
  auto canonical = solve_constraints(state.equations, state.constraints, shape);
  if (!canonical) {
    trace("unsat");
    decision.solvable = false;
    decision.detail = "constraints unsatisfiable";
    return decision;
  }

  AssignmentSpace space;
  for (const auto& [v, c] : units.pos) space.forced.atoms.push_back({v, c});
  for (const ConstraintClause& cl : state.constraints) {
    if (cl.kind != ConstraintClause::Kind::PosPair) continue;
    if (units.pos.count({cl.var, cl.c1}) || units.pos.count({cl.var, cl.c2}))
      continue;
    bool no1 = units.neg.count({cl.var, cl.c1}) != 0;
    bool no2 = units.neg.count({cl.var, cl.c2}) != 0;
    if (no1 && no2) {
      decision.solvable = false;
      decision.detail = "constraints unsatisfiable";
      return decision;
    }
    if (no1 || no2) space.half.push_back(cl);
    else space.open.push_back(cl);
  }

  // Verification grounding: free variables become an irreducible constant.
  Term ground = ground_term_for(shape);
  Problem verify_problem = p;
  if (shape.tag == Theory::R5) verify_problem.sig.add_constant("d");

  for (std::size_t idx = 0; idx < space.count(); ++idx) {
    Assignment assignment = space.get(idx, units);
    Extractor ex{state.equations, assignment, {}};
    Substitution sigma;
    for (const std::string& v : original_vars) sigma.bind(v, ex.value(v));

    Substitution grounded;
    for (const std::string& v : original_vars) {
      Term t = ex.value(v);
      Substitution to_ground;
      for (const std::string& fv : t.variables()) to_ground.bind(fv, ground);
      grounded.bind(v, to_ground.apply(t, verify_problem.sig));
    }
    for (const std::string& v : original_vars)
      if (!grounded.contains(v)) grounded.bind(v, ground);

    if (verify_solution(verify_problem, grounded)) {
      decision.solvable = true;
      decision.unifier = std::move(sigma);
      return decision;
    }
  }
  decision.solvable = false;
  decision.detail = "no constraint assignment verifies";
  return decision;
}

}  // namespace uniflab
