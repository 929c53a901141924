#include "uniflab/acunh_automata.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "uniflab/rewrite.hpp"

namespace uniflab {

namespace {

struct AcunhStandardizer {
  Problem& p;
  FreshVars fresh;
  std::vector<AcunhEq> out;

  explicit AcunhStandardizer(Problem& prob) : p(prob), fresh(prob.sig) {}

  void push(AcunhEq eq) {
    if (std::find(out.begin(), out.end(), eq) == out.end())
      out.push_back(std::move(eq));
  }

  std::string name(const Term& t, bool asym) {
    if (t.is_variable()) return t.head();
    std::string v = fresh.next();
    emit(v, t, asym);
    return v;
  }

  void emit(const std::string& var, const Term& t, bool asym) {
    if (t.is_zero()) {
      push({AcunhEq::Shape::ZeroEq, false, var, "", "", ""});
      return;
    }
    if (t.is_constant()) {
      push({AcunhEq::Shape::ConstEq, false, var, "", "", t.head()});
      return;
    }
    if (t.is_variable()) {
      push({AcunhEq::Shape::VarEq, false, var, t.head(), "", ""});
      return;
    }
    if (t.head() == "h") {
      push({AcunhEq::Shape::HEq, asym, var, name(t.args()[0], asym), "", ""});
      return;
    }
    if (t.is_sum()) {
      // Binary chain; the asym flag rides along so every intermediate sum
      // keeps both parts nonzero and disjoint.
      std::string left = name(t.args()[0], asym);
      std::string rest;
      if (t.args().size() == 2) {
        rest = name(t.args()[1], asym);
      } else {
        std::vector<Term> tail(t.args().begin() + 1, t.args().end());
        rest = fresh.next();
        emit(rest, Term::sum(std::move(tail)), asym);
      }
      push({AcunhEq::Shape::SumEq, asym, var, left, rest, ""});
      return;
    }
    throw std::invalid_argument("symbol '" + t.head() + "' outside ACUNh");
  }

  void item(const ProblemItem& it) {
    bool asym = it.rel == Relation::AsymEq;
    if (it.rhs.is_variable()) {
      if (it.lhs.is_variable()) {
        if (it.lhs.head() != it.rhs.head())
          push({AcunhEq::Shape::VarEq, false, it.lhs.head(), it.rhs.head(), "", ""});
        return;
      }
      // A variable right side is normal under any ground assignment.
      emit(it.rhs.head(), it.lhs, false);
      return;
    }
    std::string lhs_var =
        it.lhs.is_variable() ? it.lhs.head() : name(it.lhs, false);
    emit(lhs_var, it.rhs, asym);
  }
};

}  // namespace

std::vector<AcunhEq> standardize_acunh(Problem& p) {
  if (p.theory != Theory::ACUNH)
    throw std::invalid_argument("expected an acunh problem");
  AcunhStandardizer std_(p);
  for (const ProblemItem& it : p.items) {
    if (it.rel == Relation::Diseq)
      throw std::invalid_argument("disequations are not asym-unification items");
    std_.item(it);
  }
  return std::move(std_.out);
}

namespace {

struct GuessContext {
  std::vector<std::string> vars;
  std::vector<std::string> consts;
  const std::vector<AcunhEq>& eqs;

  std::size_t var_index(const std::string& v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return i;
    throw std::logic_error("untracked variable " + v);
  }

  bool nonzero(unsigned long long guess, std::size_t var, std::size_t c) const {
    return guess >> (var * consts.size() + c) & 1ull;
  }

  // Cheap rejection before building any automaton.
  bool plausible(unsigned long long guess) const {
    for (const AcunhEq& eq : eqs) {
      switch (eq.shape) {
        case AcunhEq::Shape::ZeroEq: {
          std::size_t x = var_index(eq.lhs);
          for (std::size_t c = 0; c < consts.size(); ++c)
            if (nonzero(guess, x, c)) return false;
          break;
        }
        case AcunhEq::Shape::ConstEq: {
          std::size_t x = var_index(eq.lhs);
          for (std::size_t c = 0; c < consts.size(); ++c) {
            bool want = consts[c] == eq.constant;
            if (nonzero(guess, x, c) != want) return false;
          }
          break;
        }
        case AcunhEq::Shape::VarEq: {
          std::size_t x = var_index(eq.lhs), y = var_index(eq.arg1);
          for (std::size_t c = 0; c < consts.size(); ++c)
            if (nonzero(guess, x, c) != nonzero(guess, y, c)) return false;
          break;
        }
        case AcunhEq::Shape::HEq: {
          std::size_t x = var_index(eq.lhs), y = var_index(eq.arg1);
          std::size_t live = 0;
          for (std::size_t c = 0; c < consts.size(); ++c) {
            if (nonzero(guess, x, c) != nonzero(guess, y, c)) return false;
            if (nonzero(guess, y, c)) ++live;
          }
          // Asymmetric h: exactly one nonzero component of Y.
          if (eq.asym && live != 1) return false;
          break;
        }
        case AcunhEq::Shape::SumEq: {
          std::size_t x = var_index(eq.lhs);
          std::size_t q = var_index(eq.arg1);
          std::size_t r = var_index(eq.arg2);
          bool q_live = false, r_live = false;
          for (std::size_t c = 0; c < consts.size(); ++c) {
            bool nq = nonzero(guess, q, c), nr = nonzero(guess, r, c);
            bool nx = nonzero(guess, x, c);
            if (eq.asym && nq && nr) {
              // both sides present: x may be anything nonzero? x = q xor r
              // over disjoint supports is nonzero, so x must be live.
              if (!nx) return false;
            }
            if (!nq && !nr && nx) return false;
            if ((nq != nr) && !nx) return false;  // x = the live side
            q_live |= nq;
            r_live |= nr;
          }
          if (eq.asym && (!q_live || !r_live)) return false;
          break;
        }
        case AcunhEq::Shape::NonZero:
          break;
      }
    }
    return true;
  }
};

Decision solve_single_constant(const Problem& p,
                               const std::vector<AcunhEq>& eqs,
                               const TrackOrder& tracks, const Term& constant) {
  std::vector<EqAutomaton> machines;
  for (const AcunhEq& eq : eqs) machines.push_back(build_automaton(eq, tracks));
  ProductResult product = intersect_and_check(machines);
  if (product.empty) return Decision::no("empty automata intersection");
  Substitution all = decode(product.witness, tracks, constant, p.sig);
  Substitution sigma;
  for (const std::string& v : p.sig.variables()) {
    const Term* t = all.lookup(v);
    sigma.bind(v, t ? *t : Term::zero());
  }
  if (!verify_solution(p, sigma))
    return Decision::no("internal: decoded witness failed verification");
  return Decision::yes(std::move(sigma));
}

}  // namespace

Decision ground_asym_unify_acunh(const Problem& p, const AcunhOptions& opt) {
  Problem work = p;
  std::vector<AcunhEq> eqs = standardize_acunh(work);
  TrackOrder tracks = work.sig.variables();
  std::vector<std::string> consts = work.sig.constants();

  if (consts.empty()) {
    // Only the all-zero assignment is ground.
    Substitution sigma;
    for (const std::string& v : p.sig.variables()) sigma.bind(v, Term::zero());
    if (verify_solution(p, sigma)) return Decision::yes(std::move(sigma));
    return Decision::no("no constants: only the zero assignment exists");
  }
  if (consts.size() == 1)
    return solve_single_constant(p, eqs, tracks, Term::constant(consts[0]));

  GuessContext ctx{tracks, consts, eqs};
  std::size_t bits = tracks.size() * consts.size();
  if (bits > 62) throw std::invalid_argument("component guess space too large");
  unsigned long long total = 1ull << bits;
  unsigned long long budget = opt.max_guesses;

  for (unsigned long long guess = 0; guess < total; ++guess) {
    if (budget-- == 0) {
      Decision d = Decision::no("guess budget exhausted");
      d.bounded = true;
      return d;
    }
    if (!ctx.plausible(guess)) continue;

    bool all_components_ok = true;
    Substitution assembled;
    std::vector<Term> value(tracks.size(), Term::zero());
    for (std::size_t c = 0; c < consts.size() && all_components_ok; ++c) {
      std::vector<AcunhEq> component;
      for (std::size_t v = 0; v < tracks.size(); ++v) {
        AcunhEq constraint;
        constraint.lhs = tracks[v];
        constraint.shape = ctx.nonzero(guess, v, c) ? AcunhEq::Shape::NonZero
                                                    : AcunhEq::Shape::ZeroEq;
        component.push_back(std::move(constraint));
      }
      for (const AcunhEq& eq : eqs) {
        switch (eq.shape) {
          case AcunhEq::Shape::SumEq: {
            AcunhEq split = eq;
            bool nq = ctx.nonzero(guess, ctx.var_index(eq.arg1), c);
            bool nr = ctx.nonzero(guess, ctx.var_index(eq.arg2), c);
            split.asym = eq.asym && nq && nr;
            component.push_back(std::move(split));
            break;
          }
          case AcunhEq::Shape::HEq: {
            AcunhEq split = eq;
            split.asym = eq.asym && ctx.nonzero(guess, ctx.var_index(eq.arg1), c);
            component.push_back(std::move(split));
            break;
          }
          case AcunhEq::Shape::VarEq:
            component.push_back(eq);
            break;
          case AcunhEq::Shape::ZeroEq:
            component.push_back(eq);
            break;
          case AcunhEq::Shape::ConstEq: {
            AcunhEq split;
            split.lhs = eq.lhs;
            if (consts[c] == eq.constant) {
              split.shape = AcunhEq::Shape::ConstEq;
              split.constant = eq.constant;
            } else {
              split.shape = AcunhEq::Shape::ZeroEq;
            }
            component.push_back(std::move(split));
            break;
          }
          case AcunhEq::Shape::NonZero:
            component.push_back(eq);
            break;
        }
      }
      std::vector<EqAutomaton> machines;
      for (const AcunhEq& eq : component)
        machines.push_back(build_automaton(eq, tracks));
      ProductResult product = intersect_and_check(machines);
      if (product.empty) {
        all_components_ok = false;
        break;
      }
      Substitution comp_values =
          decode(product.witness, tracks, Term::constant(consts[c]), work.sig);
      for (std::size_t v = 0; v < tracks.size(); ++v) {
        const Term* t = comp_values.lookup(tracks[v]);
        if (!t || t->is_zero()) continue;
        std::vector<Term> parts;
        if (!value[v].is_zero()) parts.push_back(value[v]);
        parts.push_back(*t);
        value[v] = canonicalize(Term::sum(std::move(parts)), work.sig);
      }
    }
    if (!all_components_ok) continue;

    Substitution sigma;
    for (const std::string& v : p.sig.variables())
      sigma.bind(v, value[ctx.var_index(v)]);
    if (verify_solution(p, sigma)) return Decision::yes(std::move(sigma));
  }
  return Decision::no("exhausted component guesses");
}

}  // namespace uniflab
