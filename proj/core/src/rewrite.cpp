#include "uniflab/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace uniflab {

namespace {

Term tconst(const char* s) { return Term::constant(s); }
Term tvar(const char* s) { return Term::variable(s); }

}  // namespace

TheorySpec builtin_theory(Theory t) {
  TheorySpec th;
  th.tag = t;
  switch (t) {
    case Theory::R1:
      th.rules.push_back({Term::app("h", {tconst("a")}),
                          Term::app("f", {tconst("a"), tconst("c")})});
      th.rules.push_back({Term::app("h", {tconst("b")}),
                          Term::app("f", {tconst("b"), tconst("c")})});
      break;
    case Theory::R4:
      th.rules.push_back(
          {Term::app("f", {tconst("a"), tconst("a"), tconst("a")}),
           Term::app("g", {tconst("a")})});
      th.rules.push_back(
          {Term::app("f", {tconst("b"), tconst("b"), tconst("b")}),
           Term::app("g", {tconst("b")})});
      break;
    case Theory::R5:
      th.rules.push_back(
          {Term::app("g", {tconst("a")}),
           Term::app("f", {tconst("a"), tconst("a"), tconst("a")})});
      th.rules.push_back(
          {Term::app("g", {tconst("b")}),
           Term::app("f", {tconst("b"), tconst("b"), tconst("b")})});
      break;
    case Theory::ACUN:
      th.xor_canonical = true;
      break;
    case Theory::ACUNH:
      th.xor_canonical = true;
      th.distribute_h = true;
      break;
    case Theory::Custom:
      break;
  }
  return th;
}

TheorySpec custom_theory(std::vector<RewriteRule> rules) {
  TheorySpec th;
  th.tag = Theory::Custom;
  th.rules = std::move(rules);
  return th;
}

TheorySpec theory_spec(const Problem& p) {
  if (p.theory == Theory::Custom) return custom_theory(p.custom_rules);
  return builtin_theory(p.theory);
}

bool match_pattern(const Term& pat, const Term& t,
                   std::map<std::string, Term>& binds) {
  switch (pat.kind()) {
    case Term::Kind::Variable: {
      auto [it, fresh] = binds.emplace(pat.head(), t);
      return fresh || it->second == t;
    }
    case Term::Kind::Constant:
      return t == pat;
    case Term::Kind::App: {
      if (!t.is_app() || t.head() != pat.head() ||
          t.args().size() != pat.args().size())
        return false;
      for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!match_pattern(pat.args()[i], t.args()[i], binds)) return false;
      return true;
    }
  }
  return false;
}

namespace {

constexpr std::size_t kStepGuard = 1u << 20;

Term subst_pattern(const Term& t, const std::map<std::string, Term>& binds) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = binds.find(t.head());
      return it == binds.end() ? t : it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(subst_pattern(a, binds));
      return Term::app(t.head(), std::move(args));
    }
  }
  return t;
}

// Innermost rewriting with plain syntactic matching.
Term normalize_rules(const Term& t, const std::vector<RewriteRule>& rules,
                     std::size_t& steps) {
  Term cur = t;
  if (cur.is_app()) {
    std::vector<Term> args;
    args.reserve(cur.args().size());
    for (const Term& a : cur.args()) args.push_back(normalize_rules(a, rules, steps));
    cur = Term::app(cur.head(), std::move(args));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const RewriteRule& rule : rules) {
      std::map<std::string, Term> binds;
      if (match_pattern(rule.lhs, cur, binds)) {
        if (++steps > kStepGuard)
          throw std::runtime_error("rewrite step limit exceeded (non-convergent rules?)");
        cur = normalize_rules(subst_pattern(rule.rhs, binds), rules, steps);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

Term normalize_xor(const Term& t, const TheorySpec& th, const Signature& sig);

// Normal form of h(u) given u already normalized.
Term apply_h(const Term& u, const TheorySpec& th, const Signature& sig) {
  if (u.is_zero()) return Term::zero();
  if (u.is_sum()) {
    std::vector<Term> parts;
    parts.reserve(u.args().size());
    for (const Term& a : u.args()) parts.push_back(apply_h(a, th, sig));
    return normalize_xor(Term::sum(std::move(parts)), th, sig);
  }
  return Term::app("h", {u});
}

Term normalize_xor(const Term& t, const TheorySpec& th, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      return t;
    case Term::Kind::App:
      break;
  }
  if (t.is_sum()) {
    std::vector<Term> parts;
    for (const Term& a : t.args()) {
      Term na = normalize_xor(a, th, sig);
      if (na.is_zero()) continue;
      if (na.is_sum())
        parts.insert(parts.end(), na.args().begin(), na.args().end());
      else
        parts.push_back(std::move(na));
    }
    std::stable_sort(parts.begin(), parts.end(),
                     [&](const Term& x, const Term& y) { return canon_cmp(x, y, sig) < 0; });
    // x + x -> 0: drop summands whose multiplicity is even.
    std::vector<Term> kept;
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      if ((j - i) % 2 == 1) kept.push_back(parts[i]);
      i = j;
    }
    return Term::sum(std::move(kept));
  }
  if (t.head() == "h" && th.distribute_h && t.args().size() == 1)
    return apply_h(normalize_xor(t.args()[0], th, sig), th, sig);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(normalize_xor(a, th, sig));
  return Term::app(t.head(), std::move(args));
}

}  // namespace

Term normalize(const Term& t, const TheorySpec& th, const Signature& sig) {
  if (th.xor_canonical) return normalize_xor(t, th, sig);
  std::size_t steps = 0;
  return normalize_rules(t, th.rules, steps);
}

bool is_normal_form(const Term& t, const TheorySpec& th, const Signature& sig) {
  return normalize(t, th, sig) == t;
}

bool joinable(const Term& s, const Term& t, const TheorySpec& th,
              const Signature& sig) {
  return normalize(s, th, sig) == normalize(t, th, sig);
}

bool verify_item(const ProblemItem& item, const Substitution& sigma,
                 const TheorySpec& th, const Signature& sig) {
  Term l = sigma.apply(item.lhs, sig);
  Term r = sigma.apply(item.rhs, sig);
  switch (item.rel) {
    case Relation::Eq:
      return joinable(l, r, th, sig);
    case Relation::AsymEq:
      return joinable(l, r, th, sig) && is_normal_form(r, th, sig);
    case Relation::Diseq:
      // Valid because all built-in theories are convergent: distinct normal
      // forms mean the instances are not equal modulo the theory.
      return !joinable(l, r, th, sig);
  }
  return false;
}

bool verify_solution(const Problem& p, const Substitution& sigma) {
  TheorySpec th = theory_spec(p);
  for (const ProblemItem& item : p.items)
    if (!verify_item(item, sigma, th, p.sig)) return false;
  return true;
}

}  // namespace uniflab
