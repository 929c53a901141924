#include "uniflab/randgen.hpp"

#include <algorithm>
#include <set>

namespace uniflab {

CnfFormula random_cnf(Rng& rng, int max_vars, int max_clauses) {
  CnfFormula f;
  f.nvars = rng.range(3, max_vars);
  int m = rng.range(1, max_clauses);
  for (int i = 0; i < m; ++i) {
    std::array<int, 3> cl;
    for (int& lit : cl) {
      lit = rng.range(1, f.nvars);
      if (rng.chance(0.5)) lit = -lit;
    }
    f.clauses.push_back(cl);
  }
  return f;
}

Graph random_graph(Rng& rng, int max_verts) {
  Graph g;
  g.nverts = rng.range(3, max_verts);
  for (int i = 1; i <= g.nverts; ++i)
    for (int j = i + 1; j <= g.nverts; ++j)
      if (rng.chance(0.45)) g.edges.push_back({i, j});
  return g;
}

NaeInstance random_nae(Rng& rng, int max_vars) {
  NaeInstance f;
  f.nvars = rng.range(3, max_vars);
  int m = rng.range(1, 2 * f.nvars);
  for (int i = 0; i < m; ++i) {
    std::array<int, 3> cl;
    for (int& lit : cl) lit = rng.range(1, f.nvars);
    f.clauses.push_back(cl);
  }
  return f;
}

namespace {

Term random_xor_sum(Rng& rng, const Signature& sig, int max_degree,
                    bool with_h) {
  std::vector<Term> parts;
  int n = rng.range(1, 4);
  for (int i = 0; i < n; ++i) {
    Term atom;
    std::size_t nvars = sig.variables().size();
    std::size_t nconsts = sig.constants().size();
    std::size_t pick = rng.below(nvars + nconsts);
    if (pick < nvars)
      atom = Term::variable(sig.variables()[pick]);
    else
      atom = Term::constant(sig.constants()[pick - nvars]);
    if (with_h) {
      int wraps = rng.range(0, max_degree);
      for (int k = 0; k < wraps; ++k) atom = Term::app("h", {std::move(atom)});
    }
    parts.push_back(std::move(atom));
  }
  return canonicalize(Term::sum(std::move(parts)), sig);
}

}  // namespace

Problem random_acun_problem(Rng& rng, int max_vars, int max_consts,
                            int max_rows) {
  Problem p;
  p.theory = Theory::ACUN;
  p.sig = base_signature(Theory::ACUN);
  int nv = rng.range(1, max_vars), nc = rng.range(1, max_consts);
  for (int i = 1; i <= nc; ++i) p.sig.add_constant("c" + std::to_string(i));
  for (int i = 1; i <= nv; ++i) p.sig.declare_variable("x" + std::to_string(i));
  int rows = rng.range(1, max_rows);
  for (int i = 0; i < rows; ++i) {
    Term lhs = random_xor_sum(rng, p.sig, 0, false);
    Term rhs = rng.chance(0.3) ? Term::zero() : random_xor_sum(rng, p.sig, 0, false);
    p.items.push_back(
        {std::move(lhs), std::move(rhs),
         rng.chance(0.35) ? Relation::Diseq : Relation::Eq});
  }
  return p;
}

Problem random_acunh_problem(Rng& rng, int max_vars, int max_consts,
                             int max_rows, int max_degree) {
  Problem p;
  p.theory = Theory::ACUNH;
  p.sig = base_signature(Theory::ACUNH);
  int nv = rng.range(1, max_vars), nc = rng.range(1, max_consts);
  for (int i = 1; i <= nc; ++i) p.sig.add_constant("c" + std::to_string(i));
  for (int i = 1; i <= nv; ++i) p.sig.declare_variable("x" + std::to_string(i));
  int rows = rng.range(1, max_rows);
  for (int i = 0; i < rows; ++i) {
    Term lhs = random_xor_sum(rng, p.sig, max_degree, true);
    Term rhs =
        rng.chance(0.3) ? Term::zero() : random_xor_sum(rng, p.sig, max_degree, true);
    p.items.push_back(
        {std::move(lhs), std::move(rhs),
         rng.chance(0.35) ? Relation::Diseq : Relation::Eq});
  }
  return p;
}

Problem random_acunh_asym_problem(Rng& rng, int max_vars, int max_consts,
                                  int max_rows) {
  Problem p;
  p.theory = Theory::ACUNH;
  p.sig = base_signature(Theory::ACUNH);
  int nv = rng.range(2, max_vars), nc = rng.range(1, max_consts);
  for (int i = 1; i <= nc; ++i) p.sig.add_constant("c" + std::to_string(i));
  for (int i = 1; i <= nv; ++i) p.sig.declare_variable("x" + std::to_string(i));
  auto var = [&](int i) { return Term::variable(p.sig.variables()[i]); };
  int rows = rng.range(1, max_rows);
  for (int r = 0; r < rows; ++r) {
    int x = rng.range(0, nv - 1);
    Relation rel = rng.chance(0.5) ? Relation::AsymEq : Relation::Eq;
    switch (rng.range(0, 3)) {
      case 0: {  // X ~ Y + Z
        Term rhs = canonicalize(
            Term::sum({var(rng.range(0, nv - 1)), var(rng.range(0, nv - 1))}),
            p.sig);
        p.items.push_back({var(x), std::move(rhs), rel});
        break;
      }
      case 1:  // X ~ h(Y)
        p.items.push_back({var(x), Term::app("h", {var(rng.range(0, nv - 1))}), rel});
        break;
      case 2:  // X ~ const
        p.items.push_back(
            {var(x),
             Term::constant(p.sig.constants()[rng.below(p.sig.constants().size())]),
             Relation::Eq});
        break;
      default:  // X ~ 0
        p.items.push_back({var(x), Term::zero(), Relation::Eq});
        break;
    }
  }
  return p;
}

Problem random_asym_problem(Rng& rng, Theory theory, int max_vars,
                            int max_eqs) {
  Problem p;
  p.theory = theory;
  p.sig = base_signature(theory);
  int nv = rng.range(2, max_vars);
  for (int i = 1; i <= nv; ++i) p.sig.declare_variable("x" + std::to_string(i));
  auto var = [&](int i) { return Term::variable(p.sig.variables()[i]); };
  std::string unary = theory == Theory::R1 ? "h" : "g";
  std::size_t wide_arity = theory == Theory::R1 ? 2 : 3;
  int eqs = rng.range(1, max_eqs);
  for (int e = 0; e < eqs; ++e) {
    int x = rng.range(0, nv - 1);
    Relation rel = rng.chance(0.4) ? Relation::AsymEq : Relation::Eq;
    switch (rng.range(0, 3)) {
      case 0:
        p.items.push_back({var(x), var(rng.range(0, nv - 1)), rel});
        break;
      case 1:
        p.items.push_back({var(x), Term::app(unary, {var(rng.range(0, nv - 1))}), rel});
        break;
      case 2: {
        std::vector<Term> args;
        for (std::size_t k = 0; k < wide_arity; ++k)
          args.push_back(var(rng.range(0, nv - 1)));
        p.items.push_back({var(x), Term::app("f", std::move(args)), rel});
        break;
      }
      default: {
        const auto& consts = p.sig.constants();
        p.items.push_back(
            {var(x), Term::constant(consts[rng.below(consts.size())]), rel});
        break;
      }
    }
  }
  return p;
}

Term random_term(Rng& rng, const Signature& sig, int depth) {
  std::vector<std::string> funcs;
  if (sig.find("h")) funcs.push_back("h");
  if (sig.find("g")) funcs.push_back("g");
  if (sig.find("f")) funcs.push_back("f");
  if (sig.has_ac_plus()) funcs.push_back("+");
  bool leaf = depth <= 0 || rng.chance(0.3) ||
              (funcs.empty() && sig.variables().empty());
  if (leaf) {
    std::size_t nvars = sig.variables().size();
    std::size_t nconsts = sig.constants().size();
    std::size_t extra = sig.has_ac_plus() ? 1 : 0;  // the constant 0
    std::size_t pick = rng.below(nvars + nconsts + extra);
    if (pick < nvars) return Term::variable(sig.variables()[pick]);
    if (pick < nvars + nconsts)
      return Term::constant(sig.constants()[pick - nvars]);
    return Term::zero();
  }
  const std::string& f = funcs[rng.below(funcs.size())];
  std::size_t arity = f == "+" ? 2 : static_cast<std::size_t>(sig.find(f)->arity);
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i)
    args.push_back(random_term(rng, sig, depth - 1));
  return canonicalize(Term::app(f, std::move(args)), sig);
}

}  // namespace uniflab
