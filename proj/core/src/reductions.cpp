#include "uniflab/reductions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "uniflab/bruteforce.hpp"
#include "uniflab/rewrite.hpp"

namespace uniflab {

namespace {

std::string xvar(int i) { return "x" + std::to_string(i); }
std::string yvar(int i) { return "y" + std::to_string(i); }
std::string zvar(int i) { return "z" + std::to_string(i); }

void check_clause(const std::array<int, 3>& cl, int nvars) {
  for (int lit : cl)
    if (lit == 0 || std::abs(lit) > nvars)
      throw std::invalid_argument("literal out of range");
}

}  // namespace

Problem sat3_to_r1_disunif(const CnfFormula& f) {
  Problem p;
  p.theory = Theory::R1;
  p.sig = base_signature(Theory::R1);
  for (int i = 1; i <= f.nvars; ++i) p.sig.declare_variable(xvar(i));
  for (int i = 1; i <= f.nvars; ++i) {
    Term x = Term::variable(xvar(i));
    p.items.push_back({Term::app("h", {x}),
                       Term::app("f", {x, Term::constant("c")}), Relation::Eq});
  }
  for (const auto& cl : f.clauses) {
    check_clause(cl, f.nvars);
    // The falsifying assignment: a positive literal is false (b), a negated
    // one true (a).
    auto falsifier = [](int lit) { return Term::constant(lit > 0 ? "b" : "a"); };
    Term lhs = Term::app(
        "f", {Term::variable(xvar(std::abs(cl[0]))),
              Term::app("f", {Term::variable(xvar(std::abs(cl[1]))),
                              Term::variable(xvar(std::abs(cl[2])))})});
    Term rhs = Term::app(
        "f", {falsifier(cl[0]),
              Term::app("f", {falsifier(cl[1]), falsifier(cl[2])})});
    p.items.push_back({std::move(lhs), std::move(rhs), Relation::Diseq});
  }
  return p;
}

Problem coloring_to_acun_asym(const Graph& g) {
  Problem p;
  p.theory = Theory::ACUN;
  p.sig = base_signature(Theory::ACUN);
  for (int i = 1; i <= 3; ++i) p.sig.add_constant("c" + std::to_string(i));
  for (int i = 1; i <= g.nverts; ++i) p.sig.declare_variable(yvar(i));
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    p.sig.declare_variable(zvar(static_cast<int>(k) + 1));
  Term colors = canonicalize(
      Term::sum({Term::constant("c1"), Term::constant("c2"), Term::constant("c3")}),
      p.sig);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    auto [i, j] = g.edges[k];
    if (i == j) throw std::invalid_argument("self-loop in graph");
    Term rhs = canonicalize(
        Term::sum({Term::variable(yvar(i)), Term::variable(yvar(j)),
                   Term::variable(zvar(static_cast<int>(k) + 1))}),
        p.sig);
    p.items.push_back({colors, std::move(rhs), Relation::AsymEq});
  }
  return p;
}

Problem nae3sat_to_r4_asym(const NaeInstance& f) {
  Problem p;
  p.theory = Theory::R4;
  p.sig = base_signature(Theory::R4);
  std::set<int> negated;
  for (const auto& cl : f.clauses) {
    check_clause(cl, f.nvars);
    for (int lit : cl)
      if (lit < 0) negated.insert(-lit);
  }
  for (int i = 1; i <= f.nvars; ++i) p.sig.declare_variable(xvar(i));
  for (int i : negated) {
    p.sig.declare_variable("xn" + std::to_string(i));
    p.sig.declare_variable("wn" + std::to_string(i));
  }
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    p.sig.declare_variable(zvar(static_cast<int>(j) + 1));

  auto variable_equation = [&](const std::string& name) {
    Term x = Term::variable(name);
    p.items.push_back(
        {Term::app("f", {x, x, x}), Term::app("g", {x}), Relation::Eq});
  };
  for (int i = 1; i <= f.nvars; ++i) variable_equation(xvar(i));
  for (int i : negated) {
    variable_equation("xn" + std::to_string(i));
    Term x = Term::variable(xvar(i));
    Term xn = Term::variable("xn" + std::to_string(i));
    p.items.push_back({Term::variable("wn" + std::to_string(i)),
                       Term::app("f", {x, xn, x}), Relation::AsymEq});
  }
  auto literal_term = [&](int lit) {
    return lit > 0 ? Term::variable(xvar(lit))
                   : Term::variable("xn" + std::to_string(-lit));
  };
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& cl = f.clauses[j];
    Term rhs = Term::app(
        "f", {literal_term(cl[0]), literal_term(cl[1]), literal_term(cl[2])});
    p.items.push_back({Term::variable(zvar(static_cast<int>(j) + 1)),
                       std::move(rhs), Relation::AsymEq});
  }
  return p;
}

bool reduction_shaped_r1(const Problem& p) {
  if (p.theory != Theory::R1) return false;
  std::set<std::string> equated;
  for (const ProblemItem& item : p.items) {
    if (item.rel == Relation::AsymEq) return false;
    if (item.rel == Relation::Eq) {
      // h(x) = f(x, c)
      if (!(item.lhs.is_app() && item.lhs.head() == "h" &&
            item.lhs.args()[0].is_variable()))
        return false;
      const std::string& x = item.lhs.args()[0].head();
      Term want = Term::app("f", {Term::variable(x), Term::constant("c")});
      if (!(item.rhs == want)) return false;
      equated.insert(x);
    }
  }
  for (const ProblemItem& item : p.items) {
    if (item.rel != Relation::Diseq) continue;
    // f(xp, f(xq, xr)) != f(d1, f(d2, d3)) with d over {a, b}
    const Term& l = item.lhs;
    const Term& r = item.rhs;
    auto nested_vars = [&](const Term& t, std::vector<std::string>& out) {
      if (!(t.is_app() && t.head() == "f" && t.args().size() == 2)) return false;
      if (!t.args()[0].is_variable()) return false;
      const Term& inner = t.args()[1];
      if (!(inner.is_app() && inner.head() == "f" &&
            inner.args()[0].is_variable() && inner.args()[1].is_variable()))
        return false;
      out = {t.args()[0].head(), inner.args()[0].head(), inner.args()[1].head()};
      return true;
    };
    std::vector<std::string> vars;
    if (!nested_vars(l, vars)) return false;
    for (const std::string& v : vars)
      if (!equated.count(v)) return false;
    auto ground_ab = [&](const Term& t) {
      if (!(t.is_app() && t.head() == "f" && t.args().size() == 2)) return false;
      const Term& d1 = t.args()[0];
      const Term& inner = t.args()[1];
      if (!(inner.is_app() && inner.head() == "f")) return false;
      for (const Term* d : {&d1, &inner.args()[0], &inner.args()[1]})
        if (!(d->is_constant() && (d->head() == "a" || d->head() == "b")))
          return false;
      return true;
    };
    if (!ground_ab(r)) return false;
  }
  return true;
}

Decision decide_disunif_r1(const Problem& p, int depth,
                           unsigned long long max_nodes) {
  if (p.theory != Theory::R1)
    throw std::invalid_argument("decide_disunif_r1 expects an r1 problem");
  SearchOutcome out = bounded_ground_search(p, ground_pool(p, depth), max_nodes);
  if (!out.decision.solvable && !reduction_shaped_r1(p))
    out.decision.bounded = true;
  return out.decision;
}

Decision decide_asym_r4(const Problem& p, unsigned long long max_nodes) {
  if (p.theory != Theory::R4)
    throw std::invalid_argument("decide_asym_r4 expects an r4 problem");
  TheorySpec th = builtin_theory(Theory::R4);
  std::vector<Term> pool = {Term::constant("a"), Term::constant("b"),
                            Term::app("g", {Term::constant("a")}),
                            Term::app("g", {Term::constant("b")})};
  std::vector<Term> base = pool;
  for (const Term& x : base)
    for (const Term& y : base)
      for (const Term& z : base) {
        Term t = Term::app("f", {x, y, z});
        if (is_normal_form(t, th, p.sig)) pool.push_back(std::move(t));
      }
  SearchOutcome out = bounded_ground_search(p, pool, max_nodes);
  if (!out.decision.solvable && !out.complete_within_pool)
    out.decision.bounded = true;
  return out.decision;
}

bool brute_sat(const CnfFormula& f) {
  if (f.nvars > 20) throw std::invalid_argument("brute_sat cap exceeded");
  for (unsigned long long m = 0; m < (1ull << f.nvars); ++m) {
    bool ok = true;
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (int lit : cl) {
        bool v = m >> (std::abs(lit) - 1) & 1;
        if (lit > 0 ? v : !v) sat = true;
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool brute_coloring(const Graph& g) {
  if (g.nverts > 10) throw std::invalid_argument("brute_coloring cap exceeded");
  std::vector<int> color(g.nverts, 0);
  unsigned long long total = 1;
  for (int i = 0; i < g.nverts; ++i) total *= 3;
  for (unsigned long long m = 0; m < total; ++m) {
    unsigned long long v = m;
    for (int i = 0; i < g.nverts; ++i) {
      color[i] = static_cast<int>(v % 3);
      v /= 3;
    }
    bool ok = true;
    for (auto [i, j] : g.edges)
      if (color[i - 1] == color[j - 1]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

bool brute_nae(const NaeInstance& f) {
  if (f.nvars > 20) throw std::invalid_argument("brute_nae cap exceeded");
  for (unsigned long long m = 0; m < (1ull << f.nvars); ++m) {
    bool ok = true;
    for (const auto& cl : f.clauses) {
      int truths = 0;
      for (int lit : cl) {
        bool v = m >> (std::abs(lit) - 1) & 1;
        if (lit > 0 ? v : !v) ++truths;
      }
      if (truths == 0 || truths == 3) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula f;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  std::vector<int> lits;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      int m = 0;
      if (!(hs >> p >> cnf >> f.nvars >> m) || cnf != "cnf")
        throw std::invalid_argument("malformed DIMACS header");
      have_header = true;
      continue;
    }
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (lits.size() != 3)
          throw std::invalid_argument("clause is not three literals");
        f.clauses.push_back({lits[0], lits[1], lits[2]});
        lits.clear();
      } else {
        lits.push_back(lit);
      }
    }
  }
  if (!have_header) throw std::invalid_argument("missing DIMACS header");
  if (!lits.empty()) throw std::invalid_argument("unterminated clause");
  for (const auto& cl : f.clauses) check_clause(cl, f.nvars);
  return f;
}

Graph parse_edge_graph(const std::string& text) {
  Graph g;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "p") {
      std::string type;
      int m = 0;
      if (!(ls >> type >> g.nverts >> m))
        throw std::invalid_argument("malformed graph header");
      continue;
    }
    if (kw != "e") throw std::invalid_argument("expected an 'e u v' line");
    int u = 0, v = 0;
    if (!(ls >> u >> v) || u <= 0 || v <= 0)
      throw std::invalid_argument("malformed edge");
    if (u == v) throw std::invalid_argument("self-loop in graph");
    g.nverts = std::max({g.nverts, u, v});
    g.edges.push_back({u, v});
  }
  if (g.nverts < 3) g.nverts = 3;
  return g;
}

std::optional<std::vector<bool>> decode_bool_assignment(const Substitution& sigma,
                                                        int nvars) {
  std::vector<bool> out(nvars);
  for (int i = 1; i <= nvars; ++i) {
    const Term* t = sigma.lookup(xvar(i));
    if (!t || !t->is_constant()) return std::nullopt;
    if (t->head() == "a") out[i - 1] = true;
    else if (t->head() == "b") out[i - 1] = false;
    else return std::nullopt;
  }
  return out;
}

std::optional<std::vector<int>> decode_coloring(const Substitution& sigma,
                                                int nverts) {
  std::vector<int> out(nverts);
  for (int i = 1; i <= nverts; ++i) {
    const Term* t = sigma.lookup(yvar(i));
    if (!t || t->is_zero()) {
      out[i - 1] = 0;  // isolated vertex, any color works
      continue;
    }
    if (!t->is_constant()) return std::nullopt;
    if (t->head() == "c1") out[i - 1] = 0;
    else if (t->head() == "c2") out[i - 1] = 1;
    else if (t->head() == "c3") out[i - 1] = 2;
    else return std::nullopt;
  }
  return out;
}

}  // namespace uniflab
