#include "uniflab/acunh_ground.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "uniflab/rewrite.hpp"

namespace uniflab {

namespace {

struct RowCoeffs {
  std::map<std::string, GF2Poly> var_coeff;
  std::map<std::string, GF2Poly> const_coeff;
};

// Reads h^k(atom) coefficients off an ACUNh-normalized term.
RowCoeffs coefficients(const Term& t, const Signature& sig) {
  RowCoeffs out;
  auto add_atom = [&](const Term& atom) {
    unsigned degree = 0;
    const Term* cur = &atom;
    while (cur->is_app() && cur->head() == "h") {
      ++degree;
      cur = &cur->args()[0];
    }
    if (cur->is_variable()) {
      out.var_coeff[cur->head()].flip(degree);
    } else if (cur->is_constant() && !cur->is_zero()) {
      if (!sig.constant_index(cur->head()))
        throw std::invalid_argument("undeclared constant '" + cur->head() + "'");
      out.const_coeff[cur->head()].flip(degree);
    } else {
      throw std::invalid_argument("non-ACUNh structure under h");
    }
  };
  if (t.is_zero()) return out;
  if (t.is_sum())
    for (const Term& a : t.args()) add_atom(a);
  else
    add_atom(t);
  return out;
}

}  // namespace

GroundSystems build_component_systems(Problem& p) {
  if (p.theory != Theory::ACUNH)
    throw std::invalid_argument("expected an acunh problem");
  TheorySpec th = builtin_theory(Theory::ACUNH);
  FreshVars fresh(p.sig);

  GroundSystems sys;
  sys.constants = p.sig.constants();

  std::vector<RowCoeffs> eq_rows;
  std::vector<std::string> diseq_names;
  for (const ProblemItem& item : p.items) {
    if (item.rel == Relation::AsymEq)
      throw std::invalid_argument("asym equations are not disunification items");
    Term combined = normalize(Term::app("+", {item.lhs, item.rhs}), th, p.sig);
    if (item.rel == Relation::Eq) {
      eq_rows.push_back(coefficients(combined, p.sig));
      continue;
    }
    if (combined.is_variable()) {
      diseq_names.push_back(combined.head());
      continue;
    }
    // e1 != e2 becomes z = e1 + e2 with z != 0. Equal sides leave z forced
    // to 0, which the disequation check then rejects.
    std::string z = fresh.next();
    RowCoeffs row = coefficients(combined, p.sig);
    row.var_coeff[z] = row.var_coeff[z] + GF2Poly::one();
    eq_rows.push_back(std::move(row));
    diseq_names.push_back(z);
  }

  sys.unknowns = p.sig.variables();
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < sys.unknowns.size(); ++i)
      if (sys.unknowns[i] == name) return i;
    throw std::logic_error("unknown variable " + name);
  };
  for (const std::string& name : diseq_names)
    sys.diseq_unknowns.push_back(index_of(name));

  sys.A = PolyMatrix(eq_rows.size(), sys.unknowns.size());
  sys.B.assign(sys.constants.size(),
               std::vector<GF2Poly>(eq_rows.size(), GF2Poly::zero()));
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    for (const auto& [name, coeff] : eq_rows[i].var_coeff)
      sys.A.at(i, index_of(name)) = coeff;
    for (const auto& [name, coeff] : eq_rows[i].const_coeff)
      sys.B[*p.sig.constant_index(name)][i] = coeff;
  }
  return sys;
}

namespace {

struct ComponentSolution {
  GeneralSolution general;
  std::vector<GF2Poly> params;  // one free parameter per Q2 column

  std::vector<GF2Poly> values() const {
    std::vector<GF2Poly> v = general.particular;
    for (std::size_t j = 0; j < general.free_basis.size(); ++j) {
      if (params[j].is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = v[i] + params[j] * general.free_basis[j][i];
    }
    return v;
  }
};

}  // namespace

Decision decide_ground_disunif_acunh(const Problem& p) {
  Problem work = p;
  GroundSystems sys = build_component_systems(work);

  std::vector<ComponentSolution> comps;
  for (std::size_t c = 0; c < sys.constants.size(); ++c) {
    SolveOutcome outcome = solve_system_snf(sys.A, sys.B[c]);
    if (!outcome.ok()) {
      const NoSolution& no = *outcome.failure;
      return Decision::no(
          "component '" + sys.constants[c] + "': " +
          (no.why == NoSolution::Why::Divisibility
               ? "divisibility failure at diagonal " + std::to_string(no.row)
               : "inconsistent row " + std::to_string(no.row)));
    }
    ComponentSolution comp;
    comp.general = std::move(*outcome.solution);
    comp.params.assign(comp.general.free_basis.size(), GF2Poly::zero());
    comps.push_back(std::move(comp));
  }

  // Each disequation must be satisfiable in at least one component: a
  // nonzero particular value there, or a nonzero Q2 row to steer with.
  for (std::size_t j : sys.diseq_unknowns) {
    bool possible = false;
    for (const ComponentSolution& comp : comps) {
      if (!comp.general.particular[j].is_zero()) possible = true;
      for (const auto& col : comp.general.free_basis)
        if (!col[j].is_zero()) possible = true;
    }
    if (!possible)
      return Decision::no("disequation on '" + sys.unknowns[j] +
                          "' is forced to 0 in every component");
  }

  auto diseqs_ok = [&]() {
    for (std::size_t j : sys.diseq_unknowns) {
      bool nonzero = false;
      for (const ComponentSolution& comp : comps)
        if (!comp.values()[j].is_zero()) nonzero = true;
      if (!nonzero) return false;
    }
    return true;
  };

  if (!diseqs_ok()) {
    // Greedy: steer each violated disequation with one free parameter.
    for (std::size_t j : sys.diseq_unknowns) {
      bool nonzero = false;
      for (const ComponentSolution& comp : comps)
        if (!comp.values()[j].is_zero()) nonzero = true;
      if (nonzero) continue;
      for (ComponentSolution& comp : comps) {
        bool fixed = false;
        for (std::size_t col = 0; col < comp.general.free_basis.size(); ++col)
          if (!comp.general.free_basis[col][j].is_zero()) {
            comp.params[col] = GF2Poly::one();
            fixed = true;
            break;
          }
        if (fixed) break;
      }
    }
  }
  if (!diseqs_ok()) {
    // Spread assignment: parameters get monomials with disjoint degree
    // ranges, so every affine form with a nonzero coefficient keeps a
    // unique top term. Always succeeds once the check above passed.
    int maxdeg = 0;
    for (const ComponentSolution& comp : comps) {
      for (const GF2Poly& v : comp.general.particular)
        maxdeg = std::max(maxdeg, v.degree());
      for (const auto& col : comp.general.free_basis)
        for (const GF2Poly& v : col) maxdeg = std::max(maxdeg, v.degree());
    }
    unsigned span = static_cast<unsigned>(maxdeg + 2);
    unsigned i = 1;
    for (ComponentSolution& comp : comps)
      for (GF2Poly& param : comp.params)
        param = GF2Poly::monomial(span * i++);
  }
  if (!diseqs_ok())
    return Decision::no("internal: free parameter search failed");

  Substitution sigma;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    std::vector<Term> parts;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      Term part = poly_to_term(comps[c].values()[j],
                               Term::constant(sys.constants[c]), work.sig);
      if (!part.is_zero()) parts.push_back(std::move(part));
    }
    sigma.bind(sys.unknowns[j], canonicalize(Term::sum(std::move(parts)), work.sig));
  }

  Substitution restricted;
  for (const std::string& v : p.sig.variables()) {
    const Term* t = sigma.lookup(v);
    restricted.bind(v, t ? *t : Term::zero());
  }
  if (!verify_solution(p, restricted))
    return Decision::no("internal: assembled solution failed verification");
  return Decision::yes(std::move(restricted));
}

}  // namespace uniflab
