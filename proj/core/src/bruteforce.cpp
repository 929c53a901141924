#include "uniflab/bruteforce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "uniflab/rewrite.hpp"

namespace uniflab {

namespace {

struct Searcher {
  const Problem& p;
  TheorySpec th;
  const std::vector<Term>& pool;
  unsigned long long max_nodes;
  unsigned long long nodes = 0;
  bool budget_hit = false;

  std::vector<std::string> search_vars;
  std::vector<bool> item_forced;
  std::map<std::string, std::size_t> forced_of_var;
  std::vector<std::vector<std::string>> item_vars;
  Substitution sigma;

  Searcher(const Problem& prob, const std::vector<Term>& values,
           unsigned long long budget)
      : p(prob), th(theory_spec(prob)), pool(values), max_nodes(budget) {
    std::map<std::string, int> occurrences;
    auto count = [&](auto&& self, const Term& t) -> void {
      if (t.is_variable()) {
        occurrences[t.head()]++;
        return;
      }
      for (const Term& a : t.args()) self(self, a);
    };
    for (const ProblemItem& item : p.items) {
      std::vector<std::string> vars;
      item.lhs.collect_variables(vars);
      item.rhs.collect_variables(vars);
      item_vars.push_back(vars);
      count(count, item.lhs);
      count(count, item.rhs);
    }
    item_forced.assign(p.items.size(), false);
    for (std::size_t i = 0; i < p.items.size(); ++i) {
      const ProblemItem& item = p.items[i];
      if (item.rel == Relation::Diseq || !item.lhs.is_variable()) continue;
      const std::string& v = item.lhs.head();
      if (occurrences[v] == 1 && !forced_of_var.count(v)) {
        forced_of_var[v] = i;
        item_forced[i] = true;
      }
    }
    std::set<std::string> seen;
    for (const auto& vars : item_vars)
      for (const std::string& v : vars)
        if (!forced_of_var.count(v) && seen.insert(v).second)
          search_vars.push_back(v);
    for (const std::string& v : p.sig.variables())
      if (!forced_of_var.count(v) && seen.insert(v).second)
        search_vars.push_back(v);
  }

  // Every fully-bound item must verify; a forced asym item with bound right
  // side must have an irreducible instance.
  bool consistent() const {
    for (std::size_t i = 0; i < p.items.size(); ++i) {
      const ProblemItem& item = p.items[i];
      if (item_forced[i]) {
        bool bound = true;
        for (const std::string& v : item.rhs.variables())
          if (!sigma.contains(v)) bound = false;
        if (bound && item.rel == Relation::AsymEq &&
            !is_normal_form(sigma.apply(item.rhs, p.sig), th, p.sig))
          return false;
        continue;
      }
      bool bound = true;
      for (const std::string& v : item_vars[i])
        if (!sigma.contains(v)) bound = false;
      if (bound && !verify_item(item, sigma, th, p.sig)) return false;
    }
    return true;
  }

  // XOR-theory forcing: if the normalized residue of an equation has
  // exactly one variable left and it occurs as a bare summand, its value
  // is the remaining ground part.
  bool try_force(std::vector<std::string>& newly) {
    if (!th.xor_canonical) return false;
    for (std::size_t i = 0; i < p.items.size(); ++i) {
      const ProblemItem& item = p.items[i];
      if (item.rel == Relation::Diseq || item_forced[i]) continue;
      Term residue = normalize(
          sigma.apply(Term::app("+", {item.lhs, item.rhs}), p.sig), th, p.sig);
      std::vector<Term> parts;
      if (residue.is_sum())
        parts = residue.args();
      else
        parts.push_back(residue);
      std::string candidate;
      bool viable = true;
      std::vector<Term> rest;
      for (const Term& part : parts) {
        if (part.variables().empty()) {
          rest.push_back(part);
          continue;
        }
        if (part.is_variable() && candidate.empty()) {
          candidate = part.head();
          continue;
        }
        viable = false;
        break;
      }
      if (!viable || candidate.empty()) continue;
      sigma.bind(candidate, canonicalize(Term::sum(std::move(rest)), p.sig));
      newly.push_back(candidate);
      return true;
    }
    return false;
  }

  bool finish(Decision& out) {
    Substitution full = sigma;
    for (std::size_t i = 0; i < p.items.size(); ++i)
      if (item_forced[i])
        full.bind(p.items[i].lhs.head(), full.apply(p.items[i].rhs, p.sig));
    for (const std::string& v : p.sig.variables())
      if (!full.contains(v) && !pool.empty()) full.bind(v, pool.front());
    if (!verify_solution(p, full)) return false;
    out = Decision::yes(std::move(full));
    return true;
  }

  bool dfs(std::size_t index, Decision& out) {
    if (++nodes > max_nodes) {
      budget_hit = true;
      return false;
    }
    std::vector<std::string> forced_now;
    bool ok = true;
    while (true) {
      if (!consistent()) {
        ok = false;
        break;
      }
      std::vector<std::string> newly;
      if (!try_force(newly)) break;
      forced_now.insert(forced_now.end(), newly.begin(), newly.end());
    }
    bool found = false;
    if (ok) {
      std::size_t next = index;
      while (next < search_vars.size() && sigma.contains(search_vars[next]))
        ++next;
      if (next == search_vars.size()) {
        found = finish(out);
      } else {
        for (const Term& value : pool) {
          sigma.bind(search_vars[next], value);
          if (dfs(next + 1, out)) {
            found = true;
            break;
          }
          sigma.unbind(search_vars[next]);
          if (budget_hit) break;
        }
      }
    }
    if (!found)
      for (auto it = forced_now.rbegin(); it != forced_now.rend(); ++it)
        sigma.unbind(*it);
    return found;
  }
};

}  // namespace

SearchOutcome bounded_ground_search(const Problem& p,
                                    const std::vector<Term>& pool,
                                    unsigned long long max_nodes) {
  Searcher s(p, pool, max_nodes);
  SearchOutcome out;
  Decision found;
  if (s.dfs(0, found)) {
    out.decision = std::move(found);
  } else {
    out.decision = Decision::no(s.budget_hit ? "search budget exhausted"
                                             : "exhausted value pool");
    out.decision.bounded = s.budget_hit;
  }
  out.complete_within_pool = !s.budget_hit;
  out.nodes = s.nodes;
  return out;
}

std::vector<Term> ground_pool(const Problem& p, int depth) {
  TheorySpec th = theory_spec(p);
  std::vector<Term> pool;
  for (const std::string& c : p.sig.constants())
    pool.push_back(Term::constant(c));
  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next;
    auto add = [&](Term t) {
      if (!is_normal_form(t, th, p.sig)) return;
      if (std::find(pool.begin(), pool.end(), t) != pool.end()) return;
      if (std::find(next.begin(), next.end(), t) != next.end()) return;
      next.push_back(std::move(t));
    };
    for (const char* name : {"h", "g"}) {
      if (!p.sig.find(name)) continue;
      for (const Term& t : pool) add(Term::app(name, {t}));
    }
    if (const Symbol* f = p.sig.find("f")) {
      if (f->arity == 2) {
        for (const Term& x : pool)
          for (const Term& y : pool) add(Term::app("f", {x, y}));
      } else if (f->arity == 3) {
        for (const Term& x : pool)
          for (const Term& y : pool)
            for (const Term& z : pool) add(Term::app("f", {x, y, z}));
      }
    }
    pool.insert(pool.end(), next.begin(), next.end());
  }
  return pool;
}

std::vector<Term> xor_value_pool(const Signature& sig, int max_degree) {
  bool with_h = sig.find("h") != nullptr;
  int degrees = with_h ? max_degree + 1 : 1;
  std::vector<Term> atoms;
  for (const std::string& c : sig.constants())
    for (int k = 0; k < degrees; ++k) {
      Term t = Term::constant(c);
      for (int i = 0; i < k; ++i) t = Term::app("h", {std::move(t)});
      atoms.push_back(std::move(t));
    }
  if (atoms.size() > 20) throw std::invalid_argument("xor value pool too large");
  std::vector<Term> pool;
  for (unsigned long long mask = 0; mask < (1ull << atoms.size()); ++mask) {
    std::vector<Term> parts;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1) parts.push_back(atoms[i]);
    pool.push_back(canonicalize(Term::sum(std::move(parts)), sig));
  }
  return pool;
}

}  // namespace uniflab
