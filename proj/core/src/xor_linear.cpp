#include "uniflab/xor_linear.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "uniflab/rewrite.hpp"

namespace uniflab {

namespace {

void add_term_bits(const Term& t, const Signature& sig, XorRow& row) {
  if (t.is_zero()) return;
  if (t.is_variable()) {
    row.vars.flip(*sig.variable_index(t.head()));
    return;
  }
  if (t.is_constant()) {
    auto idx = sig.constant_index(t.head());
    if (!idx) throw std::invalid_argument("undeclared constant '" + t.head() + "'");
    row.consts.flip(*idx);
    return;
  }
  if (t.is_sum()) {
    for (const Term& a : t.args()) add_term_bits(a, sig, row);
    return;
  }
  throw std::invalid_argument("non-ACUN symbol '" + t.head() + "' in XOR problem");
}

Term bits_to_term(const BitVec& consts, const std::vector<std::string>& names) {
  std::vector<Term> parts;
  for (std::size_t i = 0; i < consts.size(); ++i)
    if (consts.test(i)) parts.push_back(Term::constant(names[i]));
  return Term::sum(std::move(parts));
}

}  // namespace

XorSystem to_xor_system(const Problem& p) {
  if (p.theory != Theory::ACUN)
    throw std::invalid_argument("to_xor_system expects an acun problem");
  XorSystem sys;
  sys.var_names = p.sig.variables();
  sys.const_names = p.sig.constants();
  for (const ProblemItem& item : p.items) {
    XorRow row;
    row.vars = BitVec(sys.var_names.size());
    row.consts = BitVec(sys.const_names.size());
    row.neq = item.rel == Relation::Diseq;
    if (item.rel == Relation::AsymEq)
      throw std::invalid_argument("asym equations have no XOR row form");
    add_term_bits(item.lhs, p.sig, row);
    add_term_bits(item.rhs, p.sig, row);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

XorSystem gaussian_eliminate(const XorSystem& sys, const GaussOptions& opt) {
  XorSystem out = sys;
  out.pivot_row.assign(out.var_names.size(), SIZE_MAX);
  std::vector<bool> used(out.rows.size(), false);
  bool first_pivot = true;
  for (std::size_t v = 0; v < out.var_names.size(); ++v) {
    std::size_t pivot = SIZE_MAX;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (used[r] || out.rows[r].neq) continue;
      if (out.rows[r].vars.test(v)) {
        pivot = r;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    used[pivot] = true;
    out.pivot_row[v] = pivot;
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (r == pivot || !out.rows[r].vars.test(v)) continue;
      out.rows[r].vars ^= out.rows[pivot].vars;
      if (!(opt.inject_pivot_bug && first_pivot))
        out.rows[r].consts ^= out.rows[pivot].consts;
    }
    first_pivot = false;
  }
  return out;
}

std::string row_to_string(const XorRow& row, const XorSystem& sys) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < row.vars.size(); ++i)
    if (row.vars.test(i)) {
      if (any) os << " + ";
      os << sys.var_names[i];
      any = true;
    }
  for (std::size_t i = 0; i < row.consts.size(); ++i)
    if (row.consts.test(i)) {
      if (any) os << " + ";
      os << sys.const_names[i];
      any = true;
    }
  if (!any) os << "0";
  os << (row.neq ? " != 0" : " = 0");
  return os.str();
}

namespace {

struct Extraction {
  // Value of each free variable as a subset of constants; pivot variables
  // get their row tails. A variable may instead stay free (identity).
  std::vector<BitVec> value;
  std::vector<bool> assigned;
  std::vector<bool> keep_free;
};

BitVec diseq_value(const XorRow& row, const Extraction& ex) {
  BitVec v = row.consts;
  bool ground = true;
  for (std::size_t i = 0; i < row.vars.size(); ++i) {
    if (!row.vars.test(i)) continue;
    if (ex.keep_free[i]) ground = false;
    else v ^= ex.value[i];
  }
  if (!ground) {
    // A surviving free variable keeps the row nonzero as a term.
    BitVec nonzero(1);
    nonzero.flip(0);
    return nonzero;
  }
  return v;
}

}  // namespace

Decision decide_disunif_acun(const Problem& p, const GaussOptions& opt) {
  XorSystem sys = to_xor_system(p);
  XorSystem red = gaussian_eliminate(sys, opt);

  for (const XorRow& row : red.rows) {
    if (!row.neq && !row.vars.any() && row.consts.any())
      return Decision::no("constants-only equation: " + row_to_string(row, red));
    if (row.neq && !row.vars.any() && !row.consts.any())
      return Decision::no("disequation reduced to 0 != 0");
  }

  std::size_t nvars = red.var_names.size();
  std::size_t nconsts = red.const_names.size();
  Extraction ex;
  ex.value.assign(nvars, BitVec(nconsts));
  ex.assigned.assign(nvars, false);
  ex.keep_free.assign(nvars, false);

  // Free variables start at 0; one repair pass flips a constant into a free
  // variable of each violated disequation, then a bounded exhaustive pass,
  // and finally violated rows keep their free variables symbolic (a free
  // variable can never cancel against ground constants).
  std::vector<std::size_t> diseq_rows;
  for (std::size_t r = 0; r < red.rows.size(); ++r)
    if (red.rows[r].neq) diseq_rows.push_back(r);

  auto violated = [&]() {
    std::vector<std::size_t> out;
    for (std::size_t r : diseq_rows)
      if (!diseq_value(red.rows[r], ex).any()) out.push_back(r);
    return out;
  };

  for (std::size_t r : violated()) {
    const XorRow& row = red.rows[r];
    for (std::size_t v = 0; v < nvars; ++v) {
      if (!row.vars.test(v) || red.pivot_row[v] != SIZE_MAX) continue;
      if (nconsts == 0) {
        ex.keep_free[v] = true;
      } else {
        ex.value[v].flip(0);
        ex.assigned[v] = true;
      }
      break;
    }
  }
  if (!violated().empty() && nconsts > 0) {
    std::vector<std::size_t> frees;
    for (std::size_t r : diseq_rows)
      for (std::size_t v = 0; v < nvars; ++v)
        if (red.rows[r].vars.test(v) && red.pivot_row[v] == SIZE_MAX &&
            std::find(frees.begin(), frees.end(), v) == frees.end())
          frees.push_back(v);
    double space = 1;
    for (std::size_t i = 0; i < frees.size(); ++i) space *= double(1ull << nconsts);
    if (space <= double(1 << 20)) {
      std::vector<unsigned long long> choice(frees.size(), 0);
      bool done = false;
      while (!done) {
        for (std::size_t i = 0; i < frees.size(); ++i) {
          BitVec val(nconsts);
          for (std::size_t b = 0; b < nconsts; ++b)
            if (choice[i] >> b & 1) val.flip(b);
          ex.value[frees[i]] = val;
          ex.assigned[frees[i]] = true;
          ex.keep_free[frees[i]] = false;
        }
        if (violated().empty()) break;
        std::size_t i = 0;
        for (; i < frees.size(); ++i) {
          if (++choice[i] < (1ull << nconsts)) break;
          choice[i] = 0;
        }
        done = i == frees.size();
      }
    }
  }
  for (std::size_t r : violated()) {
    const XorRow& row = red.rows[r];
    for (std::size_t v = 0; v < nvars; ++v)
      if (row.vars.test(v) && red.pivot_row[v] == SIZE_MAX) {
        ex.keep_free[v] = true;
        ex.assigned[v] = false;
      }
  }

  Substitution sigma;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (red.pivot_row[v] != SIZE_MAX) continue;
    if (ex.keep_free[v]) continue;
    sigma.bind(red.var_names[v], bits_to_term(ex.value[v], red.const_names));
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    if (red.pivot_row[v] == SIZE_MAX) continue;
    const XorRow& row = red.rows[red.pivot_row[v]];
    BitVec ground = row.consts;
    std::vector<Term> parts;
    for (std::size_t w = 0; w < nvars; ++w) {
      if (w == v || !row.vars.test(w)) continue;
      if (ex.keep_free[w])
        parts.push_back(Term::variable(red.var_names[w]));
      else
        ground ^= ex.value[w];
    }
    Term tail = bits_to_term(ground, red.const_names);
    if (!tail.is_zero()) parts.push_back(std::move(tail));
    sigma.bind(red.var_names[v], canonicalize(Term::sum(std::move(parts)), p.sig));
  }

  if (!verify_solution(p, sigma))
    return Decision::no("internal: extracted substitution failed verification");
  return Decision::yes(std::move(sigma));
}

namespace {

struct GroundSearch {
  const Problem& p;
  const Signature& sig;
  std::size_t nvars, nconsts;
  std::vector<std::vector<std::size_t>> item_vars;   // odd-parity occurrence
  std::vector<std::vector<std::size_t>> item_all;    // every occurring var
  std::vector<BitVec> item_consts;
  std::vector<bool> item_asym;
  std::vector<const Term*> item_rhs;
  std::vector<unsigned long long> value;  // subset mask per var
  std::vector<bool> assigned;
  unsigned long long nodes = 0, max_nodes;
  bool exhausted_budget = false;

  explicit GroundSearch(const Problem& prob, unsigned long long budget)
      : p(prob), sig(prob.sig), max_nodes(budget) {
    nvars = sig.variables().size();
    nconsts = sig.constants().size();
    value.assign(nvars, 0);
    assigned.assign(nvars, false);
    for (const ProblemItem& item : p.items) {
      XorRow row;
      row.vars = BitVec(nvars);
      row.consts = BitVec(nconsts);
      add_term_bits(item.lhs, sig, row);
      add_term_bits(item.rhs, sig, row);
      std::vector<std::size_t> odd, all;
      for (std::size_t v = 0; v < nvars; ++v)
        if (row.vars.test(v)) odd.push_back(v);
      std::vector<std::string> names;
      item.lhs.collect_variables(names);
      item.rhs.collect_variables(names);
      for (const std::string& n : names) all.push_back(*sig.variable_index(n));
      item_vars.push_back(odd);
      item_all.push_back(all);
      item_consts.push_back(row.consts);
      item_asym.push_back(item.rel == Relation::AsymEq);
      item_rhs.push_back(&item.rhs);
    }
  }

  unsigned long long consts_mask(const BitVec& b) const {
    unsigned long long m = 0;
    for (std::size_t i = 0; i < nconsts; ++i)
      if (b.test(i)) m |= 1ull << i;
    return m;
  }

  // Instantiated right side must stay irreducible. A lone variable or
  // constant is always normal; a sum must have every summand nonzero and
  // no constant contributed twice.
  bool asym_term_ok(const Term& rhs) const {
    if (!rhs.is_sum()) return true;
    unsigned long long seen = 0;
    for (const Term& t : rhs.args()) {
      unsigned long long m = 0;
      if (t.is_constant()) {
        m = 1ull << *sig.constant_index(t.head());
      } else if (t.is_variable()) {
        m = value[*sig.variable_index(t.head())];
      }
      if (m == 0 || (seen & m)) return false;
      seen |= m;
    }
    return true;
  }

  bool item_complete(std::size_t i) const {
    for (std::size_t v : item_all[i])
      if (!assigned[v]) return false;
    return true;
  }

  bool check_item(std::size_t i) const {
    unsigned long long sum = consts_mask(item_consts[i]);
    for (std::size_t v : item_vars[i]) sum ^= value[v];
    if (sum != 0) return false;
    if (item_asym[i] && !asym_term_ok(*item_rhs[i])) return false;
    return true;
  }

  // Forces single remaining odd-parity variables; returns the list of
  // assignments made, or nullopt on contradiction.
  bool propagate(std::vector<std::size_t>& forced) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < item_vars.size(); ++i) {
        std::size_t missing = SIZE_MAX;
        int unassigned_all = 0;
        for (std::size_t v : item_all[i])
          if (!assigned[v]) ++unassigned_all;
        for (std::size_t v : item_vars[i])
          if (!assigned[v]) {
            if (missing != SIZE_MAX) { missing = SIZE_MAX - 1; break; }
            missing = v;
          }
        if (unassigned_all == 0) {
          if (!check_item(i)) return false;
          continue;
        }
        if (missing < SIZE_MAX - 1 && unassigned_all == 1) {
          unsigned long long sum = consts_mask(item_consts[i]);
          for (std::size_t v : item_vars[i])
            if (v != missing) sum ^= value[v];
          value[missing] = sum;
          assigned[missing] = true;
          forced.push_back(missing);
          changed = true;
        }
      }
    }
    return true;
  }

  bool dfs() {
    if (++nodes > max_nodes) {
      exhausted_budget = true;
      return false;
    }
    std::size_t next = SIZE_MAX;
    for (std::size_t v = 0; v < nvars; ++v)
      if (!assigned[v]) { next = v; break; }
    if (next == SIZE_MAX) return true;
    for (unsigned long long m = 0; m < (1ull << nconsts); ++m) {
      value[next] = m;
      assigned[next] = true;
      std::vector<std::size_t> forced;
      if (propagate(forced) && dfs()) return true;
      for (std::size_t v : forced) assigned[v] = false;
      assigned[next] = false;
      if (exhausted_budget) return false;
    }
    return false;
  }
};

}  // namespace

Decision ground_asym_unify_acun(const Problem& p, unsigned long long max_nodes) {
  if (p.theory != Theory::ACUN)
    throw std::invalid_argument("ground_asym_unify_acun expects an acun problem");
  if (p.sig.constants().size() > 62)
    throw std::invalid_argument("too many constants for subset-sum search");
  GroundSearch search(p, max_nodes);
  std::vector<std::size_t> forced;
  if (!search.propagate(forced)) return Decision::no("exhausted ground search");
  if (!search.dfs()) {
    Decision d = Decision::no(search.exhausted_budget ? "node budget exhausted"
                                                      : "exhausted ground search");
    d.bounded = search.exhausted_budget;
    return d;
  }
  Substitution sigma;
  for (std::size_t v = 0; v < search.nvars; ++v) {
    BitVec bits(search.nconsts);
    for (std::size_t b = 0; b < search.nconsts; ++b)
      if (search.value[v] >> b & 1) bits.flip(b);
    sigma.bind(p.sig.variables()[v], bits_to_term(bits, p.sig.constants()));
  }
  if (!verify_solution(p, sigma))
    return Decision::no("internal: ground assignment failed verification");
  return Decision::yes(std::move(sigma));
}

}  // namespace uniflab
