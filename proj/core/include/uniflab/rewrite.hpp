#pragma once

#include <map>
#include <string>
#include <vector>

#include "uniflab/problem.hpp"
#include "uniflab/term.hpp"

namespace uniflab {

// A rewrite theory as executed by the engine. The built-in XOR theories are
// normalized by canonical-form computation (multiset cancellation plus
// h-distribution) instead of AC-matching rewrite search; the three rules
// modulo AC amount to exactly that on flattened sums.
struct TheorySpec {
  Theory tag = Theory::Custom;
  std::vector<RewriteRule> rules;  // pattern rules (R1/R4/R5/custom)
  bool xor_canonical = false;      // ACUN/ACUNh
  bool distribute_h = false;       // ACUNh only
};

TheorySpec builtin_theory(Theory t);
TheorySpec custom_theory(std::vector<RewriteRule> rules);
TheorySpec theory_spec(const Problem& p);

// First-order syntactic matching of `pat` against `t`.
bool match_pattern(const Term& pat, const Term& t,
                   std::map<std::string, Term>& binds);

// Unique normal form. Input is expected flattened/sorted where `+` is AC.
Term normalize(const Term& t, const TheorySpec& th, const Signature& sig);

bool is_normal_form(const Term& t, const TheorySpec& th, const Signature& sig);

bool joinable(const Term& s, const Term& t, const TheorySpec& th,
              const Signature& sig);

bool verify_item(const ProblemItem& item, const Substitution& sigma,
                 const TheorySpec& th, const Signature& sig);

// Ground-truth check: eq items must be joinable, asym items additionally
// need the instantiated right side in normal form, diseq items must have
// distinct normal forms.
bool verify_solution(const Problem& p, const Substitution& sigma);

}  // namespace uniflab
