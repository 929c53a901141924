#pragma once

#include <string>
#include <vector>

#include "uniflab/term.hpp"

namespace uniflab {

enum class Theory { R1, R4, R5, ACUN, ACUNH, Custom };

enum class Relation { Eq, AsymEq, Diseq };

struct RewriteRule {
  Term lhs;
  Term rhs;
};

struct ProblemItem {
  Term lhs;
  Term rhs;
  Relation rel = Relation::Eq;
};

struct Problem {
  Theory theory = Theory::Custom;
  Signature sig;
  std::vector<ProblemItem> items;
  // Rewrite rules for Theory::Custom; ignored for the built-in theories.
  std::vector<RewriteRule> custom_rules;
};

std::string theory_name(Theory t);

// Function symbols and built-in constants of each theory. ACUN/ACUNh start
// with no free constants; those come from the problem's `consts` line.
Signature base_signature(Theory t);

// Problem file format (UTF-8, line based, `#` comments):
//   theory (r1|r4|r5|acun|acunh)
//   consts <name>...
//   vars <name>...
//   eq    <term> = <term>
//   asym  <term> =v <term>
//   diseq <term> != <term>
Problem parse_problem(const std::string& text);
Problem parse_problem_file(const std::string& path);
std::string write_problem(const Problem& p);

}  // namespace uniflab
