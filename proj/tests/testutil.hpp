#pragma once

#include <string>
#include <vector>

#include "uniflab/problem.hpp"
#include "uniflab/randgen.hpp"
#include "uniflab/term.hpp"

namespace uniflab::test {

inline Signature acun_sig(std::vector<std::string> consts,
                          std::vector<std::string> vars) {
  Signature sig = base_signature(Theory::ACUN);
  for (auto& c : consts) sig.add_constant(c);
  for (auto& v : vars) sig.declare_variable(v);
  return sig;
}

inline Signature acunh_sig(std::vector<std::string> consts,
                           std::vector<std::string> vars) {
  Signature sig = base_signature(Theory::ACUNH);
  for (auto& c : consts) sig.add_constant(c);
  for (auto& v : vars) sig.declare_variable(v);
  return sig;
}

inline Signature r1_sig(std::vector<std::string> vars) {
  Signature sig = base_signature(Theory::R1);
  for (auto& v : vars) sig.declare_variable(v);
  return sig;
}

inline Signature r4_sig(std::vector<std::string> vars) {
  Signature sig = base_signature(Theory::R4);
  for (auto& v : vars) sig.declare_variable(v);
  return sig;
}

// The ad-hoc systems used by the worked verification examples: + as a free
// binary symbol over constants a, b.
inline Signature custom_plus_sig(std::vector<std::string> vars) {
  Signature sig;
  sig.add_plain_plus();
  sig.add_constant("a");
  sig.add_constant("b");
  for (auto& v : vars) sig.declare_variable(v);
  return sig;
}

inline Term T(const std::string& text, const Signature& sig) {
  return parse_term(text, sig);
}

}  // namespace uniflab::test
