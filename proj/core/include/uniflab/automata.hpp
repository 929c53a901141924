#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniflab/term.hpp"

namespace uniflab {

// Standard-form single-constant shapes handled by the DFA pipeline.
struct AcunhEq {
  enum class Shape { SumEq, HEq, VarEq, ConstEq, ZeroEq, NonZero };
  Shape shape = Shape::VarEq;
  bool asym = false;
  std::string lhs;          // P or X
  std::string arg1, arg2;   // Q,R for SumEq; Y for HEq/VarEq
  std::string constant;     // ConstEq target

  bool operator==(const AcunhEq&) const = default;
  std::string str() const;
};

// Track i of a symbol is bit i; position j of the string carries the h^j
// coefficients of every variable.
using TrackOrder = std::vector<std::string>;

// Deterministic and complete: missing transitions go to the dead state.
struct EqAutomaton {
  unsigned width = 0;
  int initial = 0;
  int dead = -1;
  std::vector<char> accepting;
  std::vector<std::vector<int>> next;  // [state][symbol]

  std::size_t states() const { return accepting.size(); }
  bool accepts(const std::vector<unsigned>& word) const;
};

// The four machines generalized to full track width: don't-care on
// uninvolved tracks. SumEq is pointwise XOR; the asymmetric variant also
// requires both summands nonempty and disjoint. HEq shifts Y into X's next
// position; the asymmetric variant requires Y to be a singleton.
EqAutomaton build_automaton(const AcunhEq& eq, const TrackOrder& tracks);

struct ProductResult {
  bool empty = true;
  std::vector<unsigned> witness;  // shortest accepted word, BFS order
};

// Product construction plus breadth-first emptiness check. Trailing
// all-zero symbols are stripped when the truncated word is still accepted.
ProductResult intersect_and_check(const std::vector<EqAutomaton>& machines);

// Variable v maps to the sum of h^j(constant) over its set bits.
Substitution decode(const std::vector<unsigned>& witness,
                    const TrackOrder& tracks, const Term& constant,
                    const Signature& sig);

// Inverse of decode for ground XOR values; used by round-trip checks.
std::vector<unsigned> encode(const Substitution& sigma, const TrackOrder& tracks,
                             const Term& constant, const Signature& sig);

}  // namespace uniflab
