#pragma once

#include <string>
#include <vector>

#include "uniflab/term.hpp"

namespace uniflab {

struct Decision {
  bool solvable = false;
  Substitution unifier;  // meaningful when solvable
  std::string detail;    // failure rule, offending row, or reason
  // True when an Unsolvable verdict only exhausted a configured bound
  // rather than the full search space.
  bool bounded = false;
  std::vector<std::string> trace;

  static Decision yes(Substitution s) {
    Decision d;
    d.solvable = true;
    d.unifier = std::move(s);
    return d;
  }
  static Decision no(std::string why) {
    Decision d;
    d.detail = std::move(why);
    return d;
  }
};

}  // namespace uniflab
