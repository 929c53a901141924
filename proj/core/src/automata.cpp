#include "uniflab/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace uniflab {

std::string AcunhEq::str() const {
  std::ostringstream os;
  const char* rel = asym ? " =v " : " = ";
  switch (shape) {
    case Shape::SumEq: os << lhs << rel << arg1 << " + " << arg2; break;
    case Shape::HEq: os << lhs << rel << "h(" << arg1 << ")"; break;
    case Shape::VarEq: os << lhs << rel << arg1; break;
    case Shape::ConstEq: os << lhs << rel << constant; break;
    case Shape::ZeroEq: os << lhs << rel << "0"; break;
    case Shape::NonZero: os << lhs << " != 0"; break;
  }
  return os.str();
}

bool EqAutomaton::accepts(const std::vector<unsigned>& word) const {
  int s = initial;
  for (unsigned sym : word) {
    s = next[s][sym];
    if (s == dead) return false;
  }
  return accepting[s];
}

namespace {

std::size_t track_of(const TrackOrder& tracks, const std::string& var) {
  for (std::size_t i = 0; i < tracks.size(); ++i)
    if (tracks[i] == var) return i;
  throw std::invalid_argument("variable '" + var + "' missing from track order");
}

// Builds the full transition table from a small per-shape step function on
// the involved bits; every undefined move lands in the dead state.
template <typename Step>
EqAutomaton make_machine(unsigned width, int nstates, int initial,
                         std::vector<char> accepting, Step step) {
  if (width > 20) throw std::invalid_argument("too many tracks for the DFA alphabet");
  EqAutomaton m;
  m.width = width;
  m.initial = initial;
  m.dead = nstates;  // appended dead state
  m.accepting = std::move(accepting);
  m.accepting.push_back(0);
  std::size_t nsym = std::size_t(1) << width;
  m.next.assign(nstates + 1, std::vector<int>(nsym, m.dead));
  for (int s = 0; s < nstates; ++s)
    for (std::size_t sym = 0; sym < nsym; ++sym) {
      int t = step(s, static_cast<unsigned>(sym));
      m.next[s][sym] = t < 0 ? m.dead : t;
    }
  for (std::size_t sym = 0; sym < nsym; ++sym) m.next[nstates][sym] = m.dead;
  return m;
}

}  // namespace

EqAutomaton build_automaton(const AcunhEq& eq, const TrackOrder& tracks) {
  unsigned width = static_cast<unsigned>(tracks.size());
  auto bit = [&](unsigned sym, std::size_t track) -> unsigned {
    return sym >> track & 1u;
  };
  switch (eq.shape) {
    case AcunhEq::Shape::SumEq: {
      std::size_t p = track_of(tracks, eq.lhs);
      std::size_t q = track_of(tracks, eq.arg1);
      std::size_t r = track_of(tracks, eq.arg2);
      if (!eq.asym) {
        return make_machine(width, 1, 0, {1}, [&](int, unsigned sym) -> int {
          return bit(sym, p) == (bit(sym, q) ^ bit(sym, r)) ? 0 : -1;
        });
      }
      // Sets seenQ (bit 0) and seenR (bit 1); overlap kills the word.
      return make_machine(width, 4, 0, {0, 0, 0, 1}, [&](int s, unsigned sym) -> int {
        unsigned pb = bit(sym, p), qb = bit(sym, q), rb = bit(sym, r);
        if (pb != (qb ^ rb)) return -1;
        if (qb && rb) return -1;
        if (qb) s |= 1;
        if (rb) s |= 2;
        return s;
      });
    }
    case AcunhEq::Shape::HEq: {
      std::size_t y = track_of(tracks, eq.arg1);
      std::size_t x = track_of(tracks, eq.lhs);
      if (!eq.asym) {
        // State carries the pending bit of X.
        return make_machine(width, 2, 0, {1, 0}, [&](int s, unsigned sym) -> int {
          if (bit(sym, x) != static_cast<unsigned>(s)) return -1;
          return static_cast<int>(bit(sym, y));
        });
      }
      // Y must be the singleton 0^i 1 0^j and X its shift.
      return make_machine(width, 3, 0, {0, 0, 1}, [&](int s, unsigned sym) -> int {
        unsigned yb = bit(sym, y), xb = bit(sym, x);
        switch (s) {
          case 0:
            if (xb) return -1;
            return yb ? 1 : 0;
          case 1:
            if (!xb || yb) return -1;
            return 2;
          case 2:
            return (xb || yb) ? -1 : 2;
        }
        return -1;
      });
    }
    case AcunhEq::Shape::VarEq: {
      std::size_t x = track_of(tracks, eq.lhs);
      std::size_t y = track_of(tracks, eq.arg1);
      return make_machine(width, 1, 0, {1}, [&](int, unsigned sym) -> int {
        return bit(sym, x) == bit(sym, y) ? 0 : -1;
      });
    }
    case AcunhEq::Shape::ConstEq: {
      std::size_t x = track_of(tracks, eq.lhs);
      return make_machine(width, 2, 0, {0, 1}, [&](int s, unsigned sym) -> int {
        if (s == 0) return bit(sym, x) ? 1 : -1;
        return bit(sym, x) ? -1 : 1;
      });
    }
    case AcunhEq::Shape::ZeroEq: {
      std::size_t x = track_of(tracks, eq.lhs);
      return make_machine(width, 1, 0, {1}, [&](int, unsigned sym) -> int {
        return bit(sym, x) ? -1 : 0;
      });
    }
    case AcunhEq::Shape::NonZero: {
      std::size_t x = track_of(tracks, eq.lhs);
      return make_machine(width, 2, 0, {0, 1}, [&](int s, unsigned sym) -> int {
        return (s == 1 || bit(sym, x)) ? 1 : 0;
      });
    }
  }
  throw std::invalid_argument("unsupported equation shape");
}

ProductResult intersect_and_check(const std::vector<EqAutomaton>& machines) {
  ProductResult res;
  if (machines.empty()) {
    res.empty = false;
    return res;
  }
  unsigned width = machines.front().width;
  for (const EqAutomaton& m : machines)
    if (m.width != width)
      throw std::invalid_argument("track width mismatch in product");
  std::size_t nsym = std::size_t(1) << width;

  std::map<std::vector<int>, std::size_t> ids;
  std::vector<std::vector<int>> states;
  // parent state id and symbol, for witness reconstruction
  std::vector<std::pair<std::size_t, unsigned>> parent;

  auto accepting = [&](const std::vector<int>& tuple) {
    for (std::size_t i = 0; i < machines.size(); ++i)
      if (!machines[i].accepting[tuple[i]]) return false;
    return true;
  };

  std::vector<int> init;
  for (const EqAutomaton& m : machines) init.push_back(m.initial);
  ids[init] = 0;
  states.push_back(init);
  parent.push_back({SIZE_MAX, 0});

  std::queue<std::size_t> queue;
  queue.push(0);
  std::size_t found = SIZE_MAX;
  if (accepting(init)) found = 0;
  while (!queue.empty() && found == SIZE_MAX) {
    std::size_t cur = queue.front();
    queue.pop();
    std::vector<int> tuple = states[cur];
    for (unsigned sym = 0; sym < nsym && found == SIZE_MAX; ++sym) {
      std::vector<int> nxt(tuple.size());
      bool dead = false;
      for (std::size_t i = 0; i < machines.size(); ++i) {
        nxt[i] = machines[i].next[tuple[i]][sym];
        if (nxt[i] == machines[i].dead) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      auto [it, fresh] = ids.emplace(nxt, states.size());
      if (!fresh) continue;
      states.push_back(nxt);
      parent.push_back({cur, sym});
      if (accepting(nxt)) found = it->second;
      queue.push(it->second);
    }
  }
  if (found == SIZE_MAX) return res;

  res.empty = false;
  std::vector<unsigned> rev;
  for (std::size_t at = found; parent[at].first != SIZE_MAX; at = parent[at].first)
    rev.push_back(parent[at].second);
  res.witness.assign(rev.rbegin(), rev.rend());
  while (!res.witness.empty() && res.witness.back() == 0) {
    std::vector<unsigned> shorter(res.witness.begin(), res.witness.end() - 1);
    bool ok = true;
    for (const EqAutomaton& m : machines)
      if (!m.accepts(shorter)) {
        ok = false;
        break;
      }
    if (!ok) break;
    res.witness = std::move(shorter);
  }
  return res;
}

Substitution decode(const std::vector<unsigned>& witness,
                    const TrackOrder& tracks, const Term& constant,
                    const Signature& sig) {
  Substitution sigma;
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    std::vector<Term> parts;
    for (std::size_t j = 0; j < witness.size(); ++j) {
      if (!(witness[j] >> t & 1u)) continue;
      Term item = constant;
      for (std::size_t k = 0; k < j; ++k) item = Term::app("h", {std::move(item)});
      parts.push_back(std::move(item));
    }
    sigma.bind(tracks[t], canonicalize(Term::sum(std::move(parts)), sig));
  }
  return sigma;
}

std::vector<unsigned> encode(const Substitution& sigma, const TrackOrder& tracks,
                             const Term& constant, const Signature& sig) {
  std::vector<unsigned> word;
  auto set_bit = [&](std::size_t pos, std::size_t track) {
    if (word.size() <= pos) word.resize(pos + 1, 0);
    word[pos] |= 1u << track;
  };
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    const Term* value = sigma.lookup(tracks[t]);
    if (!value) continue;
    auto add_atom = [&](const Term& atom) {
      std::size_t degree = 0;
      const Term* cur = &atom;
      while (cur->is_app() && cur->head() == "h") {
        ++degree;
        cur = &cur->args()[0];
      }
      if (!(*cur == constant))
        throw std::invalid_argument("value is not over the expected constant");
      set_bit(degree, t);
    };
    if (value->is_zero()) continue;
    if (value->is_sum())
      for (const Term& a : value->args()) add_atom(a);
    else
      add_atom(*value);
  }
  return word;
}

}  // namespace uniflab
