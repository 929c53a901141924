#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uniflab {

enum class SymbolKind { FreeFunction, AcBinary, Constant, Unit };

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Constant;
};

// Declared symbols plus the variable/constant orders. The orders drive the
// term ordering, canonical sums and Gaussian pivot selection, so they are
// part of the signature rather than free-floating state.
class Signature {
 public:
  Signature() = default;

  void add_function(const std::string& name, int arity);
  void add_ac_plus();  // `+` as the AC symbol together with the unit `0`
  void add_plain_plus();  // `+` as an ordinary free binary symbol
  void add_constant(const std::string& name);
  void declare_variable(const std::string& name);

  const Symbol* find(const std::string& name) const;
  bool has_variable(const std::string& name) const;
  bool has_ac_plus() const { return ac_plus_; }

  std::optional<std::size_t> variable_index(const std::string& name) const;
  std::optional<std::size_t> constant_index(const std::string& name) const;
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<std::string>& constants() const { return consts_; }

 private:
  std::map<std::string, Symbol> symbols_;
  std::vector<std::string> vars_;
  std::vector<std::string> consts_;
  std::map<std::string, std::size_t> var_index_;
  std::map<std::string, std::size_t> const_index_;
  bool ac_plus_ = false;
};

class Term {
 public:
  enum class Kind { Variable, Constant, App };

  Term() = default;  // the term `0`

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term app(std::string head, std::vector<Term> args);
  static Term zero() { return Term(); }
  static Term sum(std::vector<Term> args);  // raw n-ary `+`, not canonicalized

  Kind kind() const { return kind_; }
  const std::string& head() const { return head_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_app() const { return kind_ == Kind::App; }
  bool is_zero() const { return kind_ == Kind::Constant && head_ == "0"; }
  bool is_sum() const { return kind_ == Kind::App && head_ == "+"; }

  std::size_t size() const;  // node count
  int depth() const;
  void collect_variables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;

  bool operator==(const Term& other) const = default;
  // Structural order, signature-independent; suitable for std::map keys.
  bool operator<(const Term& other) const;

 private:
  Kind kind_ = Kind::Constant;
  std::string head_ = "0";
  std::vector<Term> args_;
};

// -1 when `a` sorts before `b` in canonical sums (i.e. `a` is the greater
// element of the declared sequence x1 > x2 > ... > c1 > c2 > ...).
int canon_cmp(const Term& a, const Term& b, const Signature& sig);

// Spec-facing wrapper: greater means "earlier in the declared sequence".
std::strong_ordering term_order(const Term& a, const Term& b,
                                const Signature& sig);

// Full canonical form: flatten `+`, sort arguments, drop `0` summands
// (collapsing an empty sum to `0`). Only applies where `+` is AC.
Term canonicalize(const Term& t, const Signature& sig);

// Flatten and sort only. Keeps duplicate summands and explicit `0`s so that
// reducible instantiations stay visible to the normal-form checks.
Term flatten_sort(const Term& t, const Signature& sig);

std::string print_term(const Term& t);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position;
};

// Strict parse: every identifier must be declared in `sig`.
Term parse_term(const std::string& text, const Signature& sig);
// Lenient parse: undeclared non-function identifiers become variables.
Term parse_term_lenient(const std::string& text, Signature& sig);

class Substitution {
 public:
  Substitution() = default;

  void bind(const std::string& var, Term value);
  void unbind(const std::string& var) { map_.erase(var); }
  const Term* lookup(const std::string& var) const;
  bool contains(const std::string& var) const { return map_.count(var) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  // Simultaneous replacement, then flatten/sort. No theory rewriting.
  Term apply(const Term& t, const Signature& sig) const;

  bool operator==(const Substitution&) const = default;

 private:
  std::map<std::string, Term> map_;
};

// apply(compose(sigma, tau), t) == apply(tau, apply(sigma, t)) for all t.
Substitution compose(const Substitution& sigma, const Substitution& tau,
                     const Signature& sig);

// Generator for solver-internal variables; user input may not use the
// reserved `_` prefix, so these never collide.
class FreshVars {
 public:
  explicit FreshVars(Signature& sig) : sig_(&sig) {}
  std::string next();

 private:
  Signature* sig_;
  unsigned counter_ = 0;
};

}  // namespace uniflab
