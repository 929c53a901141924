#include "uniflab/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace uniflab {

void Signature::add_function(const std::string& name, int arity) {
  symbols_[name] = Symbol{name, arity, SymbolKind::FreeFunction};
}

void Signature::add_ac_plus() {
  symbols_["+"] = Symbol{"+", 2, SymbolKind::AcBinary};
  symbols_["0"] = Symbol{"0", 0, SymbolKind::Unit};
  ac_plus_ = true;
}

void Signature::add_plain_plus() {
  symbols_["+"] = Symbol{"+", 2, SymbolKind::FreeFunction};
}

void Signature::add_constant(const std::string& name) {
  if (const_index_.count(name)) return;
  symbols_[name] = Symbol{name, 0, SymbolKind::Constant};
  const_index_[name] = consts_.size();
  consts_.push_back(name);
}

void Signature::declare_variable(const std::string& name) {
  if (var_index_.count(name)) return;
  var_index_[name] = vars_.size();
  vars_.push_back(name);
}

const Symbol* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

bool Signature::has_variable(const std::string& name) const {
  return var_index_.count(name) != 0;
}

std::optional<std::size_t> Signature::variable_index(
    const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Signature::constant_index(
    const std::string& name) const {
  auto it = const_index_.find(name);
  if (it == const_index_.end()) return std::nullopt;
  return it->second;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.head_ = std::move(name);
  return t;
}

Term Term::constant(std::string name) {
  Term t;
  t.kind_ = Kind::Constant;
  t.head_ = std::move(name);
  return t;
}

Term Term::app(std::string head, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::App;
  t.head_ = std::move(head);
  t.args_ = std::move(args);
  return t;
}

Term Term::sum(std::vector<Term> args) {
  if (args.empty()) return zero();
  if (args.size() == 1) return args.front();
  return app("+", std::move(args));
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args_) n += a.size();
  return n;
}

int Term::depth() const {
  int d = 0;
  for (const Term& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (kind_ == Kind::Variable) {
    if (std::find(out.begin(), out.end(), head_) == out.end())
      out.push_back(head_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

bool Term::operator<(const Term& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (head_ != other.head_) return head_ < other.head_;
  return std::lexicographical_compare(args_.begin(), args_.end(),
                                      other.args_.begin(), other.args_.end());
}

namespace {

// Name order for undeclared variables (fresh `_v` names): shorter first,
// then lexicographic, so _v2 sorts before _v10.
int name_cmp(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace

int canon_cmp(const Term& a, const Term& b, const Signature& sig) {
  auto rank = [](const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable: return 0;
      case Term::Kind::Constant: return 1;
      case Term::Kind::App: return 2;
    }
    return 2;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Variable: {
      auto ia = sig.variable_index(a.head());
      auto ib = sig.variable_index(b.head());
      std::size_t ka = ia ? *ia : SIZE_MAX;
      std::size_t kb = ib ? *ib : SIZE_MAX;
      if (ka != kb) return ka < kb ? -1 : 1;
      return name_cmp(a.head(), b.head());
    }
    case Term::Kind::Constant: {
      auto ia = sig.constant_index(a.head());
      auto ib = sig.constant_index(b.head());
      std::size_t ka = ia ? *ia : SIZE_MAX;
      std::size_t kb = ib ? *ib : SIZE_MAX;
      if (ka != kb) return ka < kb ? -1 : 1;
      return name_cmp(a.head(), b.head());
    }
    case Term::Kind::App: {
      if (a.head() != b.head()) return a.head() < b.head() ? -1 : 1;
      const auto& xs = a.args();
      const auto& ys = b.args();
      for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
        int c = canon_cmp(xs[i], ys[i], sig);
        if (c != 0) return c;
      }
      if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

std::strong_ordering term_order(const Term& a, const Term& b,
                                const Signature& sig) {
  int c = canon_cmp(a, b, sig);
  if (c < 0) return std::strong_ordering::greater;
  if (c > 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

namespace {

bool is_ac_sum(const Term& t, const Signature& sig) {
  return t.is_sum() && sig.has_ac_plus();
}

void flatten_into(const Term& t, const Signature& sig, bool drop_zero,
                  std::vector<Term>& out) {
  if (is_ac_sum(t, sig)) {
    for (const Term& a : t.args()) flatten_into(a, sig, drop_zero, out);
    return;
  }
  if (drop_zero && t.is_zero()) return;
  out.push_back(t);
}

Term rebuild(const Term& t, const Signature& sig, bool drop_zero) {
  if (!t.is_app()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rebuild(a, sig, drop_zero));
  Term node = Term::app(t.head(), std::move(args));
  if (!is_ac_sum(node, sig)) return node;
  std::vector<Term> parts;
  flatten_into(node, sig, drop_zero, parts);
  std::stable_sort(parts.begin(), parts.end(), [&](const Term& x, const Term& y) {
    return canon_cmp(x, y, sig) < 0;
  });
  return Term::sum(std::move(parts));
}

}  // namespace

Term canonicalize(const Term& t, const Signature& sig) {
  return rebuild(t, sig, /*drop_zero=*/true);
}

Term flatten_sort(const Term& t, const Signature& sig) {
  return rebuild(t, sig, /*drop_zero=*/false);
}

namespace {

void print_into(const Term& t, std::ostringstream& os) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      os << t.head();
      return;
    case Term::Kind::App:
      if (t.is_sum()) {
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) os << " + ";
          print_into(t.args()[i], os);
        }
        return;
      }
      os << t.head() << "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) os << ", ";
        print_into(t.args()[i], os);
      }
      os << ")";
      return;
  }
}

struct Lexer {
  enum class Tok { Ident, Plus, LParen, RParen, Comma, Zero, End };

  explicit Lexer(const std::string& s) : text(s) { advance(); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    if (c == '+') { tok = Tok::Plus; ++pos; return; }
    if (c == '(') { tok = Tok::LParen; ++pos; return; }
    if (c == ')') { tok = Tok::RParen; ++pos; return; }
    if (c == ',') { tok = Tok::Comma; ++pos; return; }
    if (c == '0') {
      ++pos;
      if (pos < text.size() &&
          (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        throw ParseError("malformed numeral", tok_pos);
      tok = Tok::Zero;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      tok = Tok::Ident;
      ident = text.substr(start, pos - start);
      return;
    }
    if (c == '_')
      throw ParseError("identifiers may not start with '_' (reserved)", tok_pos);
    throw ParseError(std::string("unexpected character '") + c + "'", tok_pos);
  }

  const std::string& text;
  std::size_t pos = 0;
  std::size_t tok_pos = 0;
  Tok tok = Tok::End;
  std::string ident;
};

class TermParser {
 public:
  TermParser(const std::string& text, const Signature& sig, Signature* mut)
      : lex_(text), sig_(sig), mut_(mut) {}

  Term parse() {
    Term t = parse_sum();
    if (lex_.tok != Lexer::Tok::End)
      throw ParseError("trailing input after term", lex_.tok_pos);
    return t;
  }

 private:
  Term parse_sum() {
    Term lhs = parse_atom();
    while (lex_.tok == Lexer::Tok::Plus) {
      if (!sig_.find("+"))
        throw ParseError("unknown symbol '+'", lex_.tok_pos);
      lex_.advance();
      Term rhs = parse_atom();
      lhs = Term::app("+", {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term parse_atom() {
    if (lex_.tok == Lexer::Tok::Zero) {
      if (!sig_.find("0"))
        throw ParseError("unknown symbol '0'", lex_.tok_pos);
      lex_.advance();
      return Term::zero();
    }
    if (lex_.tok != Lexer::Tok::Ident)
      throw ParseError("expected a term", lex_.tok_pos);
    std::string name = lex_.ident;
    std::size_t at = lex_.tok_pos;
    lex_.advance();
    if (lex_.tok == Lexer::Tok::LParen) {
      lex_.advance();
      std::vector<Term> args;
      args.push_back(parse_sum());
      while (lex_.tok == Lexer::Tok::Comma) {
        lex_.advance();
        args.push_back(parse_sum());
      }
      if (lex_.tok != Lexer::Tok::RParen)
        throw ParseError("expected ')'", lex_.tok_pos);
      lex_.advance();
      if (name == "xor") {
        if (!sig_.find("+")) throw ParseError("unknown symbol '+'", at);
        return Term::sum(std::move(args));
      }
      const Symbol* sym = sig_.find(name);
      if (!sym || sym->kind != SymbolKind::FreeFunction)
        throw ParseError("unknown symbol '" + name + "'", at);
      if (static_cast<std::size_t>(sym->arity) != args.size())
        throw ParseError("arity mismatch for '" + name + "': expected " +
                             std::to_string(sym->arity) + ", got " +
                             std::to_string(args.size()),
                         at);
      return Term::app(name, std::move(args));
    }
    const Symbol* sym = sig_.find(name);
    if (sym) {
      if (sym->kind == SymbolKind::Constant || sym->kind == SymbolKind::Unit)
        return Term::constant(name);
      throw ParseError("symbol '" + name + "' requires arguments", at);
    }
    if (sig_.has_variable(name)) return Term::variable(name);
    if (mut_) {
      mut_->declare_variable(name);
      return Term::variable(name);
    }
    throw ParseError("unknown symbol '" + name + "'", at);
  }

  Lexer lex_;
  const Signature& sig_;
  Signature* mut_;
};

}  // namespace

std::string print_term(const Term& t) {
  std::ostringstream os;
  print_into(t, os);
  return os.str();
}

Term parse_term(const std::string& text, const Signature& sig) {
  TermParser p(text, sig, nullptr);
  return canonicalize(p.parse(), sig);
}

Term parse_term_lenient(const std::string& text, Signature& sig) {
  TermParser p(text, sig, &sig);
  return canonicalize(p.parse(), sig);
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_variable() && value.head() == var) {
    map_.erase(var);
    return;
  }
  map_[var] = std::move(value);
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

Term replace_vars(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* v = s.lookup(t.head());
      return v ? *v : t;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(replace_vars(a, s));
      return Term::app(t.head(), std::move(args));
    }
  }
  return t;
}

}  // namespace

Term Substitution::apply(const Term& t, const Signature& sig) const {
  return flatten_sort(replace_vars(t, *this), sig);
}

Substitution compose(const Substitution& sigma, const Substitution& tau,
                     const Signature& sig) {
  Substitution out;
  for (const auto& [var, value] : sigma) out.bind(var, tau.apply(value, sig));
  for (const auto& [var, value] : tau)
    if (!sigma.contains(var)) out.bind(var, value);
  return out;
}

std::string FreshVars::next() {
  std::string name;
  do {
    name = "_v" + std::to_string(++counter_);
  } while (sig_->has_variable(name));
  sig_->declare_variable(name);
  return name;
}

}  // namespace uniflab
