#include "uniflab/problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace uniflab {

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::R1: return "r1";
    case Theory::R4: return "r4";
    case Theory::R5: return "r5";
    case Theory::ACUN: return "acun";
    case Theory::ACUNH: return "acunh";
    case Theory::Custom: return "custom";
  }
  return "custom";
}

Signature base_signature(Theory t) {
  Signature sig;
  switch (t) {
    case Theory::R1:
      sig.add_function("h", 1);
      sig.add_function("f", 2);
      sig.add_constant("a");
      sig.add_constant("b");
      sig.add_constant("c");
      break;
    case Theory::R4:
    case Theory::R5:
      sig.add_function("f", 3);
      sig.add_function("g", 1);
      sig.add_constant("a");
      sig.add_constant("b");
      break;
    case Theory::ACUN:
      sig.add_ac_plus();
      break;
    case Theory::ACUNH:
      sig.add_ac_plus();
      sig.add_function("h", 1);
      break;
    case Theory::Custom:
      break;
  }
  return sig;
}

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

struct FileError : ParseError {
  FileError(const std::string& msg, std::size_t line)
      : ParseError("line " + std::to_string(line) + ": " + msg, line) {}
};

bool builtin_constant_allowed(Theory t, const std::string& name) {
  switch (t) {
    case Theory::R1: return name == "a" || name == "b" || name == "c";
    case Theory::R4:
    case Theory::R5: return name == "a" || name == "b";
    default: return true;
  }
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Problem p;
  bool have_theory = false;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> words = split_words(line);
    if (words.empty()) continue;
    const std::string& kw = words.front();
    if (kw == "theory") {
      if (words.size() != 2) throw FileError("theory expects one name", lineno);
      const std::string& name = words[1];
      if (name == "r1") p.theory = Theory::R1;
      else if (name == "r4") p.theory = Theory::R4;
      else if (name == "r5") p.theory = Theory::R5;
      else if (name == "acun") p.theory = Theory::ACUN;
      else if (name == "acunh") p.theory = Theory::ACUNH;
      else throw FileError("unknown theory '" + name + "'", lineno);
      p.sig = base_signature(p.theory);
      have_theory = true;
      continue;
    }
    if (!have_theory) throw FileError("expected a theory line first", lineno);
    if (kw == "consts") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i][0] == '_')
          throw FileError("reserved name '" + words[i] + "'", lineno);
        if (!builtin_constant_allowed(p.theory, words[i]))
          throw FileError("constant '" + words[i] + "' not allowed for theory " +
                              theory_name(p.theory),
                          lineno);
        p.sig.add_constant(words[i]);
      }
      continue;
    }
    if (kw == "vars") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i][0] == '_')
          throw FileError("reserved name '" + words[i] + "'", lineno);
        if (p.sig.find(words[i]))
          throw FileError("'" + words[i] + "' is already a symbol", lineno);
        p.sig.declare_variable(words[i]);
      }
      continue;
    }
    Relation rel;
    std::string sep;
    if (kw == "eq") { rel = Relation::Eq; sep = "="; }
    else if (kw == "asym") { rel = Relation::AsymEq; sep = "=v"; }
    else if (kw == "diseq") { rel = Relation::Diseq; sep = "!="; }
    else throw FileError("unknown keyword '" + kw + "'", lineno);

    std::string rest = line.substr(line.find(kw) + kw.size());
    std::size_t at = rest.find(sep);
    if (at == std::string::npos)
      throw FileError("expected '" + sep + "'", lineno);
    std::string lhs = rest.substr(0, at);
    std::string rhs = rest.substr(at + sep.size());
    try {
      ProblemItem item;
      item.lhs = parse_term(lhs, p.sig);
      item.rhs = parse_term(rhs, p.sig);
      item.rel = rel;
      p.items.push_back(std::move(item));
    } catch (const ParseError& e) {
      throw FileError(e.what(), lineno);
    }
  }
  if (!have_theory) throw ParseError("empty problem: missing theory line", 0);
  return p;
}

Problem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string write_problem(const Problem& p) {
  std::ostringstream os;
  os << "theory " << theory_name(p.theory) << "\n";
  if (!p.sig.constants().empty()) {
    os << "consts";
    for (const auto& c : p.sig.constants()) os << " " << c;
    os << "\n";
  }
  if (!p.sig.variables().empty()) {
    os << "vars";
    for (const auto& v : p.sig.variables()) os << " " << v;
    os << "\n";
  }
  for (const ProblemItem& it : p.items) {
    switch (it.rel) {
      case Relation::Eq:
        os << "eq " << print_term(it.lhs) << " = " << print_term(it.rhs);
        break;
      case Relation::AsymEq:
        os << "asym " << print_term(it.lhs) << " =v " << print_term(it.rhs);
        break;
      case Relation::Diseq:
        os << "diseq " << print_term(it.lhs) << " != " << print_term(it.rhs);
        break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace uniflab
