#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "testutil.hpp"
#include "uniflab/randgen.hpp"
#include "uniflab/term.hpp"

using namespace uniflab;
using namespace uniflab::test;

TEST_CASE("parse basic shapes") {
  Signature sig = r1_sig({"x1"});
  CHECK(T("f(a,c)", sig) ==
        Term::app("f", {Term::constant("a"), Term::constant("c")}));
  CHECK(T("h(x1)", sig) == Term::app("h", {Term::variable("x1")}));
  CHECK(T("h( x1 )", sig) == T("h(x1)", sig));
}

TEST_CASE("parse sums canonicalizes flat and sorted") {
  Signature sig = acun_sig({"c1"}, {"y1", "y3", "z1"});
  Term t = T("y1 + y3 + z1", sig);
  REQUIRE(t.is_sum());
  REQUIRE(t.args().size() == 3);
  CHECK(t.args()[0] == Term::variable("y1"));
  CHECK(t.args()[1] == Term::variable("y3"));
  CHECK(t.args()[2] == Term::variable("z1"));
  // permutations and xor(...) produce the same canonical term
  CHECK(T("z1 + y1 + y3", sig) == t);
  CHECK(T("xor(y3, z1, y1)", sig) == t);
  // 0 summands vanish unless everything does
  CHECK(T("y1 + 0", sig) == Term::variable("y1"));
  CHECK(T("0 + 0", sig) == Term::zero());
  // duplicates are preserved: cancellation is a rewrite step, not syntax
  Term dup = T("y1 + y1", sig);
  REQUIRE(dup.is_sum());
  CHECK(dup.args().size() == 2);
}

TEST_CASE("parse errors carry positions") {
  Signature sig = r1_sig({"x1"});
  CHECK_THROWS_AS((void)T("q(x1)", sig), ParseError);
  CHECK_THROWS_AS((void)T("f(x1)", sig), ParseError);       // arity mismatch
  CHECK_THROWS_AS((void)T("f(x1,,c)", sig), ParseError);    // syntax
  CHECK_THROWS_AS((void)T("_v1", sig), ParseError);         // reserved
  try {
    (void)T("f(a, q)", sig);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);  // 0-indexed offset of 'q'
  }
}

TEST_CASE("apply keeps duplicates visible") {
  // theta = {u -> v, w -> v} applied to u+v gives the two-element sum v+v
  Signature sig = custom_plus_sig({"u", "v", "w"});
  Substitution theta;
  theta.bind("u", Term::variable("v"));
  theta.bind("w", Term::variable("v"));
  Term result = theta.apply(T("u + v", sig), sig);
  CHECK(result == Term::app("+", {Term::variable("v"), Term::variable("v")}));

  Substitution id;
  Term any = T("u + a", sig);
  CHECK(id.apply(any, sig) == any);
}

TEST_CASE("compose matches double application") {
  Signature sig = r1_sig({"x", "y"});
  Substitution sigma, tau;
  sigma.bind("x", Term::variable("y"));
  tau.bind("y", Term::constant("a"));
  Substitution both = compose(sigma, tau, sig);
  CHECK(*both.lookup("x") == Term::constant("a"));
  CHECK(*both.lookup("y") == Term::constant("a"));

  Substitution id;
  CHECK(compose(id, tau, sig) == tau);

  Substitution s2, t2;
  s2.bind("x", Term::constant("a"));
  t2.bind("y", Term::constant("b"));
  Term applied = compose(s2, t2, sig).apply(T("f(x, y)", sig), sig);
  CHECK(applied == T("f(a, b)", sig));
}

TEST_CASE("compose randomized against the double-application oracle") {
  Signature sig = acunh_sig({"c1", "c2"}, {"x1", "x2", "x3"});
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    Substitution sigma, tau;
    for (const std::string& v : sig.variables()) {
      if (rng.chance(0.6)) sigma.bind(v, random_term(rng, sig, 2));
      if (rng.chance(0.6)) tau.bind(v, random_term(rng, sig, 2));
    }
    Term t = random_term(rng, sig, 3);
    Term via_compose = compose(sigma, tau, sig).apply(t, sig);
    Term via_two = tau.apply(sigma.apply(t, sig), sig);
    CHECK(via_compose == via_two);
  }
}

TEST_CASE("term order follows the declared sequence") {
  Signature sig = acun_sig({"c1", "c2", "c3"}, {"x1", "x2"});
  CHECK(term_order(Term::variable("x1"), Term::variable("x2"), sig) ==
        std::strong_ordering::greater);
  Term t = T("x1 + c2", sig);
  CHECK(term_order(t, t, sig) == std::strong_ordering::equal);

  std::vector<Term> items = {Term::constant("c3"), Term::variable("x2"),
                             Term::constant("c1")};
  std::sort(items.begin(), items.end(), [&](const Term& a, const Term& b) {
    return canon_cmp(a, b, sig) < 0;
  });
  CHECK(items[0] == Term::variable("x2"));
  CHECK(items[1] == Term::constant("c1"));
  CHECK(items[2] == Term::constant("c3"));
}

TEST_CASE("order is total and transitive on random terms") {
  Signature sig = acunh_sig({"c1", "c2"}, {"x1", "x2"});
  Rng rng(7);
  std::vector<Term> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(random_term(rng, sig, 2));
  for (const Term& a : pool)
    for (const Term& b : pool) {
      int ab = canon_cmp(a, b, sig);
      int ba = canon_cmp(b, a, sig);
      CHECK(ab == -ba);
      if (ab == 0) CHECK(a == b);
      for (const Term& c : pool) {
        if (ab < 0 && canon_cmp(b, c, sig) < 0) CHECK(canon_cmp(a, c, sig) < 0);
      }
    }
}

TEST_CASE("canonicalization is idempotent and AC-invariant") {
  Signature sig = acunh_sig({"c1", "c2"}, {"x1", "x2", "x3"});
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Term t = random_term(rng, sig, 4);
    CHECK(canonicalize(t, sig) == t);  // random_term already canonicalizes
    CHECK(canonicalize(canonicalize(t, sig), sig) == canonicalize(t, sig));
  }
  // any re-association/permutation of a sum canonicalizes identically
  for (int i = 0; i < 200; ++i) {
    std::vector<Term> parts;
    int n = rng.range(2, 5);
    for (int k = 0; k < n; ++k) parts.push_back(random_term(rng, sig, 1));
    Term left = parts[0];
    for (int k = 1; k < n; ++k) left = Term::app("+", {left, parts[k]});
    std::vector<Term> shuffled = parts;
    for (std::size_t k = shuffled.size(); k > 1; --k)
      std::swap(shuffled[k - 1], shuffled[rng.below(k)]);
    Term right = shuffled[shuffled.size() - 1];
    for (std::size_t k = shuffled.size() - 1; k > 0; --k)
      right = Term::app("+", {shuffled[k - 1], right});
    CHECK(canonicalize(left, sig) == canonicalize(right, sig));
  }
}

TEST_CASE("print/parse round trip") {
  Signature sig = acunh_sig({"c1", "c2"}, {"x1", "x2", "x3"});
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    Term t = random_term(rng, sig, 4);
    CHECK(parse_term(print_term(t), sig) == t);
  }
  Signature r4 = r4_sig({"x"});
  Rng rng2(17);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng2, r4, 3);
    CHECK(parse_term(print_term(t), r4) == t);
  }
}

TEST_CASE("fresh variables avoid user names") {
  Signature sig = acun_sig({}, {"x"});
  FreshVars fresh(sig);
  std::string a = fresh.next();
  std::string b = fresh.next();
  CHECK(a != b);
  CHECK(a.rfind("_v", 0) == 0);
  CHECK(sig.has_variable(a));
}

TEST_CASE("problem file round trip") {
  std::string text =
      "theory acun\n"
      "consts c1 c2 c3\n"
      "vars y1 y2 z1\n"
      "eq y1 + y2 = c1 + c2   # comment\n"
      "asym c1 + c2 + c3 =v y1 + y2 + z1\n"
      "diseq y1 != 0\n";
  Problem p = parse_problem(text);
  CHECK(p.theory == Theory::ACUN);
  REQUIRE(p.items.size() == 3);
  CHECK(p.items[0].rel == Relation::Eq);
  CHECK(p.items[1].rel == Relation::AsymEq);
  CHECK(p.items[2].rel == Relation::Diseq);
  Problem again = parse_problem(write_problem(p));
  CHECK(again.items.size() == p.items.size());
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    CHECK(again.items[i].lhs == p.items[i].lhs);
    CHECK(again.items[i].rhs == p.items[i].rhs);
    CHECK(again.items[i].rel == p.items[i].rel);
  }
}

TEST_CASE("problem files reject undeclared and reserved names") {
  CHECK_THROWS(parse_problem("theory acun\nvars x\neq x = q\n"));
  CHECK_THROWS(parse_problem("theory r1\nconsts q\n"));
  CHECK_THROWS(parse_problem("theory acun\nvars _v1\n"));
  CHECK_THROWS(parse_problem("eq x = y\n"));  // missing theory line
}
