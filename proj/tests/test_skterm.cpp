#include "doctest.h"

#include <set>

#include "test_util.hpp"
#include "wcont/skterm.hpp"

using namespace wcont;
using wcont::test::Rng;

TEST_SUITE_BEGIN("skterm");

namespace {

Term S() { return Term::s(); }
Term K() { return Term::k(); }
Term A(const Term& f, const Term& x) { return Term::app(f, x); }

}  // namespace

TEST_CASE("printing and parsing round-trip") {
  Term skk = A(A(S(), K()), K());
  CHECK(skk.str() == "S K K");
  CHECK(A(S(), A(K(), K())).str() == "S (K K)");
  CHECK(parse_term("S K K") == skk);
  CHECK(parse_term("S (K K)") == A(S(), A(K(), K())));
  CHECK(parse_term("\\x. x") == code_ident());
  CHECK(parse_term("\\x. \\y. x") == code_true());
  CHECK(parse_term("\\x. \\y. y") == code_false());
  CHECK_THROWS_AS(parse_term("S (K"), ParseError);
  CHECK_THROWS_AS(parse_closed_term("S x"), UnboundVariable);

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Term t = test::random_term(rng, 1 + rng() % 12);
    CHECK(parse_term(t.str()) == t);
  }
}

TEST_CASE("reduce: K and S rules") {
  Term x = Term::var("x"), y = Term::var("y");
  EvalOutcome kxy = reduce(A(A(K(), x), y), EvalBudget{100});
  CHECK(kxy.normalized);
  CHECK(kxy.term == x);
  CHECK(kxy.steps == 1);

  EvalOutcome skkx = reduce(A(code_ident(), x), EvalBudget{100});
  CHECK(skkx.normalized);
  CHECK(skkx.term == x);
  CHECK(skkx.steps == 2);
}

TEST_CASE("reduce: self-application loops until the budget runs out") {
  Term ident = code_ident();
  Term omega_half = A(A(S(), ident), ident);        // S (S K K) (S K K)
  Term omega = A(omega_half, omega_half);
  EvalOutcome out = reduce(omega, EvalBudget{100000});
  CHECK_FALSE(out.normalized);
  CHECK(out.steps == 100000);
}

TEST_CASE("apply: currying through the budgeted application") {
  Term x = Term::var("x"), y = Term::var("y");
  EvalOutcome kx = apply(K(), x, EvalBudget{100});
  CHECK(kx.normalized);
  EvalOutcome back = apply(kx.term, y, EvalBudget{100});
  CHECK(back.term == x);

  EvalOutcome idt = apply(code_ident(), A(A(K(), x), y), EvalBudget{100});
  CHECK(idt.normalized);
  CHECK(idt.term == x);
}

TEST_CASE("bracket abstraction: standard rules") {
  CHECK(bracket_abstract("x", Term::var("x")) == parse_term("S K K"));
  CHECK(bracket_abstract("x", K()) == A(K(), K()));
  Term compiled = parse_term("\\x. \\y. x");
  EvalOutcome first = apply(compiled, Term::var("a"), EvalBudget{100});
  EvalOutcome second = apply(first.term, Term::var("b"), EvalBudget{100});
  CHECK(second.term == Term::var("a"));
}

TEST_CASE("bracket abstraction: beta simulation on a corpus") {
  // apply(bracket(\x.t), u) and the bracket-compile of t[u/x] reach the
  // same normal form.
  std::vector<std::string> bodies = {
      "x",           "x x",         "K x",          "x K",
      "S x x",       "x (x K)",     "K (K x)",      "S (K x) x",
      "x x x",       "S x (K x)",
  };
  std::vector<Term> args = {S(), K(), code_ident(), A(K(), K()),
                            code_false()};
  std::function<Term(const Term&, const Term&)> subst =
      [&](const Term& t, const Term& u) -> Term {
    if (t.tag() == Term::Tag::Var && t.var_name() == "x") return u;
    if (t.tag() == Term::Tag::App)
      return A(subst(t.left(), u), subst(t.right(), u));
    return t;
  };
  int checked = 0;
  for (const auto& body_text : bodies) {
    Term body = parse_term(body_text);
    Term code = bracket_abstract("x", body);
    for (const Term& u : args) {
      EvalOutcome lhs = apply(code, u, EvalBudget{10000});
      EvalOutcome rhs = reduce(subst(body, u), EvalBudget{10000});
      REQUIRE(lhs.normalized);
      REQUIRE(rhs.normalized);
      CHECK(lhs.term == rhs.term);
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("standard codes: booleans and pairing") {
  Term a = Term::var("a"), b = Term::var("b"), c = Term::var("c");
  CHECK(code_underline(0) != code_underline(1));
  CHECK(is_weak_normal(code_underline(0)));
  CHECK(is_weak_normal(code_underline(1)));

  Term p = make_pair(a, b, EvalBudget{100});
  CHECK(apply(code_fst(), p, EvalBudget{100}).term == a);
  CHECK(apply(code_snd(), p, EvalBudget{100}).term == b);

  // Nested pairing under a generous budget.
  Term nested = make_pair(make_pair(a, b, EvalBudget{1000}), c, EvalBudget{1000});
  EvalOutcome outer = apply(code_fst(), nested, EvalBudget{1000});
  EvalOutcome inner = apply(code_snd(), outer.term, EvalBudget{1000});
  CHECK(inner.term == b);
}

TEST_CASE("pairing laws on random normal pairs") {
  Rng rng(29);
  int done = 0;
  while (done < 100) {
    Term a = test::random_term(rng, 1 + rng() % 6);
    Term b = test::random_term(rng, 1 + rng() % 6);
    if (!is_weak_normal(a) || !is_weak_normal(b)) continue;
    Term p = make_pair(a, b, EvalBudget{10000});
    CHECK(apply(code_fst(), p, EvalBudget{10000}).term == a);
    CHECK(apply(code_snd(), p, EvalBudget{10000}).term == b);
    ++done;
  }
}

TEST_CASE("determinism and budget monotonicity") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    Term t = test::random_term(rng, 1 + rng() % 12);
    EvalOutcome a = reduce(t, EvalBudget{500});
    EvalOutcome b = reduce(t, EvalBudget{500});
    CHECK(a.normalized == b.normalized);
    CHECK(a.steps == b.steps);
    CHECK(a.term == b.term);
    if (a.normalized) {
      EvalOutcome c = reduce(t, EvalBudget{5000});
      CHECK(c.normalized);
      CHECK(c.term == a.term);
      CHECK(c.steps == a.steps);
    }
  }
}

TEST_CASE("enumeration: canonical order, sizes, distinctness") {
  const auto& terms = enumerate_terms(3);
  CHECK(terms.size() == 2 + 4 + 16);
  CHECK(terms[0] == S());
  CHECK(terms[1] == K());
  CHECK(terms[2] == A(S(), S()));
  TermLess less;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(terms[i].is_closed());
    CHECK(terms[i].size() <= 3);
    CHECK(seen.insert(terms[i].str()).second);
    if (i > 0) CHECK(less(terms[i - 1], terms[i]));
  }
  // The identity code appears in the size-3 block.
  CHECK(std::find(terms.begin(), terms.end(), code_ident()) != terms.end());
}

TEST_CASE("filter closure") {
  std::vector<ObservedApplication> log;
  Term x = code_ident();
  log.push_back({K(), x, apply(K(), x, EvalBudget{100}).term});
  log.push_back({code_ident(), K(), K()});

  FilterSpec all{};
  CHECK(check_filter_closure(all, log));

  FilterSpec no_k{[](const Term& t) { return !(t == Term::k()); }};
  CHECK_FALSE(check_filter_closure(no_k, log));

  // A size-bounded filter agrees with a replayed closure check.
  FilterSpec bounded{[](const Term& t) { return t.size() <= 4; }};
  bool expect = true;
  for (const auto& obs : log) {
    if (obs.fn.size() <= 4 && obs.arg.size() <= 4 && obs.result.size() > 4)
      expect = false;
  }
  CHECK(check_filter_closure(bounded, log) == expect);
}

TEST_SUITE_END();
