#include <doctest.h>

#include <random>

#include "lambek/formula.hpp"
#include "lambek/repro.hpp"

using namespace lambek;

TEST_CASE("atoms and basic shapes parse") {
  Formula p = parse_formula("p");
  CHECK(p.tag() == Conn::Var);
  CHECK(p.var_name() == "p");

  Formula f = parse_formula("(p\\p)\\q");
  REQUIRE(f.tag() == Conn::LDiv);
  CHECK(f.left() == Formula::ldiv(Formula::var("p"), Formula::var("p")));
  CHECK(f.right() == Formula::var("q"));

  CHECK(parse_formula("1").tag() == Conn::Unit);
  CHECK(parse_formula("longName_01").var_name() == "longName_01");
}

TEST_CASE("division chains are ambiguous") {
  CHECK_THROWS_AS(parse_formula("p\\q\\r"), AmbiguityError);
  CHECK_THROWS_AS(parse_formula("p/q/r"), AmbiguityError);
  CHECK_THROWS_AS(parse_formula("p\\q/r"), AmbiguityError);
  CHECK_NOTHROW(parse_formula("(p\\q)\\r"));
  CHECK_NOTHROW(parse_formula("p\\(q\\r)"));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("p &");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos == 3);
  }
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("P"), ParseError);  // variables start lowercase
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_sequent("p |- "), ParseError);
  CHECK_THROWS_AS(parse_sequent("p, q"), ParseError);
}

TEST_CASE("precedence: * over division over & over |") {
  CHECK(parse_formula("p*q\\r") == Formula::ldiv(Formula::prod(Formula::var("p"), Formula::var("q")),
                                                 Formula::var("r")));
  CHECK(parse_formula("p&q\\r") ==
        Formula::meet(Formula::var("p"), Formula::ldiv(Formula::var("q"), Formula::var("r"))));
  CHECK(parse_formula("p|q&r") ==
        Formula::join(Formula::var("p"), Formula::meet(Formula::var("q"), Formula::var("r"))));
  // chains of the same associative connective lean left
  CHECK(parse_formula("p|q|r") ==
        Formula::join(Formula::join(Formula::var("p"), Formula::var("q")), Formula::var("r")));
  CHECK(parse_formula("p*q*r") ==
        Formula::prod(Formula::prod(Formula::var("p"), Formula::var("q")), Formula::var("r")));
}

TEST_CASE("sequents parse with ordered antecedents") {
  Sequent s = parse_sequent("p, q |- p*q");
  REQUIRE(s.antecedent.size() == 2);
  CHECK(s.antecedent[0] == Formula::var("p"));
  CHECK(s.antecedent[1] == Formula::var("q"));
  CHECK(s.succedent == Formula::prod(Formula::var("p"), Formula::var("q")));

  Sequent empty = parse_sequent("|- 1");
  CHECK(empty.antecedent.empty());
  CHECK(empty.succedent.tag() == Conn::Unit);

  Sequent units = parse_sequent("1/p, 1/p |- 1/p");
  REQUIRE(units.antecedent.size() == 2);
  Formula unit_over_p = Formula::rdiv(Formula::unit(), Formula::var("p"));
  CHECK(units.antecedent[0] == unit_over_p);
  CHECK(units.antecedent[1] == unit_over_p);
  CHECK(units.succedent == unit_over_p);
}

TEST_CASE("unicode aliases") {
  CHECK(parse_formula("p∧q") == parse_formula("p&q"));
  CHECK(parse_formula("p∨q") == parse_formula("p|q"));
  CHECK(parse_formula("p⊸q") == parse_formula("p\\q"));
  CHECK(parse_formula("p·q") == parse_formula("p*q"));
  CHECK(parse_formula("\U0001d7cf") == parse_formula("1"));
}

TEST_CASE("rendering is fully parenthesized and deterministic") {
  CHECK(render(Formula::var("p")) == "p");
  Formula f = Formula::ldiv(Formula::var("p"), Formula::ldiv(Formula::var("q"), Formula::var("b")));
  CHECK(render(f) == "(p\\(q\\b))");
  CHECK(render(parse_sequent("|- 1")) == "|- 1");
  CHECK(render(parse_sequent("p,q |- p*q")) == "p, q |- (p*q)");
}

TEST_CASE("round trip over random formulas") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> vars = {"p", "q", "r", "s"};
  const std::vector<Conn> conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 8, vars, conns, true);
    CHECK(parse_formula(render(f)) == f);
  }
  // sequents too, including the disjunction counterexample
  Sequent disj = parse_sequent(
      "((x/y)|w)/((x/y)|(x/z)|w), (x/y)|w, ((x/y)|w)\\((x/z)|w) |- (x/(y|z))|w");
  CHECK(parse_sequent(render(disj)) == disj);
}

TEST_CASE("parsing is deterministic across calls") {
  std::string text = "((p\\q)&(q/r))|(p*1)";
  CHECK(parse_formula(text) == parse_formula(text));
  CHECK(render(parse_formula(text)) == render(parse_formula(text)));
}

TEST_CASE("commutative normalization turns B/A into A\\B") {
  CHECK(normalize_commutative(parse_formula("x/y")) == parse_formula("y\\x"));
  CHECK(normalize_commutative(parse_formula("(x/y)|w")) == parse_formula("(y\\x)|w"));
  // fixpoint on division-free formulas
  Formula g = parse_formula("(p&q)|(p*q)");
  CHECK(normalize_commutative(g) == g);
}

TEST_CASE("structural helpers") {
  Formula f = parse_formula("(p\\q)&(r*1)");
  CHECK(contains_subformula(f, parse_formula("p\\q")));
  CHECK(!contains_subformula(f, parse_formula("q\\p")));
  CHECK(contains_conn(f, Conn::Unit));
  CHECK(!contains_conn(f, Conn::Join));
  auto vars = sequent_variables(parse_sequent("p, q|r |- p"));
  CHECK(vars == std::vector<std::string>{"p", "q", "r"});
}
