#include <doctest.h>

#include <random>
#include <vector>

#include "lambek/lattice.hpp"
#include "lambek/prover.hpp"
#include "lambek/repro.hpp"

using namespace lambek;

namespace {

FiniteResiduatedLattice boolean2() {
  FiniteResiduatedLattice lat;
  lat.carrier = {"0", "1"};
  lat.leq = {true, true, false, true};
  lat.meet = {0, 0, 0, 1};
  lat.join = {0, 1, 1, 1};
  lat.prod = {0, 0, 0, 1};   // product = meet
  lat.limp = {1, 1, 0, 1};   // implication
  lat.unit = 1;
  return lat;
}

// an independent evaluator: explicit postorder walk over the normalized tree
int eval_by_stack(const FiniteResiduatedLattice& lat, const LatticeAssignment& assignment, Formula f0) {
  Formula f = normalize_commutative(f0);
  struct Item {
    Formula node;
    bool expanded;
  };
  std::vector<Item> stack = {{f, false}};
  std::vector<int> values;
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (!item.node.is_binary()) {
      if (item.node.tag() == Conn::Unit)
        values.push_back(*lat.unit);
      else
        values.push_back(assignment.at(item.node.var_name()));
      continue;
    }
    if (!item.expanded) {
      stack.push_back({item.node, true});
      stack.push_back({item.node.right(), false});
      stack.push_back({item.node.left(), false});
      continue;
    }
    int r = values.back();
    values.pop_back();
    int l = values.back();
    values.pop_back();
    switch (item.node.tag()) {
      case Conn::Prod: values.push_back(lat.pr(l, r)); break;
      case Conn::LDiv: values.push_back(lat.im(l, r)); break;
      case Conn::Meet: values.push_back(lat.mt(l, r)); break;
      case Conn::Join: values.push_back(lat.jn(l, r)); break;
      default: FAIL("unexpected connective"); break;
    }
  }
  return values.back();
}

}  // namespace

TEST_CASE("r5 validates and matches its defining tables") {
  FiniteResiduatedLattice r5 = lattice_r5();
  LatticeReport rep = validate_lattice(r5);
  INFO((rep.violations.empty() ? std::string()
                               : rep.violations[0].law + " at " + rep.violations[0].witness));
  CHECK(rep.valid);

  int a = r5.element("a"), b = r5.element("b"), c = r5.element("c"), one = r5.element("1");
  CHECK(r5.pr(a, b) == b);
  CHECK(r5.pr(c, c) == r5.element("0"));
  CHECK(r5.im(one, a) == r5.element("0"));
  CHECK(!r5.le(b, a));
  CHECK(r5.le(r5.element("0"), c));
  CHECK(!r5.unit.has_value());
}

TEST_CASE("the two-element boolean algebra is a residuated lattice") {
  CHECK(validate_lattice(boolean2()).valid);
}

TEST_CASE("a corrupted table fails with a residuation witness") {
  FiniteResiduatedLattice broken = lattice_r5();
  broken.prod[1 * 5 + 2] = broken.element("c");  // a*b := c
  LatticeReport rep = validate_lattice(broken);
  CHECK(!rep.valid);
  bool saw_residuation = false;
  for (const auto& v : rep.violations) saw_residuation = saw_residuation || v.law == "residuation";
  CHECK(saw_residuation);
}

TEST_CASE("evaluation over r5") {
  FiniteResiduatedLattice r5 = lattice_r5();
  int a = r5.element("a"), b = r5.element("b");
  LatticeAssignment assign{{"x", a}, {"y", b}};
  CHECK(lattice_eval(r5, assign, parse_formula("x&x")) == a);
  CHECK(lattice_eval(r5, assign, parse_formula("y\\x")) == b);  // residual table row b, column a
  CHECK(lattice_eval(r5, assign, parse_formula("x/y")) == b);   // commutative: same residual
  CHECK_THROWS_AS(lattice_eval(r5, assign, parse_formula("z")), LatticeError);
  CHECK_THROWS_AS(lattice_eval(r5, assign, parse_formula("1")), LatticeError);

  std::mt19937_64 rng(3);
  const std::vector<std::string> vars = {"x", "y"};
  const std::vector<Conn> conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
  for (int i = 0; i < 50; ++i) {
    Formula f = random_formula(rng, 4, vars, conns);
    CHECK(lattice_eval(r5, assign, f) == eval_by_stack(r5, assign, f));
  }
}

TEST_CASE("the reference assignment falsifies the disjunction counterexample") {
  FiniteResiduatedLattice r5 = lattice_r5();
  LatticeAssignment assign{{"y", r5.element("b")},
                           {"z", r5.element("c")},
                           {"x", r5.element("a")},
                           {"w", r5.element("a")}};
  CHECK(!lattice_sequent_true(r5, assign, disjunction_counterexample_sequent()));
  CHECK(lattice_sequent_true(r5, assign, parse_sequent("x |- x")));
}

TEST_CASE("falsifier search") {
  FiniteResiduatedLattice r5 = lattice_r5();
  auto falsifier = find_falsifier(r5, disjunction_counterexample_sequent());
  REQUIRE(falsifier.has_value());
  CHECK(!lattice_sequent_true(r5, *falsifier, disjunction_counterexample_sequent()));

  CHECK(!find_falsifier(r5, parse_sequent("p |- p")).has_value());
  // r5 is not distributive, the boolean algebra is
  CHECK(find_falsifier(r5, distributivity_sequent()).has_value());
  CHECK(!find_falsifier(boolean2(), distributivity_sequent()).has_value());
  CHECK_THROWS_AS(find_falsifier(r5, parse_sequent("1, p |- p")), LatticeError);
}

TEST_CASE("falsifier search is exhaustive") {
  FiniteResiduatedLattice r5 = lattice_r5();
  std::mt19937_64 rng(19);
  const std::vector<std::string> vars = {"x", "y"};
  const std::vector<Conn> conns = {Conn::Prod, Conn::LDiv, Conn::Meet, Conn::Join};
  for (int i = 0; i < 60; ++i) {
    Sequent s = random_sequent(rng, 2, 2, vars, conns, false);
    bool all_true = true;
    for (int x = 0; x < r5.size(); ++x)
      for (int y = 0; y < r5.size(); ++y)
        all_true = all_true && lattice_sequent_true(r5, {{"x", x}, {"y", y}}, s);
    CHECK(find_falsifier(r5, s).has_value() == !all_true);
  }
}

TEST_CASE("empty antecedents compare the unit") {
  FiniteResiduatedLattice b2 = boolean2();
  CHECK(lattice_sequent_true(b2, {{"p", 1}}, parse_sequent("|- p")));
  CHECK(!lattice_sequent_true(b2, {{"p", 0}}, parse_sequent("|- p")));
  CHECK_THROWS_AS(lattice_sequent_true(lattice_r5(), {{"p", 0}}, parse_sequent("|- p")),
                  LatticeError);
}

TEST_CASE("malc-derivable sequents hold in r5 under every assignment") {
  FiniteResiduatedLattice r5 = lattice_r5();
  // r5 fails weakening, so this soundness is for cut-free MALC, not IAL
  CHECK(r5.pr(r5.element("a"), r5.element("b")) == r5.element("b"));
  CHECK(!r5.le(r5.element("b"), r5.element("a")));

  std::mt19937_64 rng(37);
  const std::vector<std::string> vars = {"x", "y", "z"};
  const std::vector<Conn> conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
  int found = 0;
  long long attempts = 0;
  while (found < 200) {
    REQUIRE(++attempts < 100000);
    Sequent s = random_sequent(rng, 2, 3, vars, conns, false);
    if (!decide(s, CalculusId::MALC).derivable()) continue;
    ++found;
    std::vector<std::string> svars = sequent_variables(s);
    std::vector<int> values(svars.size(), 0);
    for (;;) {
      LatticeAssignment assign;
      for (size_t i = 0; i < svars.size(); ++i) assign[svars[i]] = values[i];
      INFO(render(s));
      CHECK(lattice_sequent_true(r5, assign, s));
      size_t i = values.size();
      while (i > 0 && values[i - 1] == r5.size() - 1) values[--i] = 0;
      if (i == 0) break;
      ++values[i - 1];
    }
  }
}

TEST_CASE("lattice files round trip") {
  FiniteResiduatedLattice r5 = lattice_r5();
  FiniteResiduatedLattice back = lattice_from_json(lattice_to_json(r5));
  CHECK(back.carrier == r5.carrier);
  CHECK(back.leq == r5.leq);
  CHECK(back.prod == r5.prod);
  CHECK(back.limp == r5.limp);
  CHECK(back.unit == r5.unit);
  CHECK(validate_lattice(back).valid);
}
