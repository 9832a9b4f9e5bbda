#include <doctest.h>

#include <random>

#include "lambek/calculi.hpp"
#include "lambek/repro.hpp"

using namespace lambek;

namespace {

const RuleSchema* find_rule(const std::vector<RuleSchema>& rules, const std::string& id) {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("rule inventories") {
  auto l = rule_set(CalculusId::L);
  const RuleSchema* lr = find_rule(l, "\\R");
  REQUIRE(lr);
  REQUIRE(lr->side_conditions.size() == 1);
  CHECK(lr->side_conditions[0] == "Pi is non-empty");
  CHECK(!find_rule(l, "&R"));
  CHECK(!find_rule(rule_set(CalculusId::LSTAR), "\\R")->side_conditions.size());

  auto eps = rule_set(CalculusId::LPLUSEPS);
  const RuleSchema* de = find_rule(eps, "De");
  REQUIRE(de);
  CHECK(de->arity == 1);
  CHECK(de->side_conditions[0].find("1&G") != std::string::npos);
  CHECK(!de->size_decreasing);
  CHECK(find_rule(eps, "1"));
  CHECK(!find_rule(eps, "/L"));

  auto malcd = rule_set(CalculusId::MALC_D);
  REQUIRE(find_rule(malcd, "D"));
  CHECK(find_rule(malcd, "D")->arity == 0);
  REQUIRE(find_rule(malcd, "Cut"));
  CHECK(!find_rule(malcd, "Cut")->size_decreasing);

  CHECK(find_rule(rule_set(CalculusId::AMALCSTAR), "W"));
  CHECK(!find_rule(rule_set(CalculusId::MALCSTAR), "W"));
  CHECK(find_rule(rule_set(CalculusId::L1), "1L"));
  CHECK(find_rule(rule_set(CalculusId::L1), "1R"));
}

TEST_CASE("axiom expansion") {
  auto exps = backward_expand(parse_sequent("p |- p"), CalculusId::MALC);
  REQUIRE(exps.size() == 1);
  CHECK(exps[0].rule == "Id");
  CHECK(exps[0].premises.empty());
}

TEST_CASE("the Lambek restriction blocks \\R at an empty goal") {
  CHECK(backward_expand(parse_sequent("|- p\\p"), CalculusId::L).empty());
  auto star = backward_expand(parse_sequent("|- p\\p"), CalculusId::LSTAR);
  REQUIRE(star.size() == 1);
  CHECK(star[0].rule == "\\R");
  CHECK(star[0].premises[0] == parse_sequent("p |- p"));
}

TEST_CASE("doubling expands 1&G in lpluseps") {
  Sequent s = parse_sequent("q, 1&g, r |- c");
  bool saw_de = false, saw_le = false, saw_re = false;
  for (const auto& e : backward_expand(s, CalculusId::LPLUSEPS)) {
    if (e.rule == "De") {
      saw_de = true;
      CHECK(e.premises[0] == parse_sequent("q, 1&g, 1&g, r |- c"));
    }
    if (e.rule == "Le") {
      saw_le = true;
      CHECK(e.premises[0] == parse_sequent("q, r, 1&g |- c"));
    }
    if (e.rule == "Re") {
      saw_re = true;
      CHECK(e.premises[0] == parse_sequent("1&g, q, r |- c"));
    }
  }
  CHECK(saw_de);
  CHECK(saw_le);
  CHECK(saw_re);
}

TEST_CASE("checker accepts axioms and respects the restriction") {
  DerivationPtr ax = make_derivation(parse_sequent("p |- p"), "Id", {});
  CHECK(check_derivation(*ax, CalculusId::MALC).valid);

  DerivationPtr lr = make_derivation(parse_sequent("|- p\\p"), "\\R", {ax});
  CHECK(check_derivation(*lr, CalculusId::LSTAR).valid);
  CheckReport rejected = check_derivation(*lr, CalculusId::L);
  CHECK(!rejected.valid);
  CHECK(rejected.reason.find("empty antecedent") != std::string::npos);
}

TEST_CASE("checker pinpoints the first failing node") {
  DerivationPtr bad = make_derivation(parse_sequent("p |- q"), "Id", {});
  DerivationPtr ok = make_derivation(parse_sequent("q |- q"), "Id", {});
  Sequent con = parse_sequent("p, p\\q |- q");
  DerivationPtr node = make_derivation(con, "\\L", {bad, ok});
  CheckReport rep = check_derivation(*node, CalculusId::LSTAR);
  CHECK(!rep.valid);
  // \L matching fails at the root because premise 0 proves the wrong thing
  CHECK(rep.path.empty());

  DerivationPtr pax = make_derivation(parse_sequent("p |- p"), "Id", {});
  DerivationPtr bad_leaf = make_derivation(parse_sequent("q |- q"), "W", {pax});
  DerivationPtr good_node = make_derivation(con, "\\L", {pax, {make_derivation(parse_sequent("q |- q"), "Id", {})}});
  CHECK(check_derivation(*good_node, CalculusId::LSTAR).valid);
  DerivationPtr outer = make_derivation(con, "\\L", {pax, bad_leaf});
  CheckReport deep = check_derivation(*outer, CalculusId::LSTAR);
  CHECK(!deep.valid);
  CHECK(deep.path == std::vector<int>{1});
  CHECK(deep.reason.find("W") != std::string::npos);
}

TEST_CASE("hypothesis leaves are opt-in") {
  DerivationPtr hyp = make_derivation(parse_sequent("p, q |- r"), "Hyp", {});
  CHECK(!check_derivation(*hyp, CalculusId::MALC).valid);
  CheckOptions opts;
  opts.allow_hypotheses = true;
  CHECK(check_derivation(*hyp, CalculusId::MALC, opts).valid);
}

TEST_CASE("expansion soundness: assembled nodes check with hypothesis premises") {
  std::mt19937_64 rng(13);
  const std::vector<std::string> vars = {"p", "q", "r"};
  CheckOptions opts;
  opts.allow_hypotheses = true;
  for (CalculusId id : all_calculi()) {
    if (id == CalculusId::MALC_D) continue;
    std::vector<Conn> conns;
    bool unit = false;
    switch (id) {
      case CalculusId::L:
      case CalculusId::LSTAR:
        conns = {Conn::Prod, Conn::LDiv, Conn::RDiv};
        break;
      case CalculusId::L1:
        conns = {Conn::Prod, Conn::LDiv, Conn::RDiv};
        unit = true;
        break;
      case CalculusId::LPLUSEPS:
        conns = {Conn::LDiv, Conn::Meet};
        unit = true;
        break;
      case CalculusId::ILL:
      case CalculusId::IAL:
        conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
        break;
      default:
        conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
        break;
    }
    for (int i = 0; i < 120; ++i) {
      Sequent s = random_sequent(rng, 2, 3, vars, conns, !has_lambek_restriction(id), unit);
      Sequent canon = canonical_sequent(s, id);
      for (const auto& e : backward_expand(canon, id)) {
        std::vector<DerivationPtr> prem;
        for (const auto& p : e.premises) prem.push_back(make_derivation(p, "Hyp", {}));
        DerivationPtr node = make_derivation(canon, e.rule, std::move(prem), e.inst);
        CheckReport rep = check_derivation(*node, id, opts);
        INFO("calculus ", to_string(id), " rule ", e.rule, " at ", render(canon));
        CHECK(rep.valid);
      }
    }
  }
}

TEST_CASE("every expansion shrinks the sequent outside lpluseps") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> vars = {"p", "q"};
  const std::vector<Conn> conns = {Conn::Prod, Conn::LDiv, Conn::RDiv, Conn::Meet, Conn::Join};
  for (CalculusId id : {CalculusId::L, CalculusId::LSTAR, CalculusId::MALC, CalculusId::MALCSTAR,
                        CalculusId::AMALCSTAR, CalculusId::ILL, CalculusId::IAL, CalculusId::L1}) {
    for (int i = 0; i < 150; ++i) {
      bool unit = id == CalculusId::L1;
      std::vector<Conn> cs = id == CalculusId::L || id == CalculusId::LSTAR || id == CalculusId::L1
                                 ? std::vector<Conn>{Conn::Prod, Conn::LDiv, Conn::RDiv}
                                 : conns;
      Sequent s = canonical_sequent(
          random_sequent(rng, 3, 3, vars, cs, !has_lambek_restriction(id), unit), id);
      for (const auto& e : backward_expand(s, id))
        for (const auto& p : e.premises) {
          INFO(to_string(id), ": ", render(s), " via ", e.rule, " -> ", render(p));
          CHECK(p.total_size() < s.total_size());
        }
    }
  }
}

TEST_CASE("derivation serialization round trip") {
  DerivationPtr ax = make_derivation(parse_sequent("p |- p"), "Id", {});
  Instantiation inst;
  inst.principal = 0;
  inst.cut_formula = parse_formula("p&q");
  DerivationPtr d = make_derivation(parse_sequent("|- p\\p"), "\\R", {ax}, inst);
  DerivationPtr back = derivation_from_json(derivation_to_json(*d));
  CHECK(back->conclusion == d->conclusion);
  CHECK(back->rule == d->rule);
  REQUIRE(back->premises.size() == 1);
  CHECK(back->premises[0]->conclusion == ax->conclusion);
  CHECK(back->inst.principal == 0);
  CHECK(*back->inst.cut_formula == *d->inst.cut_formula);
  CHECK(render_tree(*back) == render_tree(*d));
}

TEST_CASE("calculus names round trip") {
  for (CalculusId id : all_calculi()) CHECK(calculus_from_string(to_string(id)) == id);
  CHECK(!calculus_from_string("nope").has_value());
}
