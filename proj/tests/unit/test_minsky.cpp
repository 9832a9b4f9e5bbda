#include <doctest.h>

#include <random>

#include "lambek/minsky.hpp"
#include "lambek/prover.hpp"

using namespace lambek;

namespace {

MinskyMachine loop_machine() {
  MinskyMachine m;
  m.state_count = 2;
  m.instructions = {{OpCode::Dec, 1, 1, 1}, {OpCode::Jz, 1, 1, 0}};
  return m;
}

}  // namespace

TEST_CASE("single-step semantics") {
  MinskyMachine dec;
  dec.state_count = 2;
  dec.instructions = {{OpCode::Dec, 1, 1, 0}};
  CHECK(simulate_step(dec, {1, 1, 0}) == std::set<Configuration>{{0, 0, 0}});
  CHECK(simulate_step(dec, {1, 0, 0}).empty());

  MinskyMachine jz;
  jz.state_count = 2;
  jz.instructions = {{OpCode::Jz, 1, 1, 0}};
  CHECK(simulate_step(jz, {1, 0, 0}) == std::set<Configuration>{{0, 0, 0}});
  CHECK(simulate_step(jz, {1, 1, 0}).empty());

  MinskyMachine inc;
  inc.state_count = 2;
  inc.instructions = {{OpCode::Inc, 1, 2, 1}};
  CHECK(simulate_step(inc, {1, 0, 0}) == std::set<Configuration>{{1, 0, 1}});
}

TEST_CASE("reachability search") {
  ReachResult r = reach_final(loop_machine(), {1, 3, 0});
  REQUIRE(r.reached);
  CHECK(r.trace.size() == 4);  // three decrements, one zero-test
  CHECK(r.trace == std::vector<int>{0, 0, 0, 1});

  CHECK(reach_final(loop_machine(), {0, 0, 0}).reached);
  CHECK(reach_final(loop_machine(), {0, 0, 0}).trace.empty());

  MinskyMachine inconly;
  inconly.state_count = 2;
  inconly.instructions = {{OpCode::Inc, 1, 1, 1}};
  CHECK(!reach_final(inconly, {1, 0, 0}, 16, 2000).reached);
}

TEST_CASE("jzdec translation") {
  MinskyMachine m = translate_jzdec(3, {{"jzdec", 1, 1, 2, 0}});
  REQUIRE(m.instructions.size() == 2);
  CHECK(m.instructions[0] == Instruction{OpCode::Dec, 1, 1, 2});
  CHECK(m.instructions[1] == Instruction{OpCode::Jz, 1, 1, 0});

  CHECK(translate_jzdec(1, {}).instructions.empty());

  MinskyMachine mixed = translate_jzdec(3, {{"inc", 1, 1, 2, {}}, {"jzdec", 2, 2, 1, 0}, {"dec", 1, 2, 0, {}}});
  REQUIRE(mixed.instructions.size() == 4);
  CHECK(mixed.instructions[0].op == OpCode::Inc);
  CHECK(mixed.instructions[1].op == OpCode::Dec);
  CHECK(mixed.instructions[2].op == OpCode::Jz);
  CHECK(mixed.instructions[3].op == OpCode::Dec);

  CHECK_THROWS_AS(translate_jzdec(2, {{"jzdec", 1, 1, 0, {}}}), MachineError);
  CHECK_THROWS_AS(translate_jzdec(2, {{"inc", 1, 3, 0, {}}}), MachineError);
  CHECK_THROWS_AS(translate_jzdec(2, {{"inc", 5, 1, 0, {}}}), MachineError);
}

TEST_CASE("fold and double negation") {
  EncodingContext ctx;
  Formula c = parse_formula("c");
  CHECK(fold_backslash({parse_formula("a1")}, c) == parse_formula("a1\\c"));
  CHECK(fold_backslash({parse_formula("a1"), parse_formula("a2")}, c) == parse_formula("a2\\(a1\\c)"));
  CHECK_THROWS_AS(fold_backslash({}, c), MachineError);

  CHECK(double_neg_b({parse_formula("q")}, ctx) == parse_formula("(q\\b)\\b"));
  CHECK(double_neg_b({ctx.var_p1(), ctx.var_l(2)}, ctx) == parse_formula("(l2\\(p1\\b))\\b"));
}

TEST_CASE("instruction encodings match the table") {
  EncodingContext ctx;
  CHECK(instruction_formula({OpCode::Inc, 1, 1, 2}, ctx) == parse_formula("l1\\((l2\\(p1\\b))\\b)"));
  CHECK(instruction_formula({OpCode::Inc, 1, 2, 2}, ctx) == parse_formula("l1\\((p2\\(l2\\b))\\b)"));
  CHECK(instruction_formula({OpCode::Dec, 1, 1, 2}, ctx) == parse_formula("l1\\(p1\\((l2\\b)\\b))"));
  CHECK(instruction_formula({OpCode::Dec, 1, 2, 2}, ctx) == parse_formula("p2\\(l1\\((l2\\b)\\b))"));
  CHECK(instruction_formula({OpCode::Jz, 1, 1, 2}, ctx) == parse_formula("l1\\(e1\\((l2\\(e1\\b))\\b))"));
  CHECK(instruction_formula({OpCode::Jz, 1, 2, 2}, ctx) == parse_formula("e2\\(l1\\((e2\\(l2\\b))\\b))"));
}

TEST_CASE("configuration encodings") {
  EncodingContext ctx;
  CHECK(encode_config({0, 0, 0}, ctx) ==
        std::vector<Formula>{ctx.var_e1(), ctx.var_l(0), ctx.var_e2()});
  CHECK(encode_config({3, 2, 1}, ctx) ==
        std::vector<Formula>{ctx.var_e1(), ctx.var_p1(), ctx.var_p1(), ctx.var_l(3), ctx.var_p2(),
                             ctx.var_e2()});
  CHECK(encode_config({1, 0, 0}, ctx) ==
        std::vector<Formula>{ctx.var_e1(), ctx.var_l(1), ctx.var_e2()});
}

TEST_CASE("the machine formula is an ordered conjunction") {
  EncodingContext ctx;
  MinskyMachine loop = loop_machine();
  Formula g = machine_formula(loop, ctx);

  std::vector<Formula> conjuncts;
  Formula cursor = g;
  while (cursor.tag() == Conn::Meet) {
    conjuncts.push_back(cursor.left());
    cursor = cursor.right();
  }
  conjuncts.push_back(cursor);
  // termination conjunct, 2 instructions, vocabulary e1,e2,p1,p2,l0,l1
  REQUIRE(conjuncts.size() == 1 + 2 + 6);
  CHECK(conjuncts[0] == parse_formula("e2\\(l0\\(e1\\b))"));
  CHECK(conjuncts[1] == instruction_formula(loop.instructions[0], ctx));
  CHECK(conjuncts[2] == instruction_formula(loop.instructions[1], ctx));
  CHECK(conjuncts[3] == parse_formula("e1\\((e1\\b)\\b)"));
  CHECK(conjuncts.back() == parse_formula("l1\\((l1\\b)\\b)"));

  MinskyMachine bare;
  bare.state_count = 1;
  Formula g0 = machine_formula(bare, ctx);
  CHECK(g0.left() == fold_backslash({ctx.var_e1(), ctx.var_l(0), ctx.var_e2()}, ctx.var_b()));
}

TEST_CASE("target sequents") {
  EncodingContext ctx;
  MinskyMachine loop = loop_machine();
  Sequent s0 = target_sequent(loop, {0, 0, 0}, ctx);
  REQUIRE(s0.antecedent.size() == 4);
  CHECK(s0.antecedent[0] == Formula::meet(Formula::unit(), machine_formula(loop, ctx)));
  CHECK(s0.antecedent[1] == ctx.var_e1());
  CHECK(s0.succedent == ctx.var_b());

  CHECK(target_sequent(loop, {1, 1, 0}, ctx).antecedent.size() == 5);
  CHECK(parse_sequent(render(s0)) == s0);
}

TEST_CASE("the base derivation has the expected shape") {
  EncodingContext ctx;
  MinskyMachine loop = loop_machine();
  DerivationPtr d = synthesize_derivation(loop, {0, 0, 0}, {}, ctx);
  CHECK(d->conclusion == target_sequent(loop, {0, 0, 0}, ctx));
  CHECK(check_derivation(*d, CalculusId::LPLUSEPS).valid);

  // spine: three commuting moves, two &L peels, three \L, axioms
  std::vector<std::string> spine;
  const Derivation* cur = d.get();
  for (;;) {
    spine.push_back(cur->rule);
    if (cur->premises.empty()) break;
    cur = cur->premises.back().get();
  }
  CHECK(spine == std::vector<std::string>{"Le", "Le", "Le", "&Lr", "&Ll", "\\L", "\\L", "\\L", "Id"});
  CHECK(derivation_node_count(*d) == 12);
}

TEST_CASE("synthesized derivations check for the loop machine") {
  EncodingContext ctx;
  MinskyMachine loop = loop_machine();
  int prev = 0;
  for (long long k = 0; k <= 3; ++k) {
    Configuration start{1, k, 0};
    ReachResult r = reach_final(loop, start);
    REQUIRE(r.reached);
    DerivationPtr d = synthesize_derivation(loop, start, r.trace, ctx);
    CHECK(d->conclusion == target_sequent(loop, start, ctx));
    CheckReport rep = check_derivation(*d, CalculusId::LPLUSEPS);
    INFO("k=", k, ": ", rep.reason);
    CHECK(rep.valid);
    int nodes = derivation_node_count(*d);
    CHECK(nodes > prev);
    prev = nodes;
  }
}

TEST_CASE("all instruction kinds synthesize") {
  // a deterministic chain that touches inc/dec/jz on both registers
  EncodingContext ctx;
  MinskyMachine m;
  m.state_count = 7;
  m.instructions = {
      {OpCode::Inc, 1, 1, 2},  // (L1,0,0) -> (L2,1,0)
      {OpCode::Inc, 2, 2, 3},  // -> (L3,1,1)
      {OpCode::Dec, 3, 1, 4},  // -> (L4,0,1)
      {OpCode::Jz, 4, 1, 5},   // -> (L5,0,1)
      {OpCode::Dec, 5, 2, 6},  // -> (L6,0,0)
      {OpCode::Jz, 6, 2, 0},   // -> (L0,0,0)
  };
  Configuration start{1, 0, 0};
  ReachResult r = reach_final(m, start, 8, 100000);
  REQUIRE(r.reached);
  CHECK(r.trace == std::vector<int>{0, 1, 2, 3, 4, 5});
  DerivationPtr d = synthesize_derivation(m, start, r.trace, ctx);
  CheckReport rep = check_derivation(*d, CalculusId::LPLUSEPS);
  INFO(rep.reason);
  CHECK(rep.valid);

  CHECK_THROWS_AS(synthesize_derivation(m, start, {2}, ctx), TraceError);
  CHECK_THROWS_AS(synthesize_derivation(m, start, {0}, ctx), TraceError);
}

TEST_CASE("the lemma fragment checks over hypothesis leaves") {
  EncodingContext ctx;
  MinskyMachine loop = loop_machine();
  Formula one_g = Formula::meet(Formula::unit(), machine_formula(loop, ctx));
  std::vector<Formula> vocab = ctx.vocabulary(loop.state_count);

  std::mt19937_64 rng(41);
  CheckOptions opts;
  opts.allow_hypotheses = true;
  for (int i = 0; i < 40; ++i) {
    // pick an instruction conjunct or a vocabulary conjunct
    std::uniform_int_distribution<int> kind(0, 2);
    std::vector<Formula> phi, psi;
    int conjunct_index;
    int k = kind(rng);
    if (k < 2) {
      const Instruction& ins = loop.instructions[static_cast<size_t>(k)];
      conjunct_index = 1 + k;
      if (ins.op == OpCode::Dec) {
        psi = {ctx.var_p1(), ctx.var_l(ins.from)};
        phi = {ctx.var_l(ins.to)};
      } else {
        psi = {ctx.var_e1(), ctx.var_l(ins.from)};
        phi = {ctx.var_e1(), ctx.var_l(ins.to)};
      }
    } else {
      std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1);
      size_t vi = pick(rng);
      conjunct_index = static_cast<int>(1 + loop.instructions.size() + vi);
      phi = psi = {vocab[vi]};
    }
    std::uniform_int_distribution<size_t> len(0, 3);
    std::uniform_int_distribution<size_t> pickv(0, vocab.size() - 1);
    std::vector<Formula> delta;
    for (size_t j = len(rng); j-- > 0;) delta.push_back(vocab[pickv(rng)]);

    std::vector<Formula> premise_ant = {one_g};
    premise_ant.insert(premise_ant.end(), phi.begin(), phi.end());
    premise_ant.insert(premise_ant.end(), delta.begin(), delta.end());
    DerivationPtr premise = make_derivation(Sequent{premise_ant, ctx.var_b()}, "Hyp", {});

    DerivationPtr frag = lemma_g_fragment(loop, ctx, premise, phi, psi, delta, conjunct_index);
    std::vector<Formula> want = {one_g};
    want.insert(want.end(), delta.begin(), delta.end());
    want.insert(want.end(), psi.begin(), psi.end());
    CHECK(frag->conclusion == Sequent{want, ctx.var_b()});
    CheckReport rep = check_derivation(*frag, CalculusId::LPLUSEPS, opts);
    INFO(rep.reason);
    CHECK(rep.valid);
  }

  CHECK_THROWS_AS(lemma_g_fragment(loop, ctx,
                                   make_derivation(Sequent{{one_g}, ctx.var_b()}, "Hyp", {}),
                                   {ctx.var_p1()}, {ctx.var_p1()}, {}, 0),
                  MachineError);
}

TEST_CASE("machine files parse and translate") {
  std::string text = R"({
    "states": 3,
    "instructions": [
      {"op": "inc", "from": 1, "reg": 1, "to": 2},
      {"op": "jzdec", "from": 2, "reg": 1, "to": 2, "to2": 0}
    ]
  })";
  MinskyMachine m = machine_from_json(text);
  CHECK(m.state_count == 3);
  REQUIRE(m.instructions.size() == 3);
  CHECK(m.instructions[1].op == OpCode::Dec);
  CHECK(m.instructions[2].op == OpCode::Jz);
  CHECK(m.instructions[2].to == 0);

  MinskyMachine back = machine_from_json(machine_to_json(m));
  CHECK(back.state_count == m.state_count);
  CHECK(back.instructions == m.instructions);
}

TEST_CASE("bounded converse evidence: unknown for unreachable targets") {
  EncodingContext ctx;
  MinskyMachine inconly;
  inconly.state_count = 2;
  inconly.instructions = {{OpCode::Inc, 1, 1, 1}};
  SearchBudget small;
  small.max_nodes = 30000;  // evidence-sized budget for the unit suite
  ProofResult r = decide(target_sequent(inconly, {1, 0, 0}, ctx), CalculusId::LPLUSEPS, small);
  CHECK(r.unknown());
}
