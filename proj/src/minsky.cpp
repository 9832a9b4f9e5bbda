#include "lambek/minsky.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <unordered_map>

#include <json.hpp>

namespace lambek {

std::vector<Formula> EncodingContext::vocabulary(int state_count) const {
  std::vector<Formula> v = {var_e1(), var_e2(), var_p1(), var_p2()};
  for (int i = 0; i < state_count; ++i) v.push_back(var_l(i));
  return v;
}

MinskyMachine translate_jzdec(int state_count, const std::vector<RawInstruction>& raw) {
  MinskyMachine m;
  m.state_count = state_count;
  auto check_state = [&](int s) {
    if (s < 0 || s >= state_count) throw MachineError("state index " + std::to_string(s) + " out of range");
  };
  for (const auto& r : raw) {
    check_state(r.from);
    check_state(r.to);
    if (r.reg != 1 && r.reg != 2) throw MachineError("register must be 1 or 2");
    if (r.op == "inc") {
      m.instructions.push_back({OpCode::Inc, r.from, r.reg, r.to});
    } else if (r.op == "dec") {
      m.instructions.push_back({OpCode::Dec, r.from, r.reg, r.to});
    } else if (r.op == "jz") {
      m.instructions.push_back({OpCode::Jz, r.from, r.reg, r.to});
    } else if (r.op == "jzdec") {
      if (!r.to2) throw MachineError("jzdec needs a \"to2\" state");
      check_state(*r.to2);
      m.instructions.push_back({OpCode::Dec, r.from, r.reg, r.to});
      m.instructions.push_back({OpCode::Jz, r.from, r.reg, *r.to2});
    } else {
      throw MachineError("unknown instruction '" + r.op + "'");
    }
  }
  return m;
}

namespace {

std::optional<Configuration> apply_instruction(const Instruction& ins, const Configuration& c) {
  if (ins.from != c.state) return std::nullopt;
  long long k = ins.reg == 1 ? c.k1 : c.k2;
  switch (ins.op) {
    case OpCode::Inc:
      ++k;
      break;
    case OpCode::Dec:
      if (k == 0) return std::nullopt;
      --k;
      break;
    case OpCode::Jz:
      if (k != 0) return std::nullopt;
      break;
  }
  Configuration next = c;
  next.state = ins.to;
  (ins.reg == 1 ? next.k1 : next.k2) = k;
  return next;
}

}  // namespace

std::set<Configuration> simulate_step(const MinskyMachine& m, const Configuration& c) {
  std::set<Configuration> out;
  for (const auto& ins : m.instructions)
    if (auto next = apply_instruction(ins, c)) out.insert(*next);
  return out;
}

ReachResult reach_final(const MinskyMachine& m, const Configuration& start, long long counter_cap,
                        long long step_cap) {
  std::map<Configuration, std::pair<Configuration, int>> parent;
  std::queue<Configuration> work;
  auto trace_back = [&](Configuration c) {
    std::vector<int> trace;
    while (!(c == start)) {
      auto [prev, idx] = parent.at(c);
      trace.push_back(idx);
      c = prev;
    }
    std::reverse(trace.begin(), trace.end());
    return ReachResult{true, std::move(trace)};
  };
  if (start.is_final()) return {true, {}};
  work.push(start);
  parent.emplace(start, std::make_pair(start, -1));
  long long expanded = 0;
  while (!work.empty() && expanded < step_cap) {
    Configuration c = work.front();
    work.pop();
    ++expanded;
    for (size_t i = 0; i < m.instructions.size(); ++i) {
      auto next = apply_instruction(m.instructions[i], c);
      if (!next || next->k1 > counter_cap || next->k2 > counter_cap) continue;
      if (parent.contains(*next)) continue;
      parent.emplace(*next, std::make_pair(c, static_cast<int>(i)));
      if (next->is_final()) return trace_back(*next);
      work.push(*next);
    }
  }
  return {false, {}};
}

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

Formula fold_backslash(const std::vector<Formula>& phi, Formula c) {
  if (phi.empty()) throw MachineError("fold over an empty sequence");
  Formula acc = c;
  for (const Formula& a : phi) acc = Formula::ldiv(a, acc);
  return acc;
}

Formula double_neg_b(const std::vector<Formula>& phi, const EncodingContext& ctx) {
  return Formula::ldiv(fold_backslash(phi, ctx.var_b()), ctx.var_b());
}

namespace {

// (Psi, Phi) per instruction row of the encoding table
std::pair<std::vector<Formula>, std::vector<Formula>> instruction_psi_phi(const Instruction& ins,
                                                                          const EncodingContext& ctx) {
  Formula li = ctx.var_l(ins.from), lj = ctx.var_l(ins.to);
  switch (ins.op) {
    case OpCode::Inc:
      if (ins.reg == 1) return {{li}, {ctx.var_p1(), lj}};
      return {{li}, {lj, ctx.var_p2()}};
    case OpCode::Dec:
      if (ins.reg == 1) return {{ctx.var_p1(), li}, {lj}};
      return {{li, ctx.var_p2()}, {lj}};
    case OpCode::Jz:
      if (ins.reg == 1) return {{ctx.var_e1(), li}, {ctx.var_e1(), lj}};
      return {{li, ctx.var_e2()}, {lj, ctx.var_e2()}};
  }
  throw MachineError("unreachable");
}

}  // namespace

Formula instruction_formula(const Instruction& ins, const EncodingContext& ctx) {
  auto [psi, phi] = instruction_psi_phi(ins, ctx);
  return fold_backslash(psi, double_neg_b(phi, ctx));
}

std::vector<Formula> encode_config(const Configuration& c, const EncodingContext& ctx) {
  std::vector<Formula> out;
  out.push_back(ctx.var_e1());
  for (long long i = 0; i < c.k1; ++i) out.push_back(ctx.var_p1());
  out.push_back(ctx.var_l(c.state));
  for (long long i = 0; i < c.k2; ++i) out.push_back(ctx.var_p2());
  out.push_back(ctx.var_e2());
  return out;
}

namespace {

std::vector<Formula> g_conjuncts(const MinskyMachine& m, const EncodingContext& ctx) {
  std::vector<Formula> cs;
  cs.push_back(fold_backslash({ctx.var_e1(), ctx.var_l(0), ctx.var_e2()}, ctx.var_b()));
  for (const auto& ins : m.instructions) cs.push_back(instruction_formula(ins, ctx));
  for (const Formula& q : ctx.vocabulary(m.state_count)) cs.push_back(Formula::ldiv(q, double_neg_b({q}, ctx)));
  return cs;
}

}  // namespace

Formula machine_formula(const MinskyMachine& m, const EncodingContext& ctx) {
  std::vector<Formula> cs = g_conjuncts(m, ctx);
  Formula g = cs.back();
  for (size_t i = cs.size() - 1; i-- > 0;) g = Formula::meet(cs[i], g);
  return g;
}

Sequent target_sequent(const MinskyMachine& m, const Configuration& c, const EncodingContext& ctx) {
  std::vector<Formula> ant;
  ant.push_back(Formula::meet(Formula::unit(), machine_formula(m, ctx)));
  for (const Formula& f : encode_config(c, ctx)) ant.push_back(f);
  return Sequent{std::move(ant), ctx.var_b()};
}

// ---------------------------------------------------------------------------
// Derivation synthesis (forward encoding)
// ---------------------------------------------------------------------------

namespace {

using Fs = std::vector<Formula>;

Fs fs_concat(const Fs& a, const Fs& b) {
  Fs out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

struct GContext {
  Formula b;
  Formula one_and_g;
  std::vector<Formula> conjuncts;  // c0 .. cK of the big conjunction
  std::vector<Formula> subtrees;   // subtrees[t] = ct & (... & cK)
  std::unordered_map<std::string, int> vocab_conjunct;

  GContext(const MinskyMachine& m, const EncodingContext& ctx)
      : b(ctx.var_b()), one_and_g(Formula::meet(Formula::unit(), machine_formula(m, ctx))),
        conjuncts(g_conjuncts(m, ctx)) {
    subtrees.assign(conjuncts.begin(), conjuncts.end());
    for (size_t t = conjuncts.size() - 1; t-- > 0;)
      subtrees[t] = Formula::meet(conjuncts[t], subtrees[t + 1]);
    const Fs vocab = ctx.vocabulary(m.state_count);
    for (size_t i = 0; i < vocab.size(); ++i)
      vocab_conjunct[vocab[i].var_name()] = static_cast<int>(1 + m.instructions.size() + i);
  }

  Sequent seq(Fs ant) const { return Sequent{std::move(ant), b}; }
};

DerivationPtr id_node(Formula f) { return make_derivation(Sequent{{f}, f}, "Id", {}); }

// [v1..vm, fold(v, b) |- b] closed by an \L ladder down to axioms
DerivationPtr fold_chain(const Fs& vars, const GContext& g) {
  if (vars.empty()) return id_node(g.b);
  Fs rest(vars.begin(), vars.end() - 1);
  DerivationPtr inner = fold_chain(rest, g);
  Formula last = vars.back();
  Fs ant = vars;
  ant.push_back(fold_backslash(vars, g.b));
  Instantiation inst;
  inst.principal = static_cast<int>(ant.size() - 1);
  inst.split_begin = static_cast<int>(ant.size() - 2);
  inst.split_end = static_cast<int>(ant.size() - 1);
  return make_derivation(g.seq(std::move(ant)), "\\L", {id_node(last), inner}, inst);
}

// d proves ant with conjunct j at position pos; wraps &L nodes until the
// formula there reads 1&G
DerivationPtr peel_from_conjunct(DerivationPtr d, size_t pos, int j, const GContext& g) {
  const int top = static_cast<int>(g.conjuncts.size()) - 1;
  Instantiation at;
  at.principal = static_cast<int>(pos);
  auto wrap = [&](Formula now, const char* rule) {
    Fs ant = d->conclusion.antecedent;
    ant[pos] = now;
    d = make_derivation(g.seq(std::move(ant)), rule, {d}, at);
  };
  if (j < top) wrap(g.subtrees[j], "&Ll");
  for (int t = j; t >= 1; --t) wrap(g.subtrees[t - 1], "&Lr");
  wrap(g.one_and_g, "&Lr");
  return d;
}

// d's conclusion holds the 1&-shaped mover at from_pos; Le wraps walk it
// left to to_pos
DerivationPtr le_move_left(DerivationPtr d, size_t from_pos, size_t to_pos, const GContext& g) {
  for (size_t p = from_pos; p > to_pos; --p) {
    Fs ant = d->conclusion.antecedent;
    std::swap(ant[p - 1], ant[p]);  // mover now at p-1
    Instantiation at;
    at.principal = static_cast<int>(p - 1);
    d = make_derivation(g.seq(std::move(ant)), "Le", {d}, at);
  }
  return d;
}

// mirror image: Re wraps walk the mover right
DerivationPtr re_move_right(DerivationPtr d, size_t from_pos, size_t to_pos, const GContext& g) {
  for (size_t p = from_pos; p < to_pos; ++p) {
    Fs ant = d->conclusion.antecedent;
    std::swap(ant[p], ant[p + 1]);  // mover now at p+1
    Instantiation at;
    at.principal = static_cast<int>(p + 1);
    d = make_derivation(g.seq(std::move(ant)), "Re", {d}, at);
  }
  return d;
}

// Key lemma: from [1&G, Phi, Delta |- b] derive [1&G, Delta, Psi |- b],
// where conjunct_index names G_{Phi,Psi} inside the big conjunction.
// Compared to the source figure the duplicated copy is moved first (while
// it still has the 1&G shape the commuting rules need) and peeled at its
// final position.
DerivationPtr lemma_g(DerivationPtr d, const Fs& phi, const Fs& psi, const Fs& delta, int conjunct_index,
                      const GContext& g) {
  assert(!phi.empty() && !psi.empty());
  assert(d->conclusion.antecedent == fs_concat(fs_concat({g.one_and_g}, phi), delta));

  // Re: [1&G, Phi, Delta] ~> [Phi, 1&G, Delta]
  d = re_move_right(d, 0, phi.size(), g);

  // \R ladder: ~> [1&G, Delta |- Phi \ b]
  for (size_t i = 0; i < phi.size(); ++i) {
    Fs ant(d->conclusion.antecedent.begin() + 1, d->conclusion.antecedent.end());
    Formula suc = Formula::ldiv(d->conclusion.antecedent.front(), d->conclusion.succedent);
    d = make_derivation(Sequent{std::move(ant), suc}, "\\R", {d});
  }

  // \L against the outer b: ~> [1&G, Delta, (Phi\b)\b |- b]
  {
    Fs ant = d->conclusion.antecedent;
    ant.push_back(Formula::ldiv(d->conclusion.succedent, g.b));
    Instantiation inst;
    inst.principal = static_cast<int>(ant.size() - 1);
    inst.split_begin = 0;
    inst.split_end = inst.principal;
    d = make_derivation(g.seq(std::move(ant)), "\\L", {d, id_node(g.b)}, inst);
  }

  // \L ladder rebuilding Psi: ~> [1&G, Delta, Psi, Psi \ Phi^bb |- b]
  Formula folded = d->conclusion.antecedent.back();
  for (size_t i = 0; i < psi.size(); ++i) {
    Formula v = psi[i];
    Fs ant = d->conclusion.antecedent;
    ant.pop_back();
    ant.push_back(v);
    folded = Formula::ldiv(v, folded);
    ant.push_back(folded);
    Instantiation inst;
    inst.principal = static_cast<int>(ant.size() - 1);
    inst.split_begin = inst.principal.value() - 1;
    inst.split_end = inst.principal;
    d = make_derivation(g.seq(std::move(ant)), "\\L", {id_node(v), d}, inst);
  }

  // &L peeling at the last position: ~> [1&G, Delta, Psi, 1&G |- b]
  size_t mover = d->conclusion.antecedent.size() - 1;
  d = peel_from_conjunct(d, mover, conjunct_index, g);

  // Le walk back to the front: ~> [1&G, 1&G, Delta, Psi |- b]
  d = le_move_left(d, mover, 1, g);

  // De closes the doubling: ~> [1&G, Delta, Psi |- b]
  Fs ant(d->conclusion.antecedent.begin() + 1, d->conclusion.antecedent.end());
  Instantiation at;
  at.principal = 0;
  return make_derivation(g.seq(std::move(ant)), "De", {d}, at);
}

// Post-ish rotation: from [1&G, Delta1, Delta2 |- b] derive
// [1&G, Delta2, Delta1 |- b] by repeated lemma_g with Phi = Psi = q.
DerivationPtr postish_rotate(DerivationPtr d, const Fs& delta1, const Fs& delta2, const GContext& g) {
  if (delta1.empty()) return d;
  Formula q = delta1.front();
  Fs rest(delta1.begin() + 1, delta1.end());
  int cj = g.vocab_conjunct.at(q.var_name());
  d = lemma_g(d, {q}, {q}, fs_concat(rest, delta2), cj, g);
  return postish_rotate(d, rest, fs_concat(delta2, {q}), g);
}

}  // namespace

DerivationPtr synthesize_derivation(const MinskyMachine& m, const Configuration& start,
                                    const std::vector<int>& trace, const EncodingContext& ctx) {
  // replay the trace first; synthesis only makes sense along a real run
  std::vector<Configuration> configs = {start};
  for (int idx : trace) {
    if (idx < 0 || idx >= static_cast<int>(m.instructions.size()))
      throw TraceError("trace instruction index " + std::to_string(idx) + " out of range");
    auto next = apply_instruction(m.instructions[idx], configs.back());
    if (!next) throw TraceError("instruction " + std::to_string(idx) + " does not apply at step " +
                                std::to_string(configs.size() - 1));
    configs.push_back(*next);
  }
  if (!configs.back().is_final()) throw TraceError("trace does not end in the final configuration (L0,0,0)");

  GContext g(m, ctx);

  // base tree for (L0,0,0): \L ladder, &L peel, three Le moves
  Fs base_vars = {ctx.var_e1(), ctx.var_l(0), ctx.var_e2()};
  DerivationPtr d = fold_chain(base_vars, g);
  d = peel_from_conjunct(d, base_vars.size(), 0, g);
  d = le_move_left(d, base_vars.size(), 0, g);

  // one computation-step block per trace entry, last step first
  for (size_t t = trace.size(); t-- > 0;) {
    const Instruction& ins = m.instructions[static_cast<size_t>(trace[t])];
    const Configuration& c = configs[t];
    auto [psi, phi] = instruction_psi_phi(ins, ctx);

    Fs delta1, delta2;
    long long k1_left = c.k1, k2_right = c.k2;
    switch (ins.op) {
      case OpCode::Inc:
        break;
      case OpCode::Dec:
        (ins.reg == 1 ? k1_left : k2_right) -= 1;
        break;
      case OpCode::Jz:
        break;
    }
    if (ins.op == OpCode::Jz && ins.reg == 1) {
      // Psi = e1, l_i swallows the left edge marker
      delta1 = {};
    } else {
      delta1.push_back(ctx.var_e1());
      for (long long i = 0; i < k1_left; ++i) delta1.push_back(ctx.var_p1());
    }
    if (ins.op == OpCode::Jz && ins.reg == 2) {
      delta2 = {};
    } else {
      for (long long i = 0; i < k2_right; ++i) delta2.push_back(ctx.var_p2());
      delta2.push_back(ctx.var_e2());
    }

    assert(fs_concat(fs_concat(fs_concat({g.one_and_g}, delta1), phi), delta2) ==
           target_sequent(m, configs[t + 1], ctx).antecedent);

    // (*') -> rotate -> lemma for the instruction conjunct -> rotate -> (*)
    d = postish_rotate(d, delta1, fs_concat(phi, delta2), g);
    d = lemma_g(d, phi, psi, fs_concat(delta2, delta1), 1 + trace[t], g);
    d = postish_rotate(d, delta2, fs_concat(delta1, psi), g);

    assert(d->conclusion == target_sequent(m, c, ctx));
  }
  return d;
}

DerivationPtr lemma_g_fragment(const MinskyMachine& m, const EncodingContext& ctx, DerivationPtr premise,
                               const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                               const std::vector<Formula>& delta, int conjunct_index) {
  GContext g(m, ctx);
  if (conjunct_index < 0 || conjunct_index >= static_cast<int>(g.conjuncts.size()))
    throw MachineError("conjunct index out of range");
  if (!(g.conjuncts[static_cast<size_t>(conjunct_index)] == fold_backslash(psi, double_neg_b(phi, ctx))))
    throw MachineError("conjunct at that index is not Psi \\ Phi^bb for the given Phi, Psi");
  return lemma_g(std::move(premise), phi, psi, delta, conjunct_index, g);
}

// ---------------------------------------------------------------------------
// Machine files
// ---------------------------------------------------------------------------

MinskyMachine machine_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int states = j.at("states").get<int>();
  if (states < 1) throw MachineError("a machine needs at least the final state L0");
  std::vector<RawInstruction> raw;
  for (const auto& ji : j.at("instructions")) {
    RawInstruction r;
    r.op = ji.at("op").get<std::string>();
    r.from = ji.at("from").get<int>();
    r.reg = ji.at("reg").get<int>();
    r.to = ji.at("to").get<int>();
    if (ji.contains("to2")) r.to2 = ji["to2"].get<int>();
    raw.push_back(std::move(r));
  }
  return translate_jzdec(states, raw);
}

std::string machine_to_json(const MinskyMachine& m) {
  nlohmann::json j;
  j["states"] = m.state_count;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ins : m.instructions) {
    const char* op = ins.op == OpCode::Inc ? "inc" : ins.op == OpCode::Dec ? "dec" : "jz";
    arr.push_back({{"op", op}, {"from", ins.from}, {"reg", ins.reg}, {"to", ins.to}});
  }
  j["instructions"] = arr;
  return j.dump(2);
}

}  // namespace lambek
