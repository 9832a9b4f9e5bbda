#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambek/calculi.hpp"
#include "lambek/formula.hpp"

namespace lambek {

struct MachineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OpCode { Inc, Dec, Jz };

/// INC always applies; DEC needs the counter positive; JZ needs it zero.
/// Both failures simply block the step (non-determinism compensates).
struct Instruction {
  OpCode op;
  int from;    // state index
  int reg;     // 1 or 2
  int to;      // state index
  bool operator==(const Instruction&) const = default;
};

/// Non-deterministic two-counter machine with states L0..Ln; (L0,0,0) is
/// the final configuration.
struct MinskyMachine {
  int state_count = 1;
  std::vector<Instruction> instructions;
};

struct Configuration {
  int state = 0;
  long long k1 = 0, k2 = 0;
  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;
  bool is_final() const { return state == 0 && k1 == 0 && k2 == 0; }
};

/// Raw program entry; "jzdec" is the compound branching instruction of the
/// original formalism, expanded by translate_jzdec.
struct RawInstruction {
  std::string op;  // "inc" | "dec" | "jz" | "jzdec"
  int from = 0;
  int reg = 1;
  int to = 0;
  std::optional<int> to2;  // jzdec only
};

/// Expands each jzdec(i,r,j1,j2) into the pair dec(i,r,j1), jz(i,r,j2);
/// plain instructions pass through in order.
MinskyMachine translate_jzdec(int state_count, const std::vector<RawInstruction>& raw);

std::set<Configuration> simulate_step(const MinskyMachine& m, const Configuration& c);

struct ReachResult {
  bool reached = false;
  std::vector<int> trace;  // instruction indices, in execution order
};

/// Breadth-first search with counters capped at counter_cap and at most
/// step_cap steps. A negative answer is evidence only, not a proof.
ReachResult reach_final(const MinskyMachine& m, const Configuration& start, long long counter_cap = 64,
                        long long step_cap = 100000);

/// Variable names used by the encoding; b is the relative-falsity variable
/// and stays outside the encoded vocabulary V = {e1,e2,p1,p2,l0..ln}.
struct EncodingContext {
  std::string e1 = "e1", e2 = "e2", p1 = "p1", p2 = "p2";
  std::string l_prefix = "l";
  std::string b = "b";

  Formula var_e1() const { return Formula::var(e1); }
  Formula var_e2() const { return Formula::var(e2); }
  Formula var_p1() const { return Formula::var(p1); }
  Formula var_p2() const { return Formula::var(p2); }
  Formula var_l(int i) const { return Formula::var(l_prefix + std::to_string(i)); }
  Formula var_b() const { return Formula::var(b); }
  /// e1, e2, p1, p2, l0..ln — the fixed conjunct order of G's (q\q^bb) tail.
  std::vector<Formula> vocabulary(int state_count) const;
};

/// Phi \ C = A_m\(A_{m-1}\...(A_1\C)...). Phi must be non-empty.
Formula fold_backslash(const std::vector<Formula>& phi, Formula c);
/// Phi^{bb} = (Phi \ b) \ b, the relative double negation.
Formula double_neg_b(const std::vector<Formula>& phi, const EncodingContext& ctx);
/// The encoding A_I = Psi \ Phi^{bb} of one instruction.
Formula instruction_formula(const Instruction& ins, const EncodingContext& ctx);
/// e1, p1 x k1, l_i, p2 x k2, e2.
std::vector<Formula> encode_config(const Configuration& c, const EncodingContext& ctx);
/// G = ((e1,l0,e2)\b) & each A_I & each q\q^bb, right-nested, in the fixed
/// order: termination conjunct, instructions in program order, vocabulary.
Formula machine_formula(const MinskyMachine& m, const EncodingContext& ctx);
/// 1&G, <encoded configuration> |- b.
Sequent target_sequent(const MinskyMachine& m, const Configuration& c, const EncodingContext& ctx);

struct TraceError : MachineError {
  using MachineError::MachineError;
};

/// Builds the L+eps derivation of target_sequent(m, start) promised by the
/// forward encoding: the base tree for (L0,0,0) on top, one computation-step
/// block per trace entry below it. The trace must replay from start to
/// (L0,0,0); the result passes check_derivation(-, LPLUSEPS).
DerivationPtr synthesize_derivation(const MinskyMachine& m, const Configuration& start,
                                    const std::vector<int>& trace, const EncodingContext& ctx);

/// The key-lemma step in isolation: from a derivation (possibly a "Hyp"
/// stub) of 1&G, Phi, Delta |- b builds the derivation of
/// 1&G, Delta, Psi |- b through the conjunct G_{Phi,Psi} sitting at
/// conjunct_index inside G (0 = termination conjunct, then instructions,
/// then the vocabulary tail).
DerivationPtr lemma_g_fragment(const MinskyMachine& m, const EncodingContext& ctx, DerivationPtr premise,
                               const std::vector<Formula>& phi, const std::vector<Formula>& psi,
                               const std::vector<Formula>& delta, int conjunct_index);

/// Machine file schema: {"states": n+1, "instructions": [{"op": "inc"|
/// "dec"|"jz"|"jzdec", "from": i, "reg": 1|2, "to": j, "to2": j2}]}
MinskyMachine machine_from_json(const std::string& text);
std::string machine_to_json(const MinskyMachine& m);

}  // namespace lambek
