#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lambek/formula.hpp"

namespace lambek {

enum class CalculusId { L, LSTAR, MALC, MALCSTAR, AMALCSTAR, ILL, IAL, L1, LPLUSEPS, MALC_D };

std::string to_string(CalculusId id);
std::optional<CalculusId> calculus_from_string(std::string_view name);
const std::vector<CalculusId>& all_calculi();

/// ILL and IAL read antecedents as multisets.
bool is_commutative(CalculusId id);
/// L, MALC and MALC+D require every sequent in a derivation to have a
/// non-empty antecedent.
bool has_lambek_restriction(CalculusId id);
/// True iff every connective in f belongs to the calculus language.
bool formula_in_language(Formula f, CalculusId id);
/// Throws std::invalid_argument if the sequent uses connectives outside the
/// calculus language.
void require_in_language(const Sequent& s, CalculusId id);

struct RuleSchema {
  std::string id;
  int arity;
  std::vector<std::string> side_conditions;
  bool size_decreasing;
};

/// The exact rule inventory of a calculus, axioms included.
std::vector<RuleSchema> rule_set(CalculusId id);

/// Split points / principal positions recorded when a rule instance needs
/// them; check_derivation matches existentially and treats this as a hint.
struct Instantiation {
  std::optional<int> principal;     // antecedent index of the principal formula
  std::optional<int> split_begin;   // Pi segment [split_begin, split_end)
  std::optional<int> split_end;
  std::optional<Formula> cut_formula;
};

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent conclusion;
  std::string rule;
  Instantiation inst;
  std::vector<DerivationPtr> premises;
};

DerivationPtr make_derivation(Sequent conclusion, std::string rule, std::vector<DerivationPtr> premises,
                              Instantiation inst = {});
int derivation_node_count(const Derivation& d);

struct Expansion {
  std::string rule;
  std::vector<Sequent> premises;
  Instantiation inst;
};

/// All legal backward rule instances whose conclusion matches the sequent,
/// each exactly once. Cut is never enumerated (checker-only, MALC+D). For
/// ILL/IAL the antecedent is treated as a multiset; callers should pass a
/// canonically sorted antecedent to avoid duplicate instances.
std::vector<Expansion> backward_expand(const Sequent& s, CalculusId id);

/// Canonical form for prover keys: commutative calculi get a sorted
/// antecedent (and RDiv rewritten to LDiv); others are returned unchanged.
Sequent canonical_sequent(const Sequent& s, CalculusId id);

struct CheckOptions {
  /// Accept zero-premise "Hyp" leaves; used to validate derivation fragments
  /// whose premises are supplied as stubs.
  bool allow_hypotheses = false;
};

struct CheckReport {
  bool valid = true;
  std::vector<int> path;  // child indices from the root to the first bad node
  std::string reason;
};

/// Accepts iff every node is a correct instance of a rule of the calculus,
/// side conditions included. The report pinpoints the first failing node.
CheckReport check_derivation(const Derivation& d, CalculusId id, const CheckOptions& opts = {});

std::string derivation_to_json(const Derivation& d);
DerivationPtr derivation_from_json(const std::string& text);
/// Indented human-readable proof tree.
std::string render_tree(const Derivation& d);

}  // namespace lambek
