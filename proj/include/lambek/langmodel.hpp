#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lambek/formula.hpp"
#include "lambek/reglang.hpp"

namespace lambek {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundVariableError : ModelError {
  using ModelError::ModelError;
};
struct UnitInEpsilonFreeError : ModelError {
  using ModelError::ModelError;
};
struct EmptyAntecedentError : ModelError {
  using ModelError::ModelError;
};

/// An L-model (EpsilonFree) or L-eps-model (WithEpsilon): a valuation of
/// variables by regular languages over a fixed alphabet.
struct ModelAssignment {
  Alphabet alphabet;
  Semantics semantics = Semantics::WithEpsilon;
  std::map<std::string, RegLang> valuation;
};

/// Recursive evaluation: Var by the valuation, 1 by {eps}, * by
/// concatenation, \ and / by the universal divisions, & by intersection,
/// | by union. EpsilonFree models reject the unit constant.
RegLang eval_formula(const ModelAssignment& model, Formula f);

/// Product of the antecedent values included in the succedent value; an
/// empty antecedent asks whether eps lies in the succedent value
/// (WithEpsilon only).
bool sequent_truth(const ModelAssignment& model, const Sequent& s);

enum class ModelClass { Plain, Monotone, Commutative, MonotoneCommutative };

/// Deterministic in seed. Monotone languages are monotone closures of
/// random automata; commutative ones are Boolean combinations of per-letter
/// "count mod m" / "count >= k" constraints (only ">= k" when monotonicity
/// is also required, keeping them upward closed). EpsilonFree variants
/// subtract {eps}.
ModelAssignment random_model(const Alphabet& alphabet, const std::vector<std::string>& variables,
                             uint64_t seed, ModelClass cls, Semantics semantics);

/// True iff every language of the valuation belongs to the class.
bool model_class_check(const ModelAssignment& model, LangClass which);

/// Model file schema:
/// {"alphabet": ["a","b"], "semantics": "eps"|"noeps",
///  "vars": {"p": {"regex": "..."} | {"automaton": {"states": N,
///          "initial": [..], "accepting": [..],
///          "transitions": [[from, "letter", to], ...]}}}}
ModelAssignment model_from_json(const std::string& text);
std::string model_to_json(const ModelAssignment& model);

/// Bounded refutation of sequent truth under the commutative (multiset)
/// product: folds mub_product_bounded over the antecedent values and hunts
/// for a word outside the succedent value. Returns the counter-word, or
/// empty optional when no refutation exists up to the bound. Never verifies.
std::optional<std::string> refute_commutative_bounded(const ModelAssignment& model, const Sequent& s,
                                                      int bound = 8);

}  // namespace lambek
