#pragma once

#include <stdexcept>

#include "lambek/calculi.hpp"

namespace lambek {

struct SearchBudget {
  long long max_nodes = 5'000'000;
  int max_depth = 200;  // only consulted by the L+eps search
  int max_deps = 6;     // De applications per branch
};

struct BudgetReport {
  long long nodes_used = 0;
  bool nodes_exhausted = false;
  bool depth_capped = false;
  bool deps_capped = false;
};

class ProofResult {
 public:
  enum class Kind { Derivable, NotDerivable, Unknown };

  static ProofResult make_derivable(DerivationPtr d, BudgetReport r) {
    return ProofResult(Kind::Derivable, std::move(d), r);
  }
  static ProofResult make_not_derivable(BudgetReport r) { return ProofResult(Kind::NotDerivable, nullptr, r); }
  static ProofResult make_unknown(BudgetReport r) { return ProofResult(Kind::Unknown, nullptr, r); }

  Kind kind() const { return kind_; }
  bool derivable() const { return kind_ == Kind::Derivable; }
  bool not_derivable() const { return kind_ == Kind::NotDerivable; }
  bool unknown() const { return kind_ == Kind::Unknown; }
  /// Non-null exactly when derivable.
  const DerivationPtr& derivation() const { return derivation_; }
  const BudgetReport& report() const { return report_; }

 private:
  ProofResult(Kind k, DerivationPtr d, BudgetReport r) : kind_(k), derivation_(std::move(d)), report_(r) {}
  Kind kind_;
  DerivationPtr derivation_;
  BudgetReport report_;
};

struct SearchOptions {
  /// Explore invertible rules (|L, &R, \R, /R, *L) first. Off by default;
  /// changes node counts, never verdicts.
  bool prioritize_invertible = false;
};

/// Backward proof search. Total for the size-decreasing calculi (L .. IAL,
/// L1): Derivable with a checkable derivation, or NotDerivable; the node
/// budget may still abort with Unknown. For LPLUSEPS the answer is Derivable
/// or Unknown, never NotDerivable. MALC_D is rejected (Cut makes backward
/// search non-terminating; its derivations are assembled, not searched for).
/// For ILL/IAL the returned derivation is over the normalized sequent
/// (RDiv rewritten, antecedent canonically ordered).
ProofResult decide(const Sequent& s, CalculusId id, const SearchBudget& budget = {},
                   const SearchOptions& opts = {});

/// A required subgoal of a programmatic construction unexpectedly failed;
/// indicates a calculus-definition bug, not a user error.
struct AssemblyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Assembles the MALC+D derivation of disjunction_counterexample_sequent() from
/// prover-found MALC subderivations, one &R node, and two Cuts (one against
/// the distributivity axiom instance). The result passes
/// check_derivation(-, MALC_D).
DerivationPtr derive_disj_in_malc_d();

/// ((x/y)|w)/((x/y)|(x/z)|w), (x/y)|w, ((x/y)|w)\((x/z)|w) |- (x/(y|z))|w
Sequent disjunction_counterexample_sequent();
/// (x|z)&(y|z) |- (x&y)|z
Sequent distributivity_sequent();
/// 1/p, 1/p |- 1/p
Sequent unit_counterexample_sequent();

}  // namespace lambek
