#include "lambek/prover.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace lambek {

namespace {

struct BudgetExhaustedEx {};

bool invertible_rule(const std::string& rule) {
  return rule == "|L" || rule == "&R" || rule == "\\R" || rule == "/R" || rule == "*L";
}

void maybe_prioritize(std::vector<Expansion>& exps, const SearchOptions& opts) {
  if (!opts.prioritize_invertible) return;
  std::stable_partition(exps.begin(), exps.end(), [](const Expansion& e) { return invertible_rule(e.rule); });
}

// Exhaustive memoized search for the size-decreasing calculi. Every
// expansion strictly shrinks total symbol count, so recursion is
// well-founded and negative answers are definitive.
class DecidableSearch {
 public:
  DecidableSearch(CalculusId id, const SearchBudget& budget, const SearchOptions& opts)
      : id_(id), budget_(budget), opts_(opts) {}

  DerivationPtr prove(const Sequent& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (++nodes_ > budget_.max_nodes) throw BudgetExhaustedEx{};
    auto exps = backward_expand(s, id_);
    maybe_prioritize(exps, opts_);
    DerivationPtr found;
    for (auto& e : exps) {
      std::vector<DerivationPtr> subs;
      subs.reserve(e.premises.size());
      bool ok = true;
      for (auto& p : e.premises) {
        DerivationPtr sub = prove(p);
        if (!sub) {
          ok = false;
          break;
        }
        subs.push_back(std::move(sub));
      }
      if (ok) {
        found = make_derivation(s, e.rule, std::move(subs), e.inst);
        break;
      }
    }
    memo_.emplace(s, found);
    return found;
  }

  long long nodes() const { return nodes_; }

 private:
  CalculusId id_;
  const SearchBudget& budget_;
  const SearchOptions& opts_;
  long long nodes_ = 0;
  std::unordered_map<Sequent, DerivationPtr, SequentHash> memo_;  // null = not derivable
};

// Budgeted semi-decision for L+eps. Le/Re preserve and De grows sequent
// size, so the search is capped: De per branch, recursion depth, repeated
// sequents on the current path. Failures reached without hitting any cap
// are cached as absolute; capped failures are cached per remaining budget.
class EpsSearch {
 public:
  EpsSearch(const SearchBudget& budget, const SearchOptions& opts) : budget_(budget), opts_(opts) {}

  DerivationPtr prove(const Sequent& s, int depth_left, int deps_left) {
    bool clean = true;
    return prove_rec(s, depth_left, deps_left, clean);
  }

  long long nodes() const { return nodes_; }
  bool depth_capped() const { return depth_capped_; }
  bool deps_capped() const { return deps_capped_; }

 private:
  DerivationPtr prove_rec(const Sequent& s, int depth_left, int deps_left, bool& clean) {
    if (auto it = proven_.find(s); it != proven_.end()) return it->second;
    if (failed_clean_.contains(s)) return nullptr;
    if (auto it = failed_capped_.find(s); it != failed_capped_.end()) {
      for (auto& [deps, depth] : it->second)
        if (deps >= deps_left && depth >= depth_left) {
          clean = false;
          return nullptr;
        }
    }
    if (on_path_.contains(s)) {
      // a minimal proof never repeats a sequent along a branch
      clean = false;
      return nullptr;
    }
    if (depth_left <= 0) {
      depth_capped_ = true;
      clean = false;
      return nullptr;
    }
    if (++nodes_ > budget_.max_nodes) throw BudgetExhaustedEx{};

    on_path_.insert(s);
    auto exps = backward_expand(s, CalculusId::LPLUSEPS);
    maybe_prioritize(exps, opts_);
    DerivationPtr found;
    bool subtree_clean = true;
    for (auto& e : exps) {
      int deps_cost = e.rule == "De" ? 1 : 0;
      if (deps_cost > 0 && deps_left <= 0) {
        deps_capped_ = true;
        subtree_clean = false;
        continue;
      }
      std::vector<DerivationPtr> subs;
      subs.reserve(e.premises.size());
      bool ok = true;
      for (auto& p : e.premises) {
        DerivationPtr sub = prove_rec(p, depth_left - 1, deps_left - deps_cost, subtree_clean);
        if (!sub) {
          ok = false;
          break;
        }
        subs.push_back(std::move(sub));
      }
      if (ok) {
        found = make_derivation(s, e.rule, std::move(subs), e.inst);
        break;
      }
    }
    on_path_.erase(s);

    if (found) {
      proven_.emplace(s, found);
    } else if (subtree_clean) {
      if (failed_clean_.size() < kMaxCacheEntries) failed_clean_.insert(s);
    } else {
      // caches are an optimization; cap them so a budget-bound search
      // cannot exhaust memory
      if (failed_capped_.size() < kMaxCacheEntries) {
        auto& entries = failed_capped_[s];
        if (entries.size() < 4) entries.push_back({deps_left, depth_left});
      }
      clean = false;
    }
    return found;
  }

  static constexpr size_t kMaxCacheEntries = 2'000'000;

  const SearchBudget& budget_;
  const SearchOptions& opts_;
  long long nodes_ = 0;
  bool depth_capped_ = false;
  bool deps_capped_ = false;
  std::unordered_map<Sequent, DerivationPtr, SequentHash> proven_;
  std::unordered_set<Sequent, SequentHash> failed_clean_;
  std::unordered_map<Sequent, std::vector<std::pair<int, int>>, SequentHash> failed_capped_;
  std::unordered_set<Sequent, SequentHash> on_path_;
};

}  // namespace

ProofResult decide(const Sequent& s0, CalculusId id, const SearchBudget& budget, const SearchOptions& opts) {
  if (id == CalculusId::MALC_D)
    throw std::invalid_argument("MALC+D keeps Cut, so backward search does not terminate; "
                                "derivations are checked, not searched for");
  require_in_language(s0, id);
  Sequent s = canonical_sequent(s0, id);

  if (id == CalculusId::LPLUSEPS) {
    EpsSearch search(budget, opts);
    BudgetReport report;
    try {
      DerivationPtr d = search.prove(s, budget.max_depth, budget.max_deps);
      report.nodes_used = search.nodes();
      report.depth_capped = search.depth_capped();
      report.deps_capped = search.deps_capped();
      if (d) return ProofResult::make_derivable(std::move(d), report);
      return ProofResult::make_unknown(report);
    } catch (const BudgetExhaustedEx&) {
      report.nodes_used = budget.max_nodes;
      report.nodes_exhausted = true;
      return ProofResult::make_unknown(report);
    }
  }

  DecidableSearch search(id, budget, opts);
  BudgetReport report;
  try {
    DerivationPtr d = search.prove(s);
    report.nodes_used = search.nodes();
    if (d) return ProofResult::make_derivable(std::move(d), report);
    return ProofResult::make_not_derivable(report);
  } catch (const BudgetExhaustedEx&) {
    report.nodes_used = budget.max_nodes;
    report.nodes_exhausted = true;
    return ProofResult::make_unknown(report);
  }
}

namespace {

struct DisjParts {
  Formula x, y, z, w, xy, xz, a, b, d0, f1, f3, goal_suc;
};

DisjParts disj_parts() {
  Formula x = Formula::var("x"), y = Formula::var("y"), z = Formula::var("z"), w = Formula::var("w");
  Formula xy = Formula::rdiv(x, y), xz = Formula::rdiv(x, z);
  Formula a = Formula::join(xy, w), b = Formula::join(xz, w);
  Formula d0 = Formula::join(Formula::join(xy, xz), w);
  return DisjParts{x,  y,  z,  w,  xy, xz, a, b, d0, Formula::rdiv(a, d0), Formula::ldiv(a, b),
                   Formula::join(Formula::rdiv(x, Formula::join(y, z)), w)};
}

DerivationPtr require_derivable(const Sequent& s, CalculusId id) {
  ProofResult r = decide(s, id);
  if (!r.derivable())
    throw AssemblyError("expected '" + render(s) + "' to be derivable in " + to_string(id));
  return r.derivation();
}

}  // namespace

Sequent disjunction_counterexample_sequent() {
  DisjParts p = disj_parts();
  return Sequent{{p.f1, p.a, p.f3}, p.goal_suc};
}

Sequent distributivity_sequent() { return parse_sequent("(x|z)&(y|z) |- (x&y)|z"); }

Sequent unit_counterexample_sequent() { return parse_sequent("1/p, 1/p |- 1/p"); }

DerivationPtr derive_disj_in_malc_d() {
  DisjParts p = disj_parts();
  const std::vector<Formula> ant = {p.f1, p.a, p.f3};

  // A/(A|B)', A, A\B |- A and |- B, found by cut-free MALC search
  DerivationPtr d_a = require_derivable(Sequent{ant, p.a}, CalculusId::MALC);
  DerivationPtr d_b = require_derivable(Sequent{ant, p.b}, CalculusId::MALC);
  Formula a_and_b = Formula::meet(p.a, p.b);
  DerivationPtr d_meet = make_derivation(Sequent{ant, a_and_b}, "&R", {d_a, d_b});

  // distributivity axiom instance ((x/y)|w)&((x/z)|w) |- ((x/y)&(x/z))|w
  Formula meet_div = Formula::meet(p.xy, p.xz);
  Formula mid = Formula::join(meet_div, p.w);
  DerivationPtr d_axiom = make_derivation(Sequent{{a_and_b}, mid}, "D", {});

  Instantiation cut1;
  cut1.cut_formula = a_and_b;
  DerivationPtr d_cut1 = make_derivation(Sequent{ant, mid}, "Cut", {d_meet, d_axiom}, cut1);

  // ((x/y)&(x/z))|w |- (x/(y|z))|w via |L over a prover-found equivalence half
  DerivationPtr d_equiv =
      require_derivable(Sequent{{meet_div}, Formula::rdiv(p.x, Formula::join(p.y, p.z))}, CalculusId::MALC);
  DerivationPtr d_left = make_derivation(Sequent{{meet_div}, p.goal_suc}, "|Rl", {d_equiv});
  DerivationPtr d_w_ax = make_derivation(Sequent{{p.w}, p.w}, "Id", {});
  DerivationPtr d_right = make_derivation(Sequent{{p.w}, p.goal_suc}, "|Rr", {d_w_ax});
  DerivationPtr d_bridge = make_derivation(Sequent{{mid}, p.goal_suc}, "|L", {d_left, d_right});

  Instantiation cut2;
  cut2.cut_formula = mid;
  return make_derivation(disjunction_counterexample_sequent(), "Cut", {d_cut1, d_bridge}, cut2);
}

}  // namespace lambek
