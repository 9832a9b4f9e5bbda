#include "lambek/calculi.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include <json.hpp>

namespace lambek {

namespace {

using Ant = std::vector<Formula>;

bool eps_shaped(Formula f) {
  // the commuting/doubling rules act on formulas of shape 1&G
  return f.tag() == Conn::Meet && f.left().tag() == Conn::Unit;
}

Ant without(const Ant& a, size_t k) {
  Ant out;
  out.reserve(a.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    if (i != k) out.push_back(a[i]);
  return out;
}

Ant replaced(const Ant& a, size_t k, std::initializer_list<Formula> repl) {
  Ant out;
  out.reserve(a.size() - 1 + repl.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (i == k)
      out.insert(out.end(), repl.begin(), repl.end());
    else
      out.push_back(a[i]);
  }
  return out;
}

Ant swapped(const Ant& a, size_t i, size_t j) {
  Ant out = a;
  std::swap(out[i], out[j]);
  return out;
}

Ant concat3(const Ant& a, size_t lo, size_t hi, std::initializer_list<Formula> mid) {
  // a[0,lo) ++ mid ++ a[hi,end)
  Ant out;
  out.reserve(a.size() - (hi - lo) + mid.size());
  out.insert(out.end(), a.begin(), a.begin() + lo);
  out.insert(out.end(), mid.begin(), mid.end());
  out.insert(out.end(), a.begin() + hi, a.end());
  return out;
}

Ant slice(const Ant& a, size_t lo, size_t hi) { return Ant(a.begin() + lo, a.begin() + hi); }

bool formula_less(const Formula& a, const Formula& b) { return (a <=> b) < 0; }

Ant sorted_multiset(Ant a) {
  std::sort(a.begin(), a.end(), formula_less);
  return a;
}

bool multiset_equal(const Ant& a, const Ant& b) {
  if (a.size() != b.size()) return false;
  return sorted_multiset(a) == sorted_multiset(b);
}

// removes one occurrence of f; false if absent
bool multiset_remove_one(Ant& a, Formula f) {
  auto it = std::find(a.begin(), a.end(), f);
  if (it == a.end()) return false;
  a.erase(it);
  return true;
}

}  // namespace

std::string to_string(CalculusId id) {
  switch (id) {
    case CalculusId::L: return "l";
    case CalculusId::LSTAR: return "lstar";
    case CalculusId::MALC: return "malc";
    case CalculusId::MALCSTAR: return "malcstar";
    case CalculusId::AMALCSTAR: return "amalcstar";
    case CalculusId::ILL: return "ill";
    case CalculusId::IAL: return "ial";
    case CalculusId::L1: return "l1";
    case CalculusId::LPLUSEPS: return "lpluseps";
    case CalculusId::MALC_D: return "malc_d";
  }
  return "?";
}

std::optional<CalculusId> calculus_from_string(std::string_view name) {
  for (CalculusId id : all_calculi())
    if (to_string(id) == name) return id;
  return std::nullopt;
}

const std::vector<CalculusId>& all_calculi() {
  static const std::vector<CalculusId> ids = {
      CalculusId::L,         CalculusId::LSTAR, CalculusId::MALC, CalculusId::MALCSTAR,
      CalculusId::AMALCSTAR, CalculusId::ILL,   CalculusId::IAL,  CalculusId::L1,
      CalculusId::LPLUSEPS,  CalculusId::MALC_D};
  return ids;
}

bool is_commutative(CalculusId id) { return id == CalculusId::ILL || id == CalculusId::IAL; }

bool has_lambek_restriction(CalculusId id) {
  return id == CalculusId::L || id == CalculusId::MALC || id == CalculusId::MALC_D;
}

bool formula_in_language(Formula f, CalculusId id) {
  bool additive = false, unit = false, prod = true, rdiv = true;
  switch (id) {
    case CalculusId::L:
    case CalculusId::LSTAR:
      break;
    case CalculusId::MALC:
    case CalculusId::MALCSTAR:
    case CalculusId::AMALCSTAR:
    case CalculusId::MALC_D:
      additive = true;
      break;
    case CalculusId::ILL:
    case CalculusId::IAL:
      additive = true;  // RDiv accepted on intake, normalized to LDiv
      break;
    case CalculusId::L1:
      unit = true;
      break;
    case CalculusId::LPLUSEPS:
      additive = true;
      unit = true;
      prod = false;
      rdiv = false;
      break;
  }
  switch (f.tag()) {
    case Conn::Var: return true;
    case Conn::Unit: return unit;
    case Conn::Prod:
      if (!prod) return false;
      break;
    case Conn::RDiv:
      if (!rdiv) return false;
      break;
    case Conn::LDiv:
      break;
    case Conn::Meet:
      if (!additive) return false;
      break;
    case Conn::Join:
      if (!additive || id == CalculusId::LPLUSEPS) return false;
      break;
  }
  return formula_in_language(f.left(), id) && formula_in_language(f.right(), id);
}

void require_in_language(const Sequent& s, CalculusId id) {
  for (const auto& f : s.antecedent)
    if (!formula_in_language(f, id))
      throw std::invalid_argument("formula '" + render(f) + "' outside the language of " + to_string(id));
  if (!formula_in_language(s.succedent, id))
    throw std::invalid_argument("formula '" + render(s.succedent) + "' outside the language of " + to_string(id));
}

std::vector<RuleSchema> rule_set(CalculusId id) {
  const bool restricted = has_lambek_restriction(id);
  std::vector<RuleSchema> rules;
  auto add = [&](std::string name, int arity, std::vector<std::string> conds, bool dec) {
    rules.push_back(RuleSchema{std::move(name), arity, std::move(conds), dec});
  };

  if (id == CalculusId::LPLUSEPS) {
    add("Id", 0, {}, true);
    add("1", 0, {"axiom A, 1 |- A"}, true);
    add("\\L", 2, {}, true);
    add("\\R", 1, {}, true);
    add("&Ll", 1, {}, true);
    add("&Lr", 1, {}, true);
    add("&R", 2, {}, true);
    add("Le", 1, {"moved formula has shape 1&G"}, false);
    add("Re", 1, {"moved formula has shape 1&G"}, false);
    add("De", 1, {"duplicated formula has shape 1&G"}, false);
    return rules;
  }

  if (is_commutative(id)) {
    if (id == CalculusId::ILL)
      add("Id", 0, {"axiom p |- p for variables only"}, true);
    else
      add("Id", 0, {"axiom Gamma, p |- p (weakening hidden in axioms)"}, true);
    add("\\L", 2, {}, true);
    add("\\R", 1, {}, true);
    add("*L", 1, {}, true);
    add("*R", 2, {}, true);
    add("|L", 2, {}, true);
    add("|Rl", 1, {}, true);
    add("|Rr", 1, {}, true);
    add("&Ll", 1, {}, true);
    add("&Lr", 1, {}, true);
    add("&R", 2, {}, true);
    return rules;
  }

  std::vector<std::string> pi_cond = restricted ? std::vector<std::string>{"Pi is non-empty"} : std::vector<std::string>{};
  add("Id", 0, {}, true);
  add("\\L", 2, pi_cond, true);
  add("\\R", 1, pi_cond, true);
  add("/L", 2, pi_cond, true);
  add("/R", 1, pi_cond, true);
  add("*L", 1, {}, true);
  add("*R", 2, restricted ? std::vector<std::string>{"both split parts non-empty"} : std::vector<std::string>{}, true);
  if (id == CalculusId::MALC || id == CalculusId::MALCSTAR || id == CalculusId::AMALCSTAR ||
      id == CalculusId::MALC_D) {
    add("|L", 2, {}, true);
    add("|Rl", 1, {}, true);
    add("|Rr", 1, {}, true);
    add("&Ll", 1, {}, true);
    add("&Lr", 1, {}, true);
    add("&R", 2, {}, true);
  }
  if (id == CalculusId::AMALCSTAR) add("W", 1, {}, true);
  if (id == CalculusId::L1) {
    add("1L", 1, {}, true);
    add("1R", 0, {"axiom |- 1"}, true);
  }
  if (id == CalculusId::MALC_D) {
    add("D", 0, {"axiom scheme (A|C)&(B|C) |- (A&B)|C"}, true);
    add("Cut", 2, {}, false);
  }
  return rules;
}

Sequent canonical_sequent(const Sequent& s, CalculusId id) {
  if (!is_commutative(id)) return s;
  Sequent n = normalize_commutative(s);
  std::sort(n.antecedent.begin(), n.antecedent.end(), formula_less);
  return n;
}

// ---------------------------------------------------------------------------
// Backward expansion
// ---------------------------------------------------------------------------

namespace {

// Enumerates distinct multiset splits (as sorted vectors) of a sorted vector.
void multiset_splits(const Ant& sorted, std::vector<std::pair<Ant, Ant>>& out) {
  // group equal elements, then choose how many of each go left
  std::vector<std::pair<Formula, int>> groups;
  for (const auto& f : sorted) {
    if (!groups.empty() && groups.back().first == f)
      ++groups.back().second;
    else
      groups.emplace_back(f, 1);
  }
  Ant left, right;
  auto rec = [&](auto&& self, size_t gi) -> void {
    if (gi == groups.size()) {
      out.emplace_back(left, right);
      return;
    }
    auto [f, cnt] = groups[gi];
    for (int take = 0; take <= cnt; ++take) {
      for (int i = 0; i < take; ++i) left.push_back(f);
      for (int i = 0; i < cnt - take; ++i) right.push_back(f);
      self(self, gi + 1);
      for (int i = 0; i < take; ++i) left.pop_back();
      for (int i = 0; i < cnt - take; ++i) right.pop_back();
    }
  };
  rec(rec, 0);
}

void expand_noncommutative(const Sequent& s, CalculusId id, std::vector<Expansion>& out) {
  const Ant& ant = s.antecedent;
  const Formula suc = s.succedent;
  const size_t n = ant.size();
  const bool restricted = has_lambek_restriction(id);
  const bool additives = id == CalculusId::MALC || id == CalculusId::MALCSTAR ||
                         id == CalculusId::AMALCSTAR || id == CalculusId::MALC_D;
  const bool eps = id == CalculusId::LPLUSEPS;
  const bool rdiv_rules = !eps;
  const bool prod_rules = !eps;

  // Under the Lambek restriction every sequent of a derivation has a
  // non-empty antecedent, so an empty-antecedent goal has no expansions.
  if (restricted && ant.empty()) return;

  auto emit = [&](std::string rule, std::vector<Sequent> prem, Instantiation inst = {}) {
    if (restricted)
      for (const auto& p : prem)
        if (p.antecedent.empty()) return;
    out.push_back(Expansion{std::move(rule), std::move(prem), inst});
  };

  // axioms
  if (n == 1 && ant[0] == suc) emit("Id", {});
  if (eps && n == 2 && ant[0] == suc && ant[1].tag() == Conn::Unit) emit("1", {});
  if (id == CalculusId::L1 && n == 0 && suc.tag() == Conn::Unit) emit("1R", {});
  if (id == CalculusId::MALC_D && n == 1 && ant[0].tag() == Conn::Meet) {
    Formula m = ant[0];
    if (m.left().tag() == Conn::Join && m.right().tag() == Conn::Join && suc.tag() == Conn::Join &&
        suc.left().tag() == Conn::Meet) {
      Formula a = m.left().left(), c1 = m.left().right(), b = m.right().left(), c2 = m.right().right();
      if (c1 == c2 && suc.left().left() == a && suc.left().right() == b && suc.right() == c1) emit("D", {});
    }
  }

  // right rules
  switch (suc.tag()) {
    case Conn::LDiv: {
      Ant prem = {suc.left()};
      prem.insert(prem.end(), ant.begin(), ant.end());
      emit("\\R", {Sequent{std::move(prem), suc.right()}});
      break;
    }
    case Conn::RDiv:
      if (rdiv_rules) {
        Ant prem = ant;
        prem.push_back(suc.right());
        emit("/R", {Sequent{std::move(prem), suc.left()}});
      }
      break;
    case Conn::Prod:
      if (prod_rules) {
        for (size_t i = 0; i <= n; ++i) {
          Instantiation inst;
          inst.split_begin = 0;
          inst.split_end = static_cast<int>(i);
          emit("*R", {Sequent{slice(ant, 0, i), suc.left()}, Sequent{slice(ant, i, n), suc.right()}}, inst);
        }
      }
      break;
    case Conn::Meet:
      if (additives || eps)
        emit("&R", {Sequent{ant, suc.left()}, Sequent{ant, suc.right()}});
      break;
    case Conn::Join:
      if (additives) {
        emit("|Rl", {Sequent{ant, suc.left()}});
        emit("|Rr", {Sequent{ant, suc.right()}});
      }
      break;
    default:
      break;
  }

  // left rules
  for (size_t k = 0; k < n; ++k) {
    const Formula f = ant[k];
    Instantiation at;
    at.principal = static_cast<int>(k);
    switch (f.tag()) {
      case Conn::LDiv:
        for (size_t j = 0; j <= k; ++j) {
          Instantiation inst = at;
          inst.split_begin = static_cast<int>(j);
          inst.split_end = static_cast<int>(k);
          emit("\\L",
               {Sequent{slice(ant, j, k), f.left()},
                Sequent{concat3(ant, j, k + 1, {f.right()}), suc}},
               inst);
        }
        break;
      case Conn::RDiv:
        if (rdiv_rules) {
          for (size_t m = k + 1; m <= n; ++m) {
            Instantiation inst = at;
            inst.split_begin = static_cast<int>(k + 1);
            inst.split_end = static_cast<int>(m);
            Ant ctx;  // Gamma ++ B ++ Delta with Pi = ant[k+1, m) removed
            ctx.reserve(n - (m - k) + 1);
            ctx.insert(ctx.end(), ant.begin(), ant.begin() + k);
            ctx.push_back(f.left());
            ctx.insert(ctx.end(), ant.begin() + m, ant.end());
            emit("/L", {Sequent{slice(ant, k + 1, m), f.right()}, Sequent{std::move(ctx), suc}}, inst);
          }
        }
        break;
      case Conn::Prod:
        if (prod_rules) emit("*L", {Sequent{replaced(ant, k, {f.left(), f.right()}), suc}}, at);
        break;
      case Conn::Meet:
        if (additives || eps) {
          emit("&Ll", {Sequent{replaced(ant, k, {f.left()}), suc}}, at);
          emit("&Lr", {Sequent{replaced(ant, k, {f.right()}), suc}}, at);
        }
        break;
      case Conn::Join:
        if (additives)
          emit("|L", {Sequent{replaced(ant, k, {f.left()}), suc}, Sequent{replaced(ant, k, {f.right()}), suc}},
               at);
        break;
      case Conn::Unit:
        if (id == CalculusId::L1) emit("1L", {Sequent{without(ant, k), suc}}, at);
        break;
      default:
        break;
    }
    if (id == CalculusId::AMALCSTAR) emit("W", {Sequent{without(ant, k), suc}}, at);
    if (eps && eps_shaped(f)) {
      if (k + 1 < n) emit("Le", {Sequent{swapped(ant, k, k + 1), suc}}, at);
      if (k > 0) emit("Re", {Sequent{swapped(ant, k - 1, k), suc}}, at);
      Ant dup;
      dup.reserve(n + 1);
      dup.insert(dup.end(), ant.begin(), ant.begin() + k);
      dup.push_back(f);
      dup.insert(dup.end(), ant.begin() + k, ant.end());
      emit("De", {Sequent{std::move(dup), suc}}, at);
    }
  }
}

void expand_commutative(const Sequent& s0, CalculusId id, std::vector<Expansion>& out) {
  // antecedent treated as a multiset; premises are emitted in sorted form
  Sequent s = canonical_sequent(s0, id);
  const Ant& ant = s.antecedent;
  const Formula suc = s.succedent;

  auto emit = [&](std::string rule, std::vector<Sequent> prem, Instantiation inst = {}) {
    for (auto& p : prem) std::sort(p.antecedent.begin(), p.antecedent.end(), formula_less);
    out.push_back(Expansion{std::move(rule), std::move(prem), inst});
  };

  // axioms: p |- p for ILL, Gamma, p |- p for IAL
  if (suc.tag() == Conn::Var) {
    bool hit = id == CalculusId::IAL ? std::find(ant.begin(), ant.end(), suc) != ant.end()
                                     : (ant.size() == 1 && ant[0] == suc);
    if (hit) emit("Id", {});
  }

  switch (suc.tag()) {
    case Conn::LDiv: {
      Ant prem = ant;
      prem.push_back(suc.left());
      emit("\\R", {Sequent{std::move(prem), suc.right()}});
      break;
    }
    case Conn::Prod: {
      std::vector<std::pair<Ant, Ant>> splits;
      multiset_splits(ant, splits);
      for (auto& [g, d] : splits)
        emit("*R", {Sequent{g, suc.left()}, Sequent{d, suc.right()}});
      break;
    }
    case Conn::Meet:
      emit("&R", {Sequent{ant, suc.left()}, Sequent{ant, suc.right()}});
      break;
    case Conn::Join:
      emit("|Rl", {Sequent{ant, suc.left()}});
      emit("|Rr", {Sequent{ant, suc.right()}});
      break;
    default:
      break;
  }

  for (size_t k = 0; k < ant.size(); ++k) {
    if (k > 0 && ant[k] == ant[k - 1]) continue;  // sorted: skip duplicate principals
    const Formula f = ant[k];
    Instantiation at;
    at.principal = static_cast<int>(k);
    switch (f.tag()) {
      case Conn::LDiv: {
        Ant rest = without(ant, k);
        std::vector<std::pair<Ant, Ant>> splits;
        multiset_splits(rest, splits);
        for (auto& [pi, gamma] : splits) {
          Ant right = gamma;
          right.push_back(f.right());
          emit("\\L", {Sequent{pi, f.left()}, Sequent{std::move(right), suc}}, at);
        }
        break;
      }
      case Conn::Prod:
        emit("*L", {Sequent{replaced(ant, k, {f.left(), f.right()}), suc}}, at);
        break;
      case Conn::Meet:
        emit("&Ll", {Sequent{replaced(ant, k, {f.left()}), suc}}, at);
        emit("&Lr", {Sequent{replaced(ant, k, {f.right()}), suc}}, at);
        break;
      case Conn::Join:
        emit("|L", {Sequent{replaced(ant, k, {f.left()}), suc}, Sequent{replaced(ant, k, {f.right()}), suc}},
             at);
        break;
      default:
        break;
    }
  }
}

}  // namespace

std::vector<Expansion> backward_expand(const Sequent& s, CalculusId id) {
  std::vector<Expansion> out;
  if (is_commutative(id))
    expand_commutative(s, id, out);
  else
    expand_noncommutative(s, id, out);
  return out;
}

// ---------------------------------------------------------------------------
// Derivation checking
// ---------------------------------------------------------------------------

DerivationPtr make_derivation(Sequent conclusion, std::string rule, std::vector<DerivationPtr> premises,
                              Instantiation inst) {
  return std::make_shared<Derivation>(
      Derivation{std::move(conclusion), std::move(rule), std::move(inst), std::move(premises)});
}

int derivation_node_count(const Derivation& d) {
  int n = 1;
  for (const auto& p : d.premises) n += derivation_node_count(*p);
  return n;
}

namespace {

struct NodeChecker {
  CalculusId id;
  bool commutative;

  // returns an error string, or empty if the node is a valid instance
  std::string validate(const Sequent& con, const std::string& rule, const std::vector<Sequent>& prem) const {
    if (commutative) return validate_multiset(con, rule, prem);
    return validate_ordered(con, rule, prem);
  }

  static std::string arity_error(const std::string& rule, size_t want, size_t got) {
    return "rule " + rule + " expects " + std::to_string(want) + " premises, got " + std::to_string(got);
  }

  std::string validate_ordered(const Sequent& con, const std::string& rule,
                               const std::vector<Sequent>& prem) const {
    const Ant& ant = con.antecedent;
    const Formula suc = con.succedent;
    const size_t n = ant.size();

    if (rule == "Id") {
      if (!prem.empty()) return arity_error(rule, 0, prem.size());
      if (n == 1 && ant[0] == suc) return {};
      return "not an instance of axiom A |- A";
    }
    if (rule == "1" && id == CalculusId::LPLUSEPS) {
      if (!prem.empty()) return arity_error(rule, 0, prem.size());
      if (n == 2 && ant[0] == suc && ant[1].tag() == Conn::Unit) return {};
      return "not an instance of axiom A, 1 |- A";
    }
    if (rule == "1R" && id == CalculusId::L1) {
      if (!prem.empty()) return arity_error(rule, 0, prem.size());
      if (n == 0 && suc.tag() == Conn::Unit) return {};
      return "not an instance of axiom |- 1";
    }
    if (rule == "D" && id == CalculusId::MALC_D) {
      if (!prem.empty()) return arity_error(rule, 0, prem.size());
      if (n == 1 && ant[0].tag() == Conn::Meet) {
        Formula m = ant[0];
        if (m.left().tag() == Conn::Join && m.right().tag() == Conn::Join && suc.tag() == Conn::Join &&
            suc.left().tag() == Conn::Meet) {
          Formula a = m.left().left(), c = m.left().right(), b = m.right().left(), c2 = m.right().right();
          if (c == c2 && suc.left().left() == a && suc.left().right() == b && suc.right() == c) return {};
        }
      }
      return "not an instance of the distributivity axiom scheme";
    }
    if (rule == "\\R") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (suc.tag() != Conn::LDiv) return "succedent is not of shape A\\B";
      Ant want = {suc.left()};
      want.insert(want.end(), ant.begin(), ant.end());
      if (prem[0].antecedent == want && prem[0].succedent == suc.right()) return {};
      return "premise does not match \\R";
    }
    if (rule == "/R") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (suc.tag() != Conn::RDiv) return "succedent is not of shape B/A";
      Ant want = ant;
      want.push_back(suc.right());
      if (prem[0].antecedent == want && prem[0].succedent == suc.left()) return {};
      return "premise does not match /R";
    }
    if (rule == "\\L") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      for (size_t k = 0; k < n; ++k) {
        if (ant[k].tag() != Conn::LDiv) continue;
        size_t m = prem[0].antecedent.size();
        if (m > k) continue;
        size_t j = k - m;
        if (prem[0].succedent != ant[k].left()) continue;
        if (!std::equal(prem[0].antecedent.begin(), prem[0].antecedent.end(), ant.begin() + j)) continue;
        Ant ctx = concat3(ant, j, k + 1, {ant[k].right()});
        if (prem[1].antecedent == ctx && prem[1].succedent == suc) return {};
      }
      return "premises do not match any \\L instance";
    }
    if (rule == "/L") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      for (size_t k = 0; k < n; ++k) {
        if (ant[k].tag() != Conn::RDiv) continue;
        size_t m = prem[0].antecedent.size();
        if (k + 1 + m > n) continue;
        if (prem[0].succedent != ant[k].right()) continue;
        if (!std::equal(prem[0].antecedent.begin(), prem[0].antecedent.end(), ant.begin() + k + 1)) continue;
        Ant ctx;
        ctx.insert(ctx.end(), ant.begin(), ant.begin() + k);
        ctx.push_back(ant[k].left());
        ctx.insert(ctx.end(), ant.begin() + k + 1 + m, ant.end());
        if (prem[1].antecedent == ctx && prem[1].succedent == suc) return {};
      }
      return "premises do not match any /L instance";
    }
    if (rule == "*L") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < n; ++k) {
        if (ant[k].tag() != Conn::Prod) continue;
        if (prem[0].antecedent == replaced(ant, k, {ant[k].left(), ant[k].right()}) &&
            prem[0].succedent == suc)
          return {};
      }
      return "premise does not match any *L instance";
    }
    if (rule == "*R") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      if (suc.tag() != Conn::Prod) return "succedent is not of shape A*B";
      size_t i = prem[0].antecedent.size();
      if (i <= n && prem[0].antecedent == slice(ant, 0, i) && prem[1].antecedent == slice(ant, i, n) &&
          prem[0].succedent == suc.left() && prem[1].succedent == suc.right())
        return {};
      return "premises do not match *R";
    }
    if (rule == "&Ll" || rule == "&Lr") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < n; ++k) {
        if (ant[k].tag() != Conn::Meet) continue;
        Formula piece = rule == "&Ll" ? ant[k].left() : ant[k].right();
        if (prem[0].antecedent == replaced(ant, k, {piece}) && prem[0].succedent == suc) return {};
      }
      return "premise does not match any " + rule + " instance";
    }
    if (rule == "&R") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      if (suc.tag() == Conn::Meet && prem[0].antecedent == ant && prem[1].antecedent == ant &&
          prem[0].succedent == suc.left() && prem[1].succedent == suc.right())
        return {};
      return "premises do not match &R";
    }
    if (rule == "|L") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      for (size_t k = 0; k < n; ++k) {
        if (ant[k].tag() != Conn::Join) continue;
        if (prem[0].antecedent == replaced(ant, k, {ant[k].left()}) &&
            prem[1].antecedent == replaced(ant, k, {ant[k].right()}) && prem[0].succedent == suc &&
            prem[1].succedent == suc)
          return {};
      }
      return "premises do not match any |L instance";
    }
    if (rule == "|Rl" || rule == "|Rr") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (suc.tag() != Conn::Join) return "succedent is not of shape A|B";
      Formula piece = rule == "|Rl" ? suc.left() : suc.right();
      if (prem[0].antecedent == ant && prem[0].succedent == piece) return {};
      return "premise does not match " + rule;
    }
    if (rule == "W" && id == CalculusId::AMALCSTAR) {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < n; ++k)
        if (prem[0].antecedent == without(ant, k) && prem[0].succedent == suc) return {};
      return "premise does not match any W instance";
    }
    if (rule == "1L" && id == CalculusId::L1) {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < n; ++k)
        if (ant[k].tag() == Conn::Unit && prem[0].antecedent == without(ant, k) && prem[0].succedent == suc)
          return {};
      return "premise does not match any 1L instance";
    }
    if (id == CalculusId::LPLUSEPS && (rule == "Le" || rule == "Re" || rule == "De")) {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (prem[0].succedent != suc) return "succedent changed";
      for (size_t k = 0; k < n; ++k) {
        if (!eps_shaped(ant[k])) continue;
        if (rule == "Le" && k + 1 < n && prem[0].antecedent == swapped(ant, k, k + 1)) return {};
        if (rule == "Re" && k > 0 && prem[0].antecedent == swapped(ant, k - 1, k)) return {};
        if (rule == "De") {
          Ant dup;
          dup.insert(dup.end(), ant.begin(), ant.begin() + k);
          dup.push_back(ant[k]);
          dup.insert(dup.end(), ant.begin() + k, ant.end());
          if (prem[0].antecedent == dup) return {};
        }
      }
      return "premise does not match any " + rule + " instance";
    }
    if (rule == "Cut" && id == CalculusId::MALC_D) {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      const Formula a = prem[0].succedent;
      if (prem[1].succedent != suc) return "right Cut premise succedent mismatch";
      const Ant& pa = prem[1].antecedent;
      for (size_t k = 0; k < pa.size(); ++k) {
        if (pa[k] != a) continue;
        Ant glued;
        glued.insert(glued.end(), pa.begin(), pa.begin() + k);
        glued.insert(glued.end(), prem[0].antecedent.begin(), prem[0].antecedent.end());
        glued.insert(glued.end(), pa.begin() + k + 1, pa.end());
        if (glued == ant) return {};
      }
      return "premises do not match any Cut instance";
    }
    return "rule " + rule + " is not part of " + to_string(id);
  }

  std::string validate_multiset(const Sequent& con0, const std::string& rule,
                                const std::vector<Sequent>& prem0) const {
    // normalize RDiv away, then match modulo multiset equality
    Sequent con = normalize_commutative(con0);
    std::vector<Sequent> prem;
    prem.reserve(prem0.size());
    for (const auto& p : prem0) prem.push_back(normalize_commutative(p));
    const Ant& ant = con.antecedent;
    const Formula suc = con.succedent;

    if (rule == "Id") {
      if (!prem.empty()) return arity_error(rule, 0, prem.size());
      if (suc.tag() != Conn::Var) return "axiom succedent must be a variable";
      if (id == CalculusId::ILL) {
        if (ant.size() == 1 && ant[0] == suc) return {};
        return "ILL axiom must be p |- p";
      }
      if (std::find(ant.begin(), ant.end(), suc) != ant.end()) return {};
      return "IAL axiom needs the succedent variable in the antecedent";
    }
    if (rule == "W" && id == CalculusId::IAL) {
      // admissible in IAL; accepted as a derived convenience rule
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (prem[0].succedent != suc) return "succedent changed";
      Ant rest = ant;
      for (const auto& f : prem[0].antecedent)
        if (!multiset_remove_one(rest, f)) return "premise is not a sub-multiset";
      if (rest.size() == 1) return {};
      return "W removes exactly one formula";
    }
    if (rule == "\\R") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (suc.tag() != Conn::LDiv) return "succedent is not of shape A\\B";
      Ant want = ant;
      want.push_back(suc.left());
      if (multiset_equal(prem[0].antecedent, want) && prem[0].succedent == suc.right()) return {};
      return "premise does not match \\R";
    }
    if (rule == "\\L") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      for (size_t k = 0; k < ant.size(); ++k) {
        if (ant[k].tag() != Conn::LDiv) continue;
        Formula a = ant[k].left(), b = ant[k].right();
        if (prem[0].succedent != a || prem[1].succedent != suc) continue;
        Ant gamma = prem[1].antecedent;
        if (!multiset_remove_one(gamma, b)) continue;
        Ant rebuilt = gamma;
        rebuilt.insert(rebuilt.end(), prem[0].antecedent.begin(), prem[0].antecedent.end());
        rebuilt.push_back(ant[k]);
        if (multiset_equal(rebuilt, ant)) return {};
      }
      return "premises do not match any \\L instance";
    }
    if (rule == "*L") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < ant.size(); ++k) {
        if (ant[k].tag() != Conn::Prod) continue;
        Ant want = without(ant, k);
        want.push_back(ant[k].left());
        want.push_back(ant[k].right());
        if (multiset_equal(prem[0].antecedent, want) && prem[0].succedent == suc) return {};
      }
      return "premise does not match any *L instance";
    }
    if (rule == "*R") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      if (suc.tag() != Conn::Prod) return "succedent is not of shape A*B";
      if (prem[0].succedent != suc.left() || prem[1].succedent != suc.right())
        return "premise succedents do not match *R";
      Ant both = prem[0].antecedent;
      both.insert(both.end(), prem[1].antecedent.begin(), prem[1].antecedent.end());
      if (multiset_equal(both, ant)) return {};
      return "premise antecedents do not split the conclusion";
    }
    if (rule == "&Ll" || rule == "&Lr") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      for (size_t k = 0; k < ant.size(); ++k) {
        if (ant[k].tag() != Conn::Meet) continue;
        Ant want = without(ant, k);
        want.push_back(rule == "&Ll" ? ant[k].left() : ant[k].right());
        if (multiset_equal(prem[0].antecedent, want) && prem[0].succedent == suc) return {};
      }
      return "premise does not match any " + rule + " instance";
    }
    if (rule == "&R") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      if (suc.tag() == Conn::Meet && multiset_equal(prem[0].antecedent, ant) &&
          multiset_equal(prem[1].antecedent, ant) && prem[0].succedent == suc.left() &&
          prem[1].succedent == suc.right())
        return {};
      return "premises do not match &R";
    }
    if (rule == "|L") {
      if (prem.size() != 2) return arity_error(rule, 2, prem.size());
      for (size_t k = 0; k < ant.size(); ++k) {
        if (ant[k].tag() != Conn::Join) continue;
        Ant wl = without(ant, k);
        wl.push_back(ant[k].left());
        Ant wr = without(ant, k);
        wr.push_back(ant[k].right());
        if (multiset_equal(prem[0].antecedent, wl) && multiset_equal(prem[1].antecedent, wr) &&
            prem[0].succedent == suc && prem[1].succedent == suc)
          return {};
      }
      return "premises do not match any |L instance";
    }
    if (rule == "|Rl" || rule == "|Rr") {
      if (prem.size() != 1) return arity_error(rule, 1, prem.size());
      if (suc.tag() != Conn::Join) return "succedent is not of shape A|B";
      Formula piece = rule == "|Rl" ? suc.left() : suc.right();
      if (multiset_equal(prem[0].antecedent, ant) && prem[0].succedent == piece) return {};
      return "premise does not match " + rule;
    }
    return "rule " + rule + " is not part of " + to_string(id);
  }
};

bool check_rec(const Derivation& d, const NodeChecker& checker, const CheckOptions& opts, CheckReport& report) {
  if (checker.id != CalculusId::ILL && checker.id != CalculusId::IAL) {
    for (const auto& f : d.conclusion.antecedent)
      if (!formula_in_language(f, checker.id)) {
        report = {false, {}, "formula '" + render(f) + "' outside the language of " + to_string(checker.id)};
        return false;
      }
    if (!formula_in_language(d.conclusion.succedent, checker.id)) {
      report = {false, {}, "succedent outside the language of " + to_string(checker.id)};
      return false;
    }
  }
  if (has_lambek_restriction(checker.id) && d.conclusion.antecedent.empty()) {
    report = {false, {}, "empty antecedent under Lambek's restriction"};
    return false;
  }
  if (d.rule == "Hyp") {
    if (opts.allow_hypotheses && d.premises.empty()) return true;
    report = {false, {}, opts.allow_hypotheses ? "Hyp node with premises" : "hypothesis leaves not allowed"};
    return false;
  }
  std::vector<Sequent> prem;
  prem.reserve(d.premises.size());
  for (const auto& p : d.premises) prem.push_back(p->conclusion);
  std::string err = checker.validate(d.conclusion, d.rule, prem);
  if (!err.empty()) {
    report = {false, {}, err + " (at '" + render(d.conclusion) + "')"};
    return false;
  }
  for (size_t i = 0; i < d.premises.size(); ++i) {
    if (!check_rec(*d.premises[i], checker, opts, report)) {
      report.path.insert(report.path.begin(), static_cast<int>(i));
      return false;
    }
  }
  return true;
}

}  // namespace

CheckReport check_derivation(const Derivation& d, CalculusId id, const CheckOptions& opts) {
  NodeChecker checker{id, is_commutative(id)};
  CheckReport report;
  if (!check_rec(d, checker, opts, report)) return report;
  return CheckReport{true, {}, ""};
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

nlohmann::json inst_to_json(const Instantiation& inst) {
  nlohmann::json j = nlohmann::json::object();
  if (inst.principal) j["principal"] = *inst.principal;
  if (inst.split_begin) j["split_begin"] = *inst.split_begin;
  if (inst.split_end) j["split_end"] = *inst.split_end;
  if (inst.cut_formula) j["cut"] = render(*inst.cut_formula);
  return j;
}

nlohmann::json derivation_to_json_rec(const Derivation& d) {
  nlohmann::json j;
  j["conclusion"] = render(d.conclusion);
  j["rule"] = d.rule;
  nlohmann::json inst = inst_to_json(d.inst);
  if (!inst.empty()) j["instantiation"] = inst;
  nlohmann::json prem = nlohmann::json::array();
  for (const auto& p : d.premises) prem.push_back(derivation_to_json_rec(*p));
  j["premises"] = prem;
  return j;
}

DerivationPtr derivation_from_json_rec(const nlohmann::json& j) {
  Sequent con = parse_sequent(j.at("conclusion").get<std::string>());
  std::string rule = j.at("rule").get<std::string>();
  Instantiation inst;
  if (j.contains("instantiation")) {
    const auto& ji = j["instantiation"];
    if (ji.contains("principal")) inst.principal = ji["principal"].get<int>();
    if (ji.contains("split_begin")) inst.split_begin = ji["split_begin"].get<int>();
    if (ji.contains("split_end")) inst.split_end = ji["split_end"].get<int>();
    if (ji.contains("cut")) inst.cut_formula = parse_formula(ji["cut"].get<std::string>());
  }
  std::vector<DerivationPtr> prem;
  if (j.contains("premises"))
    for (const auto& jp : j["premises"]) prem.push_back(derivation_from_json_rec(jp));
  return make_derivation(std::move(con), std::move(rule), std::move(prem), std::move(inst));
}

void render_tree_rec(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
  out += render(d.conclusion);
  out += "   [";
  out += d.rule;
  out += "]\n";
  for (const auto& p : d.premises) render_tree_rec(*p, depth + 1, out);
}

}  // namespace

std::string derivation_to_json(const Derivation& d) { return derivation_to_json_rec(d).dump(2); }

DerivationPtr derivation_from_json(const std::string& text) {
  return derivation_from_json_rec(nlohmann::json::parse(text));
}

std::string render_tree(const Derivation& d) {
  std::string out;
  render_tree_rec(d, 0, out);
  return out;
}

}  // namespace lambek
