#include "lambek/langmodel.hpp"

#include <optional>
#include <random>

#include <json.hpp>

namespace lambek {

RegLang eval_formula(const ModelAssignment& model, Formula f) {
  switch (f.tag()) {
    case Conn::Var: {
      auto it = model.valuation.find(f.var_name());
      if (it == model.valuation.end())
        throw UnboundVariableError("variable '" + f.var_name() + "' has no value in the model");
      return it->second;
    }
    case Conn::Unit:
      if (model.semantics == Semantics::EpsilonFree)
        throw UnitInEpsilonFreeError("the unit constant has no epsilon-free interpretation");
      return RegLang::epsilon(model.alphabet);
    case Conn::Prod:
      return concat(eval_formula(model, f.left()), eval_formula(model, f.right()));
    case Conn::LDiv:
      return left_divide(eval_formula(model, f.left()), eval_formula(model, f.right()), model.semantics);
    case Conn::RDiv:
      return right_divide(eval_formula(model, f.left()), eval_formula(model, f.right()), model.semantics);
    case Conn::Meet:
      return intersect(eval_formula(model, f.left()), eval_formula(model, f.right()));
    case Conn::Join:
      return unite(eval_formula(model, f.left()), eval_formula(model, f.right()));
  }
  throw std::logic_error("unreachable");
}

bool sequent_truth(const ModelAssignment& model, const Sequent& s) {
  if (s.antecedent.empty()) {
    if (model.semantics == Semantics::EpsilonFree)
      throw EmptyAntecedentError("empty antecedents are not interpretable in epsilon-free models");
    return eval_formula(model, s.succedent).contains_epsilon();
  }
  RegLang prod = eval_formula(model, s.antecedent[0]);
  for (size_t i = 1; i < s.antecedent.size(); ++i)
    prod = concat(prod, eval_formula(model, s.antecedent[i]));
  return includes(prod, eval_formula(model, s.succedent));
}

bool model_class_check(const ModelAssignment& model, LangClass which) {
  for (const auto& [name, lang] : model.valuation) {
    (void)name;
    if (!class_check(lang, which)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random models
// ---------------------------------------------------------------------------

namespace {

RegLang random_automaton_language(const Alphabet& sigma, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nstates_dist(1, 4);
  int n = nstates_dist(rng);
  std::uniform_int_distribution<int> state_dist(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  Nfa nfa;
  nfa.alphabet = sigma;
  nfa.num_states = n;
  for (int s = 0; s < n; ++s)
    for (int c = 0; c < sigma.size(); ++c) nfa.transitions.emplace_back(s, sigma.letter(c), state_dist(rng));
  nfa.initial = {0};
  for (int s = 0; s < n; ++s)
    if (coin(rng)) nfa.accepting.push_back(s);
  return RegLang::from_nfa(nfa);
}

RegLang count_mod_language(const Alphabet& sigma, char letter, int m, int r) {
  // words whose number of `letter` occurrences is r modulo m
  const int k = sigma.size();
  std::vector<int> trans(static_cast<size_t>(m) * k);
  std::vector<bool> accept(m, false);
  accept[r] = true;
  for (int s = 0; s < m; ++s)
    for (int c = 0; c < k; ++c)
      trans[static_cast<size_t>(s) * k + c] = sigma.letter(c) == letter ? (s + 1) % m : s;
  Nfa nfa;
  nfa.alphabet = sigma;
  nfa.num_states = m;
  for (int s = 0; s < m; ++s)
    for (int c = 0; c < k; ++c)
      nfa.transitions.emplace_back(s, sigma.letter(c), trans[static_cast<size_t>(s) * k + c]);
  nfa.initial = {0};
  for (int s = 0; s < m; ++s)
    if (accept[s]) nfa.accepting.push_back(s);
  return RegLang::from_nfa(nfa);
}

RegLang count_threshold_language(const Alphabet& sigma, char letter, int threshold) {
  // words with at least `threshold` occurrences of `letter` (upward closed)
  const int k = sigma.size();
  int n = threshold + 1;
  Nfa nfa;
  nfa.alphabet = sigma;
  nfa.num_states = n;
  for (int s = 0; s < n; ++s)
    for (int c = 0; c < k; ++c) {
      int t = sigma.letter(c) == letter ? std::min(s + 1, threshold) : s;
      nfa.transitions.emplace_back(s, sigma.letter(c), t);
    }
  nfa.initial = {0};
  nfa.accepting = {threshold};
  return RegLang::from_nfa(nfa);
}

RegLang random_commutative_language(const Alphabet& sigma, std::mt19937_64& rng, bool monotone_only) {
  std::uniform_int_distribution<int> natoms_dist(1, 3);
  std::uniform_int_distribution<int> letter_dist(0, sigma.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  int atoms = natoms_dist(rng);
  std::optional<RegLang> acc;
  for (int i = 0; i < atoms; ++i) {
    char letter = sigma.letter(letter_dist(rng));
    RegLang atom = RegLang::sigma_star(sigma);
    if (monotone_only || coin(rng)) {
      std::uniform_int_distribution<int> thr_dist(1, 2);
      atom = count_threshold_language(sigma, letter, thr_dist(rng));
    } else {
      std::uniform_int_distribution<int> mod_dist(2, 3);
      int m = mod_dist(rng);
      std::uniform_int_distribution<int> r_dist(0, m - 1);
      atom = count_mod_language(sigma, letter, m, r_dist(rng));
    }
    if (!acc)
      acc = atom;
    else
      acc = coin(rng) ? intersect(*acc, atom) : unite(*acc, atom);
  }
  return *acc;
}

}  // namespace

ModelAssignment random_model(const Alphabet& alphabet, const std::vector<std::string>& variables,
                             uint64_t seed, ModelClass cls, Semantics semantics) {
  std::mt19937_64 rng(seed);
  ModelAssignment model;
  model.alphabet = alphabet;
  model.semantics = semantics;
  for (const std::string& var : variables) {
    RegLang lang = RegLang::empty(alphabet);
    for (int attempt = 0; attempt < 5; ++attempt) {
      switch (cls) {
        case ModelClass::Plain:
          lang = random_automaton_language(alphabet, rng);
          break;
        case ModelClass::Monotone:
          lang = monotone_closure(random_automaton_language(alphabet, rng));
          break;
        case ModelClass::Commutative:
          lang = random_commutative_language(alphabet, rng, false);
          break;
        case ModelClass::MonotoneCommutative:
          lang = random_commutative_language(alphabet, rng, true);
          break;
      }
      if (semantics == Semantics::EpsilonFree) lang = intersect(lang, RegLang::sigma_plus(alphabet));
      if (!lang.is_empty()) break;  // retry degenerate draws a few times
    }
    model.valuation.emplace(var, lang);
  }
  return model;
}

// ---------------------------------------------------------------------------
// JSON model files
// ---------------------------------------------------------------------------

ModelAssignment model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string letters;
  for (const auto& item : j.at("alphabet")) {
    std::string s = item.get<std::string>();
    if (s.size() != 1) throw ModelError("alphabet letters must be single characters, got '" + s + "'");
    letters += s;
  }
  ModelAssignment model;
  model.alphabet = Alphabet(letters);
  std::string sem = j.at("semantics").get<std::string>();
  if (sem == "eps")
    model.semantics = Semantics::WithEpsilon;
  else if (sem == "noeps")
    model.semantics = Semantics::EpsilonFree;
  else
    throw ModelError("semantics must be \"eps\" or \"noeps\"");

  for (const auto& [var, spec] : j.at("vars").items()) {
    if (spec.contains("regex")) {
      model.valuation.emplace(var, RegLang::from_regex(spec["regex"].get<std::string>(), model.alphabet));
    } else if (spec.contains("automaton")) {
      const auto& aut = spec["automaton"];
      Nfa nfa;
      nfa.alphabet = model.alphabet;
      nfa.num_states = aut.at("states").get<int>();
      for (const auto& s : aut.at("initial")) nfa.initial.push_back(s.get<int>());
      for (const auto& s : aut.at("accepting")) nfa.accepting.push_back(s.get<int>());
      for (const auto& t : aut.at("transitions")) {
        std::string letter = t.at(1).get<std::string>();
        if (letter.size() != 1) throw ModelError("transition letters must be single characters");
        int from = t.at(0).get<int>(), to = t.at(2).get<int>();
        if (from < 0 || from >= nfa.num_states || to < 0 || to >= nfa.num_states)
          throw ModelError("transition endpoint out of range");
        nfa.transitions.emplace_back(from, letter[0], to);
      }
      model.valuation.emplace(var, RegLang::from_nfa(nfa));
    } else {
      throw ModelError("variable '" + var + "' needs a \"regex\" or \"automaton\" entry");
    }
  }
  return model;
}

std::string model_to_json(const ModelAssignment& model) {
  nlohmann::json j;
  j["alphabet"] = nlohmann::json::array();
  for (char c : model.alphabet.letters()) j["alphabet"].push_back(std::string(1, c));
  j["semantics"] = model.semantics == Semantics::WithEpsilon ? "eps" : "noeps";
  j["vars"] = nlohmann::json::object();
  for (const auto& [var, lang] : model.valuation) {
    nlohmann::json aut;
    aut["states"] = lang.num_states();
    aut["initial"] = {lang.start()};
    nlohmann::json acc = nlohmann::json::array();
    for (int s = 0; s < lang.num_states(); ++s)
      if (lang.accepting(s)) acc.push_back(s);
    aut["accepting"] = acc;
    nlohmann::json trans = nlohmann::json::array();
    for (int s = 0; s < lang.num_states(); ++s)
      for (int c = 0; c < model.alphabet.size(); ++c) {
        char letter = model.alphabet.letter(c);
        trans.push_back({s, std::string(1, letter), lang.step(s, letter)});
      }
    aut["transitions"] = trans;
    j["vars"][var] = {{"automaton", aut}};
  }
  return j.dump(2);
}

std::optional<std::string> refute_commutative_bounded(const ModelAssignment& model, const Sequent& s,
                                                      int bound) {
  // The fold lives in Parikh space (a permutation-closed set is its set of
  // letter-count vectors), which keeps the default bound cheap. Soundness
  // needs the succedent value exact, so product is rejected there;
  // antecedent values may be under-approximated without harm.
  if (contains_conn(s.succedent, Conn::Prod))
    throw ModelError("bounded commutative refutation needs a product-free succedent");
  if (s.antecedent.empty()) {
    if (!eval_formula(model, s.succedent).contains_epsilon()) return std::string();
    return std::nullopt;
  }
  RegLang suc = eval_formula(model, s.succedent);

  auto parikh = [&](const std::string& w) {
    std::vector<int> v(static_cast<size_t>(model.alphabet.size()), 0);
    for (char c : w) ++v[static_cast<size_t>(model.alphabet.index(c))];
    return v;
  };
  std::set<std::vector<int>> vectors;
  for (const std::string& w : bounded_words(eval_formula(model, s.antecedent[0]), bound))
    vectors.insert(parikh(w));
  for (size_t i = 1; i < s.antecedent.size(); ++i) {
    std::set<std::vector<int>> next;
    for (const std::string& w : bounded_words(eval_formula(model, s.antecedent[i]), bound)) {
      std::vector<int> pv = parikh(w);
      for (const auto& u : vectors) {
        std::vector<int> sum = u;
        int total = 0;
        for (size_t c = 0; c < sum.size(); ++c) {
          sum[c] += pv[c];
          total += sum[c];
        }
        if (total <= bound) next.insert(std::move(sum));
      }
    }
    vectors = std::move(next);
  }
  for (const auto& v : vectors) {
    std::string word;
    for (size_t c = 0; c < v.size(); ++c) word.append(static_cast<size_t>(v[c]), model.alphabet.letter(static_cast<int>(c)));
    // every arrangement of the multiset must land in the succedent value
    std::sort(word.begin(), word.end());
    do {
      if (!suc.contains(word)) return word;
    } while (std::next_permutation(word.begin(), word.end()));
  }
  return std::nullopt;
}

}  // namespace lambek
