#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambek/formula.hpp"  // ParseError

namespace lambek {

struct AlphabetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Division semantics: quantify over Sigma* (L-eps-models) or restrict
/// results to Sigma+ (classical L-models, no empty word).
enum class Semantics { EpsilonFree, WithEpsilon };

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view letters);

  int size() const { return static_cast<int>(letters_.size()); }
  char letter(int i) const { return letters_[static_cast<size_t>(i)]; }
  int index(char c) const;  // -1 if absent
  bool contains(char c) const { return index(c) >= 0; }
  const std::string& letters() const { return letters_; }
  bool operator==(const Alphabet&) const = default;

 private:
  std::string letters_;  // sorted, unique
};

/// Construction intermediate: NFA with epsilon moves.
struct Nfa {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<std::tuple<int, char, int>> transitions;
  std::vector<std::pair<int, int>> eps_transitions;
  std::vector<int> initial;
  std::vector<int> accepting;

  int add_state() { return num_states++; }
};

/// A regular language held as its minimal complete DFA with breadth-first
/// canonical state numbering (start = 0), so operator== decides language
/// equality.
class RegLang {
 public:
  static RegLang empty(const Alphabet& sigma);
  static RegLang epsilon(const Alphabet& sigma);
  static RegLang single_letter(const Alphabet& sigma, char c);
  static RegLang sigma_star(const Alphabet& sigma);
  static RegLang sigma_plus(const Alphabet& sigma);
  /// Regex syntax: letters, juxtaposition, "|", "*", "(...)", "%" for the
  /// empty word, "#" for the empty language. Throws ParseError /
  /// AlphabetError.
  static RegLang from_regex(std::string_view pattern, const Alphabet& sigma);
  static RegLang from_nfa(const Nfa& nfa);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(accept_.size()); }
  int start() const { return 0; }
  int step(int state, char c) const;
  bool accepting(int state) const { return accept_[static_cast<size_t>(state)]; }

  bool contains(std::string_view word) const;
  bool is_empty() const;
  bool contains_epsilon() const { return accept_[0]; }

  bool operator==(const RegLang&) const = default;

 private:
  friend RegLang left_divide(const RegLang&, const RegLang&, Semantics);
  friend RegLang right_divide(const RegLang&, const RegLang&, Semantics);
  friend bool includes(const RegLang&, const RegLang&);
  friend RegLang concat(const RegLang&, const RegLang&);
  friend RegLang unite(const RegLang&, const RegLang&);
  friend RegLang intersect(const RegLang&, const RegLang&);
  friend RegLang complement(const RegLang&);
  friend RegLang reverse(const RegLang&);
  friend RegLang monotone_closure(const RegLang&);
  friend bool is_monotone(const RegLang&);
  friend bool is_commutative(const RegLang&);

  RegLang(Alphabet sigma, std::vector<int> trans, std::vector<bool> accept)
      : alphabet_(std::move(sigma)), trans_(std::move(trans)), accept_(std::move(accept)) {}
  /// Trims, minimizes and renumbers an arbitrary complete DFA.
  static RegLang canonicalize(const Alphabet& sigma, int num_states, int start,
                              const std::vector<int>& trans, const std::vector<bool>& accept);
  RegLang rerooted(int state) const;

  Alphabet alphabet_;
  std::vector<int> trans_;  // num_states x |Sigma|, row-major
  std::vector<bool> accept_;
};

enum class LangOp { Concat, Union, Intersect, Complement };
enum class LangClass { Monotone, Commutative };

RegLang concat(const RegLang& a, const RegLang& b);
RegLang unite(const RegLang& a, const RegLang& b);
RegLang intersect(const RegLang& a, const RegLang& b);
RegLang complement(const RegLang& a);  // relative to Sigma*
RegLang reverse(const RegLang& a);
/// Dispatcher matching the workbench operation table; Complement ignores b.
RegLang combine(LangOp op, const RegLang& a, const RegLang* b = nullptr);

/// a included in b.
bool includes(const RegLang& a, const RegLang& b);

/// {u | for all v in A, vu in B}, via the state-set construction: intersect
/// B rerooted at every state reachable from B's start by a word of A.
/// A = {} yields Sigma* (or Sigma+ when EpsilonFree).
RegLang left_divide(const RegLang& a, const RegLang& b, Semantics sem);
/// {u | for all v in A, uv in B}: B with accepting set {q | A included in
/// the language of B from q}.
RegLang right_divide(const RegLang& b, const RegLang& a, Semantics sem);

bool is_monotone(const RegLang& a);
bool is_commutative(const RegLang& a);
bool class_check(const RegLang& a, LangClass which);

/// Least monotone superset: the scattered-superword upward closure,
/// realized by adding self-loops on every letter at every state.
RegLang monotone_closure(const RegLang& a);

/// Members of a with length <= n, lexicographically ordered.
std::vector<std::string> bounded_words(const RegLang& a, int n);

/// Bounded approximation of the commutative (multiset) product: every
/// permutation of every word of A.B up to length n. Refutation-only.
std::set<std::string> mub_product_bounded(const RegLang& a, const RegLang& b, int n);

}  // namespace lambek
