#include "lambek/reglang.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>

namespace lambek {

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
}

int Alphabet::index(char c) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), c);
  if (it == letters_.end() || *it != c) return -1;
  return static_cast<int>(it - letters_.begin());
}

namespace {

void require_same_alphabet(const RegLang& a, const RegLang& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw AlphabetError("operands live over different alphabets ('" + a.alphabet().letters() + "' vs '" +
                        b.alphabet().letters() + "')");
}

}  // namespace

int RegLang::step(int state, char c) const {
  int ci = alphabet_.index(c);
  if (ci < 0) throw AlphabetError("letter '" + std::string(1, c) + "' outside the alphabet");
  return trans_[static_cast<size_t>(state) * alphabet_.size() + ci];
}

bool RegLang::contains(std::string_view word) const {
  int q = 0;
  for (char c : word) q = step(q, c);
  return accept_[static_cast<size_t>(q)];
}

bool RegLang::is_empty() const {
  // canonical form keeps only reachable states
  return std::find(accept_.begin(), accept_.end(), true) == accept_.end();
}

RegLang RegLang::canonicalize(const Alphabet& sigma, int num_states, int start,
                              const std::vector<int>& trans, const std::vector<bool>& accept) {
  const int k = sigma.size();
  assert(static_cast<size_t>(num_states) * k == trans.size());

  // 1. reachable states only
  std::vector<int> order;
  std::vector<int> id(num_states, -1);
  order.push_back(start);
  id[start] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (int c = 0; c < k; ++c) {
      int t = trans[static_cast<size_t>(order[i]) * k + c];
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  int n = static_cast<int>(order.size());
  std::vector<int> rtrans(static_cast<size_t>(n) * k);
  std::vector<bool> racc(n);
  for (int s = 0; s < n; ++s) {
    racc[s] = accept[order[s]];
    for (int c = 0; c < k; ++c) rtrans[static_cast<size_t>(s) * k + c] = id[trans[static_cast<size_t>(order[s]) * k + c]];
  }

  // 2. Moore partition refinement
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = racc[s] ? 1 : 0;
  int num_classes = 2;
  for (;;) {
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (int c = 0; c < k; ++c) sig.push_back(cls[rtrans[static_cast<size_t>(s) * k + c]]);
      auto [it, fresh] = sig_to_class.emplace(std::move(sig), static_cast<int>(sig_to_class.size()));
      (void)fresh;
      next[s] = it->second;
    }
    int nc = static_cast<int>(sig_to_class.size());
    bool stable = nc == num_classes;
    cls = std::move(next);
    num_classes = nc;
    if (stable) break;
  }

  // 3. quotient, then BFS renumber so equal languages share one table
  std::vector<int> qtrans(static_cast<size_t>(num_classes) * k, -1);
  std::vector<bool> qacc(num_classes, false);
  for (int s = 0; s < n; ++s) {
    qacc[cls[s]] = racc[s];
    for (int c = 0; c < k; ++c) qtrans[static_cast<size_t>(cls[s]) * k + c] = cls[rtrans[static_cast<size_t>(s) * k + c]];
  }
  std::vector<int> bfs_id(num_classes, -1);
  std::vector<int> bfs_order;
  bfs_id[cls[0]] = 0;
  bfs_order.push_back(cls[0]);
  for (size_t i = 0; i < bfs_order.size(); ++i)
    for (int c = 0; c < k; ++c) {
      int t = qtrans[static_cast<size_t>(bfs_order[i]) * k + c];
      if (bfs_id[t] < 0) {
        bfs_id[t] = static_cast<int>(bfs_order.size());
        bfs_order.push_back(t);
      }
    }
  int m = static_cast<int>(bfs_order.size());
  std::vector<int> ftrans(static_cast<size_t>(m) * k);
  std::vector<bool> facc(m);
  for (int s = 0; s < m; ++s) {
    facc[s] = qacc[bfs_order[s]];
    for (int c = 0; c < k; ++c) ftrans[static_cast<size_t>(s) * k + c] = bfs_id[qtrans[static_cast<size_t>(bfs_order[s]) * k + c]];
  }
  return RegLang(sigma, std::move(ftrans), std::move(facc));
}

RegLang RegLang::rerooted(int state) const {
  return canonicalize(alphabet_, num_states(), state, trans_, accept_);
}

RegLang RegLang::from_nfa(const Nfa& nfa) {
  const int k = nfa.alphabet.size();
  for (auto& [from, c, to] : nfa.transitions) {
    (void)from;
    (void)to;
    if (!nfa.alphabet.contains(c))
      throw AlphabetError("transition letter '" + std::string(1, c) + "' outside the alphabet");
  }

  std::vector<std::vector<int>> eps(nfa.num_states);
  for (auto& [a, b] : nfa.eps_transitions) eps[a].push_back(b);
  std::vector<std::vector<std::pair<char, int>>> arcs(nfa.num_states);
  for (auto& [a, c, b] : nfa.transitions) arcs[a].emplace_back(c, b);

  auto closure = [&](std::vector<int> set) {
    std::vector<bool> in(nfa.num_states, false);
    std::queue<int> work;
    for (int s : set) {
      if (!in[s]) {
        in[s] = true;
        work.push(s);
      }
    }
    while (!work.empty()) {
      int s = work.front();
      work.pop();
      for (int t : eps[s])
        if (!in[t]) {
          in[t] = true;
          work.push(t);
        }
    }
    std::vector<int> out;
    for (int s = 0; s < nfa.num_states; ++s)
      if (in[s]) out.push_back(s);
    return out;
  };

  std::map<std::vector<int>, int> subset_id;
  std::vector<std::vector<int>> subsets;
  std::vector<int> trans;
  std::vector<bool> accept;
  std::vector<bool> is_acc(nfa.num_states, false);
  for (int s : nfa.accepting) is_acc[s] = true;

  auto intern_subset = [&](std::vector<int> set) {
    auto [it, fresh] = subset_id.emplace(set, static_cast<int>(subsets.size()));
    if (fresh) {
      subsets.push_back(std::move(set));
      accept.push_back(false);
      for (int s : subsets.back())
        if (is_acc[s]) accept.back() = true;
      trans.resize(subsets.size() * static_cast<size_t>(k), -1);
    }
    return it->second;
  };

  int start = intern_subset(closure(nfa.initial));
  for (size_t cur = 0; cur < subsets.size(); ++cur) {
    for (int c = 0; c < k; ++c) {
      char letter = nfa.alphabet.letter(c);
      std::vector<int> moved;
      for (int s : subsets[cur])
        for (auto& [tc, t] : arcs[s])
          if (tc == letter) moved.push_back(t);
      std::sort(moved.begin(), moved.end());
      moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
      int target = intern_subset(closure(std::move(moved)));
      trans[cur * static_cast<size_t>(k) + c] = target;
    }
  }
  return canonicalize(nfa.alphabet, static_cast<int>(subsets.size()), start, trans, accept);
}

RegLang RegLang::empty(const Alphabet& sigma) {
  const int k = sigma.size();
  return canonicalize(sigma, 1, 0, std::vector<int>(static_cast<size_t>(k), 0), {false});
}

RegLang RegLang::epsilon(const Alphabet& sigma) {
  const int k = sigma.size();
  // state 0 = start (accepting), state 1 = sink
  std::vector<int> trans(2 * static_cast<size_t>(k), 1);
  return canonicalize(sigma, 2, 0, trans, {true, false});
}

RegLang RegLang::single_letter(const Alphabet& sigma, char c) {
  int ci = sigma.index(c);
  if (ci < 0) throw AlphabetError("letter '" + std::string(1, c) + "' outside the alphabet");
  const int k = sigma.size();
  std::vector<int> trans(3 * static_cast<size_t>(k), 2);
  trans[static_cast<size_t>(ci)] = 1;
  return canonicalize(sigma, 3, 0, trans, {false, true, false});
}

RegLang RegLang::sigma_star(const Alphabet& sigma) {
  const int k = sigma.size();
  return canonicalize(sigma, 1, 0, std::vector<int>(static_cast<size_t>(k), 0), {true});
}

RegLang RegLang::sigma_plus(const Alphabet& sigma) {
  const int k = sigma.size();
  std::vector<int> trans(2 * static_cast<size_t>(k), 1);
  for (int c = 0; c < k; ++c) trans[static_cast<size_t>(k) + c] = 1;
  return canonicalize(sigma, 2, 0, trans, {false, true});
}

// ---------------------------------------------------------------------------
// Regex compilation (Thompson construction)
// ---------------------------------------------------------------------------

namespace {

struct RegexParser {
  std::string_view pat;
  size_t pos = 0;
  Nfa nfa;

  struct Frag {
    int start, accept;
  };

  explicit RegexParser(std::string_view pattern, const Alphabet& sigma) : pat(pattern) {
    nfa.alphabet = sigma;
  }

  bool done() const { return pos >= pat.size(); }
  char peek() const { return pat[pos]; }

  Frag fresh_pair() { return Frag{nfa.add_state(), nfa.add_state()}; }

  Frag atom() {
    if (done()) throw ParseError("unexpected end of regex", pos);
    char c = pat[pos];
    if (c == '(') {
      ++pos;
      Frag f = alt();
      if (done() || pat[pos] != ')') throw ParseError("expected ')'", pos);
      ++pos;
      return f;
    }
    if (c == '%') {
      ++pos;
      Frag f = fresh_pair();
      nfa.eps_transitions.emplace_back(f.start, f.accept);
      return f;
    }
    if (c == '#') {
      ++pos;
      return fresh_pair();  // no path from start to accept
    }
    if (c == ')' || c == '|' || c == '*') throw ParseError("unexpected operator", pos);
    if (!nfa.alphabet.contains(c))
      throw AlphabetError("letter '" + std::string(1, c) + "' outside the alphabet");
    ++pos;
    Frag f = fresh_pair();
    nfa.transitions.emplace_back(f.start, c, f.accept);
    return f;
  }

  Frag rep() {
    Frag f = atom();
    while (!done() && pat[pos] == '*') {
      ++pos;
      Frag g = fresh_pair();
      nfa.eps_transitions.emplace_back(g.start, f.start);
      nfa.eps_transitions.emplace_back(g.start, g.accept);
      nfa.eps_transitions.emplace_back(f.accept, f.start);
      nfa.eps_transitions.emplace_back(f.accept, g.accept);
      f = g;
    }
    return f;
  }

  Frag cat() {
    Frag f = rep();
    while (!done() && pat[pos] != '|' && pat[pos] != ')') {
      Frag g = rep();
      nfa.eps_transitions.emplace_back(f.accept, g.start);
      f = Frag{f.start, g.accept};
    }
    return f;
  }

  Frag alt() {
    Frag f = cat();
    while (!done() && pat[pos] == '|') {
      ++pos;
      Frag g = cat();
      Frag h = fresh_pair();
      nfa.eps_transitions.emplace_back(h.start, f.start);
      nfa.eps_transitions.emplace_back(h.start, g.start);
      nfa.eps_transitions.emplace_back(f.accept, h.accept);
      nfa.eps_transitions.emplace_back(g.accept, h.accept);
      f = h;
    }
    return f;
  }

  RegLang run() {
    if (pat.empty()) throw ParseError("empty regex (use % for the empty word)", 0);
    Frag f = alt();
    if (!done()) throw ParseError("trailing input in regex", pos);
    nfa.initial = {f.start};
    nfa.accepting = {f.accept};
    return RegLang::from_nfa(nfa);
  }
};

}  // namespace

RegLang RegLang::from_regex(std::string_view pattern, const Alphabet& sigma) {
  return RegexParser(pattern, sigma).run();
}

// ---------------------------------------------------------------------------
// Boolean and monoid operations
// ---------------------------------------------------------------------------

RegLang unite(const RegLang& a, const RegLang& b) {
  require_same_alphabet(a, b);
  const int k = a.alphabet_.size();
  const int na = a.num_states(), nb = b.num_states();
  std::vector<int> trans(static_cast<size_t>(na) * nb * k);
  std::vector<bool> accept(static_cast<size_t>(na) * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      accept[static_cast<size_t>(i) * nb + j] = a.accept_[i] || b.accept_[j];
      for (int c = 0; c < k; ++c)
        trans[(static_cast<size_t>(i) * nb + j) * k + c] =
            a.trans_[static_cast<size_t>(i) * k + c] * nb + b.trans_[static_cast<size_t>(j) * k + c];
    }
  return RegLang::canonicalize(a.alphabet_, na * nb, 0, trans, accept);
}

RegLang intersect(const RegLang& a, const RegLang& b) {
  require_same_alphabet(a, b);
  const int k = a.alphabet_.size();
  const int na = a.num_states(), nb = b.num_states();
  std::vector<int> trans(static_cast<size_t>(na) * nb * k);
  std::vector<bool> accept(static_cast<size_t>(na) * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      accept[static_cast<size_t>(i) * nb + j] = a.accept_[i] && b.accept_[j];
      for (int c = 0; c < k; ++c)
        trans[(static_cast<size_t>(i) * nb + j) * k + c] =
            a.trans_[static_cast<size_t>(i) * k + c] * nb + b.trans_[static_cast<size_t>(j) * k + c];
    }
  return RegLang::canonicalize(a.alphabet_, na * nb, 0, trans, accept);
}

RegLang complement(const RegLang& a) {
  std::vector<bool> accept = a.accept_;
  accept.flip();
  return RegLang::canonicalize(a.alphabet_, a.num_states(), 0, a.trans_, accept);
}

RegLang concat(const RegLang& a, const RegLang& b) {
  require_same_alphabet(a, b);
  Nfa nfa;
  nfa.alphabet = a.alphabet_;
  const int k = nfa.alphabet.size();
  const int na = a.num_states(), nb = b.num_states();
  nfa.num_states = na + nb;
  for (int s = 0; s < na; ++s)
    for (int c = 0; c < k; ++c)
      nfa.transitions.emplace_back(s, nfa.alphabet.letter(c), a.trans_[static_cast<size_t>(s) * k + c]);
  for (int s = 0; s < nb; ++s)
    for (int c = 0; c < k; ++c)
      nfa.transitions.emplace_back(na + s, nfa.alphabet.letter(c), na + b.trans_[static_cast<size_t>(s) * k + c]);
  for (int s = 0; s < na; ++s)
    if (a.accept_[s]) nfa.eps_transitions.emplace_back(s, na);
  nfa.initial = {0};
  for (int s = 0; s < nb; ++s)
    if (b.accept_[s]) nfa.accepting.push_back(na + s);
  return RegLang::from_nfa(nfa);
}

RegLang reverse(const RegLang& a) {
  Nfa nfa;
  nfa.alphabet = a.alphabet_;
  const int k = nfa.alphabet.size();
  nfa.num_states = a.num_states();
  for (int s = 0; s < a.num_states(); ++s)
    for (int c = 0; c < k; ++c)
      nfa.transitions.emplace_back(a.trans_[static_cast<size_t>(s) * k + c], nfa.alphabet.letter(c), s);
  for (int s = 0; s < a.num_states(); ++s)
    if (a.accept_[s]) nfa.initial.push_back(s);
  nfa.accepting = {0};
  return RegLang::from_nfa(nfa);
}

RegLang combine(LangOp op, const RegLang& a, const RegLang* b) {
  switch (op) {
    case LangOp::Concat:
      if (!b) throw std::invalid_argument("Concat is binary");
      return concat(a, *b);
    case LangOp::Union:
      if (!b) throw std::invalid_argument("Union is binary");
      return unite(a, *b);
    case LangOp::Intersect:
      if (!b) throw std::invalid_argument("Intersect is binary");
      return intersect(a, *b);
    case LangOp::Complement:
      return complement(a);
  }
  throw std::invalid_argument("unknown operation");
}

bool includes(const RegLang& a, const RegLang& b) {
  require_same_alphabet(a, b);
  // a subseteq b iff a meets the complement of b nowhere: product reachability
  const int k = a.alphabet_.size();
  const int nb = b.num_states();
  std::vector<bool> seen(static_cast<size_t>(a.num_states()) * nb, false);
  std::queue<std::pair<int, int>> work;
  seen[0] = true;
  work.emplace(0, 0);
  while (!work.empty()) {
    auto [i, j] = work.front();
    work.pop();
    if (a.accept_[i] && !b.accept_[j]) return false;
    for (int c = 0; c < k; ++c) {
      int ni = a.trans_[static_cast<size_t>(i) * k + c];
      int nj = b.trans_[static_cast<size_t>(j) * k + c];
      if (!seen[static_cast<size_t>(ni) * nb + nj]) {
        seen[static_cast<size_t>(ni) * nb + nj] = true;
        work.emplace(ni, nj);
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Divisions
// ---------------------------------------------------------------------------

RegLang left_divide(const RegLang& a, const RegLang& b, Semantics sem) {
  require_same_alphabet(a, b);
  const Alphabet& sigma = a.alphabet_;
  if (a.is_empty())
    return sem == Semantics::WithEpsilon ? RegLang::sigma_star(sigma) : RegLang::sigma_plus(sigma);

  // states of B reachable from its start by some word of A
  const int k = sigma.size();
  const int nb = b.num_states();
  std::vector<bool> seen(static_cast<size_t>(a.num_states()) * nb, false);
  std::vector<bool> in_s(nb, false);
  std::queue<std::pair<int, int>> work;
  seen[0] = true;
  work.emplace(0, 0);
  while (!work.empty()) {
    auto [i, j] = work.front();
    work.pop();
    if (a.accept_[i]) in_s[j] = true;
    for (int c = 0; c < k; ++c) {
      int ni = a.trans_[static_cast<size_t>(i) * k + c];
      int nj = b.trans_[static_cast<size_t>(j) * k + c];
      if (!seen[static_cast<size_t>(ni) * nb + nj]) {
        seen[static_cast<size_t>(ni) * nb + nj] = true;
        work.emplace(ni, nj);
      }
    }
  }

  bool first = true;
  RegLang result = RegLang::sigma_star(sigma);
  for (int s = 0; s < nb; ++s) {
    if (!in_s[s]) continue;
    RegLang piece = b.rerooted(s);
    result = first ? piece : intersect(result, piece);
    first = false;
  }
  if (sem == Semantics::EpsilonFree) result = intersect(result, RegLang::sigma_plus(sigma));
  return result;
}

RegLang right_divide(const RegLang& b, const RegLang& a, Semantics sem) {
  require_same_alphabet(a, b);
  const Alphabet& sigma = b.alphabet_;
  const int nb = b.num_states();
  std::vector<bool> t(nb, false);
  for (int q = 0; q < nb; ++q) {
    // A subseteq language-of-B-from-q: product reachability from (a0, q)
    const int k = sigma.size();
    std::vector<bool> seen(static_cast<size_t>(a.num_states()) * nb, false);
    std::queue<std::pair<int, int>> work;
    seen[static_cast<size_t>(0) * nb + q] = true;
    work.emplace(0, q);
    bool ok = true;
    while (ok && !work.empty()) {
      auto [i, j] = work.front();
      work.pop();
      if (a.accept_[i] && !b.accept_[j]) ok = false;
      for (int c = 0; c < k && ok; ++c) {
        int ni = a.trans_[static_cast<size_t>(i) * k + c];
        int nj = b.trans_[static_cast<size_t>(j) * k + c];
        if (!seen[static_cast<size_t>(ni) * nb + nj]) {
          seen[static_cast<size_t>(ni) * nb + nj] = true;
          work.emplace(ni, nj);
        }
      }
    }
    t[q] = ok;
  }
  RegLang result = RegLang::canonicalize(sigma, nb, 0, b.trans_, t);
  if (sem == Semantics::EpsilonFree) result = intersect(result, RegLang::sigma_plus(sigma));
  return result;
}

// ---------------------------------------------------------------------------
// Language classes
// ---------------------------------------------------------------------------

bool is_monotone(const RegLang& a) {
  // insertion closure: simulate a with one guessed detour during which the
  // state is frozen; monotone iff the closure stays inside a
  Nfa nfa;
  nfa.alphabet = a.alphabet_;
  const int k = nfa.alphabet.size();
  const int n = a.num_states();
  nfa.num_states = 3 * n;  // phase 0: before, 1: inside detour, 2: after
  for (int s = 0; s < n; ++s) {
    for (int c = 0; c < k; ++c) {
      char letter = nfa.alphabet.letter(c);
      int t = a.trans_[static_cast<size_t>(s) * k + c];
      nfa.transitions.emplace_back(s, letter, t);
      nfa.transitions.emplace_back(n + s, letter, n + s);
      nfa.transitions.emplace_back(2 * n + s, letter, 2 * n + t);
    }
    nfa.eps_transitions.emplace_back(s, n + s);
    nfa.eps_transitions.emplace_back(n + s, 2 * n + s);
    if (a.accept_[s]) nfa.accepting.push_back(2 * n + s);
  }
  nfa.initial = {0};
  return includes(RegLang::from_nfa(nfa), a);
}

bool is_commutative(const RegLang& a) {
  // adjacent-swap closure: buffer two letters and feed them to a swapped;
  // closure under adjacent swaps generates all permutations
  Nfa nfa;
  nfa.alphabet = a.alphabet_;
  const int k = nfa.alphabet.size();
  const int n = a.num_states();
  // ids: phase 0 = s; waiting on (s, c) = n + s*k + c; phase 2 = n + n*k + s
  nfa.num_states = n + n * k + n;
  auto phase2 = [&](int s) { return n + n * k + s; };
  for (int s = 0; s < n; ++s) {
    for (int c = 0; c < k; ++c) {
      char letter = nfa.alphabet.letter(c);
      int t = a.trans_[static_cast<size_t>(s) * k + c];
      nfa.transitions.emplace_back(s, letter, t);
      nfa.transitions.emplace_back(phase2(s), letter, phase2(t));
      // start a swap: read the second letter first
      nfa.transitions.emplace_back(s, letter, n + s * k + c);
      // finish it: on the first letter d, advance by d then by the buffered c
      for (int d = 0; d < k; ++d) {
        int mid = a.trans_[static_cast<size_t>(s) * k + d];
        int end = a.trans_[static_cast<size_t>(mid) * k + c];
        nfa.transitions.emplace_back(n + s * k + c, nfa.alphabet.letter(d), phase2(end));
      }
    }
    if (a.accept_[s]) nfa.accepting.push_back(phase2(s));
  }
  nfa.initial = {0};
  return includes(RegLang::from_nfa(nfa), a);
}

bool class_check(const RegLang& a, LangClass which) {
  return which == LangClass::Monotone ? is_monotone(a) : is_commutative(a);
}

RegLang monotone_closure(const RegLang& a) {
  Nfa nfa;
  nfa.alphabet = a.alphabet_;
  const int k = nfa.alphabet.size();
  nfa.num_states = a.num_states();
  for (int s = 0; s < a.num_states(); ++s) {
    for (int c = 0; c < k; ++c) {
      char letter = nfa.alphabet.letter(c);
      nfa.transitions.emplace_back(s, letter, a.trans_[static_cast<size_t>(s) * k + c]);
      nfa.transitions.emplace_back(s, letter, s);  // absorb inserted letters
    }
    if (a.accept_[s]) nfa.accepting.push_back(s);
  }
  nfa.initial = {0};
  return RegLang::from_nfa(nfa);
}

// ---------------------------------------------------------------------------
// Bounded enumeration
// ---------------------------------------------------------------------------

namespace {

void enumerate_rec(const RegLang& a, int state, int left, std::string& word, std::vector<std::string>& out) {
  if (a.accepting(state)) out.push_back(word);
  if (left == 0) return;
  for (int c = 0; c < a.alphabet().size(); ++c) {
    char letter = a.alphabet().letter(c);
    word.push_back(letter);
    enumerate_rec(a, a.step(state, letter), left - 1, word, out);
    word.pop_back();
  }
}

}  // namespace

std::vector<std::string> bounded_words(const RegLang& a, int n) {
  std::vector<std::string> out;
  std::string word;
  enumerate_rec(a, 0, n, word, out);
  // prefix-order traversal already yields lexicographic order
  return out;
}

std::set<std::string> mub_product_bounded(const RegLang& a, const RegLang& b, int n) {
  std::set<std::string> out;
  for (const std::string& w : bounded_words(concat(a, b), n)) {
    std::string perm = w;
    std::sort(perm.begin(), perm.end());
    do {
      out.insert(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace lambek
