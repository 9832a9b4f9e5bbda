#include <doctest.h>

#include <random>
#include <set>

#include "lambek/langmodel.hpp"
#include "lambek/reglang.hpp"

using namespace lambek;

namespace {

const Alphabet kAB("ab");

RegLang rx(const std::string& pattern) { return RegLang::from_regex(pattern, kAB); }

RegLang seeded(uint64_t seed) {
  return random_model(kAB, {"p"}, seed, ModelClass::Plain, Semantics::WithEpsilon).valuation.at("p");
}

}  // namespace

TEST_CASE("regex basics") {
  CHECK(rx("%") == RegLang::epsilon(kAB));
  CHECK(rx("#") == RegLang::empty(kAB));
  CHECK(rx("(a|b)*") == RegLang::sigma_star(kAB));
  RegLang a_words = rx("a(a|b)*");
  CHECK(a_words.contains("a"));
  CHECK(a_words.contains("ab"));
  CHECK(a_words.contains("aba"));
  CHECK(!a_words.contains(""));
  CHECK(!a_words.contains("ba"));
  CHECK_THROWS_AS(rx("a("), ParseError);
  CHECK_THROWS_AS(rx("c"), AlphabetError);
}

TEST_CASE("(ab)* minimizes to three states") {
  RegLang l = rx("(ab)*");
  CHECK(l.num_states() == 3);  // start/accept, after-a, sink

  // Nerode-style oracle: distinct extension behaviors over words <= 6
  std::set<std::vector<bool>> signatures;
  std::vector<std::string> probes = bounded_words(RegLang::sigma_star(kAB), 3);
  for (const std::string& w : bounded_words(RegLang::sigma_star(kAB), 3)) {
    std::vector<bool> sig;
    for (const std::string& u : probes) sig.push_back(l.contains(w + u));
    signatures.insert(sig);
  }
  CHECK(signatures.size() == 3);
}

TEST_CASE("boolean and monoid operations") {
  CHECK(concat(rx("a"), rx("b")) == rx("ab"));
  CHECK(intersect(rx("a|ab"), rx("ab|b")) == rx("ab"));
  CHECK(unite(rx("a"), rx("b")) == rx("a|b"));
  CHECK(complement(RegLang::sigma_star(kAB)) == RegLang::empty(kAB));
  CHECK(complement(complement(rx("ab|%"))) == rx("ab|%"));
  CHECK(reverse(rx("ab")) == rx("ba"));
  RegLang b = rx("b");
  CHECK(combine(LangOp::Concat, rx("a"), &b) == rx("ab"));
  CHECK(combine(LangOp::Complement, RegLang::sigma_star(kAB)) == RegLang::empty(kAB));
  CHECK_THROWS_AS(combine(LangOp::Union, rx("a"), nullptr), std::invalid_argument);
}

TEST_CASE("inclusion") {
  CHECK(includes(rx("a"), RegLang::sigma_star(kAB)));
  CHECK(!includes(RegLang::sigma_star(kAB), rx("a")));
  CHECK(includes(rx("#"), rx("a")));
  CHECK_THROWS_AS(includes(rx("a"), RegLang::sigma_star(Alphabet("abc"))), AlphabetError);
}

TEST_CASE("left division: {a} \\ {a, ab}") {
  RegLang result = left_divide(rx("a"), rx("a|ab"), Semantics::WithEpsilon);
  CHECK(result == rx("%|b"));
  CHECK(left_divide(rx("a"), rx("a|ab"), Semantics::EpsilonFree) == rx("b"));
}

TEST_CASE("division by the empty language is universal") {
  CHECK(left_divide(rx("#"), rx("ab"), Semantics::WithEpsilon) == RegLang::sigma_star(kAB));
  CHECK(left_divide(rx("#"), rx("ab"), Semantics::EpsilonFree) == RegLang::sigma_plus(kAB));
  CHECK(right_divide(rx("ab"), rx("#"), Semantics::WithEpsilon) == RegLang::sigma_star(kAB));
}

TEST_CASE("A\\A picks up the empty word exactly with epsilon semantics") {
  RegLang a = rx("a");
  CHECK(left_divide(a, a, Semantics::WithEpsilon).contains_epsilon());
  CHECK(left_divide(a, a, Semantics::EpsilonFree) == RegLang::empty(kAB));
}

TEST_CASE("right division: {ab} / {b}") {
  CHECK(right_divide(rx("ab"), rx("b"), Semantics::WithEpsilon) == rx("a"));
}

TEST_CASE("mirror symmetry of the divisions") {
  for (uint64_t i = 0; i < 100; ++i) {
    RegLang a = seeded(900 + 2 * i), b = seeded(901 + 2 * i);
    CHECK(right_divide(b, a, Semantics::WithEpsilon) ==
          reverse(left_divide(reverse(a), reverse(b), Semantics::WithEpsilon)));
  }
}

TEST_CASE("residuation triple") {
  for (uint64_t i = 0; i < 40; ++i) {
    RegLang a = seeded(300 + 3 * i), b = seeded(301 + 3 * i), c = seeded(302 + 3 * i);
    bool x = includes(b, left_divide(a, c, Semantics::WithEpsilon));
    bool y = includes(concat(a, b), c);
    bool z = includes(a, right_divide(c, b, Semantics::WithEpsilon));
    CHECK(x == y);
    CHECK(y == z);
  }
}

TEST_CASE("class checks") {
  CHECK(is_monotone(RegLang::sigma_star(kAB)));
  CHECK(is_commutative(RegLang::sigma_star(kAB)));
  CHECK(!is_monotone(rx("ab")));     // inserting a gives aab
  CHECK(!is_commutative(rx("ab")));  // swapping gives ba
  CHECK(is_monotone(rx("(a|b)*a(a|b)*")));
  CHECK(is_commutative(rx("%|a|aa")));  // single-letter words are closed under permutation
  CHECK(!is_monotone(rx("%|a|aa")));    // inserting b escapes
}

TEST_CASE("monotone closure") {
  CHECK(monotone_closure(rx("ab")) == rx("(a|b)*a(a|b)*b(a|b)*"));
  CHECK(monotone_closure(RegLang::sigma_star(kAB)) == RegLang::sigma_star(kAB));
  for (uint64_t i = 0; i < 60; ++i) {
    RegLang closed = monotone_closure(seeded(700 + i));
    CHECK(is_monotone(closed));
    CHECK(includes(seeded(700 + i), closed));
  }
}

TEST_CASE("bounded word enumeration") {
  Alphabet unary("a");
  CHECK(bounded_words(RegLang::sigma_star(unary), 2) == std::vector<std::string>{"", "a", "aa"});
  CHECK(bounded_words(rx("ab"), 1).empty());
  CHECK(bounded_words(rx("ab"), 2) == std::vector<std::string>{"ab"});

  // concatenation agrees with the pairwise oracle
  for (uint64_t i = 0; i < 40; ++i) {
    RegLang a = seeded(800 + 2 * i), b = seeded(801 + 2 * i);
    std::set<std::string> oracle;
    for (const std::string& u : bounded_words(a, 5))
      for (const std::string& v : bounded_words(b, 5))
        if (u.size() + v.size() <= 5) oracle.insert(u + v);
    std::vector<std::string> got = bounded_words(concat(a, b), 5);
    CHECK(std::set<std::string>(got.begin(), got.end()) == oracle);
  }
}

TEST_CASE("bounded multiset product") {
  std::set<std::string> m = mub_product_bounded(rx("ab"), rx("%"), 2);
  CHECK(m == std::set<std::string>{"ab", "ba"});
  CHECK(mub_product_bounded(rx("%"), rx("%"), 3) == std::set<std::string>{""});
  for (uint64_t i = 0; i < 25; ++i) {
    RegLang a = seeded(850 + 2 * i), b = seeded(851 + 2 * i);
    std::set<std::string> mub = mub_product_bounded(a, b, 5);
    for (const std::string& w : bounded_words(concat(a, b), 5)) CHECK(mub.contains(w));
  }
}

TEST_CASE("rejects mixed alphabets") {
  Alphabet abc("abc");
  CHECK_THROWS_AS(concat(rx("a"), RegLang::sigma_star(abc)), AlphabetError);
  CHECK_THROWS_AS(left_divide(rx("a"), RegLang::sigma_star(abc), Semantics::WithEpsilon), AlphabetError);
}
