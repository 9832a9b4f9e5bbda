#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambek {

enum class Conn : uint8_t { Var, Unit, Prod, LDiv, RDiv, Meet, Join };

/// Thrown on malformed formula or sequent text. `pos` is a 0-based byte
/// offset into the input.
struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& what, size_t pos) : std::runtime_error(what), pos(pos) {}
};

/// Unparenthesized `\`/`/` chains are rejected rather than silently bracketed.
struct AmbiguityError : ParseError {
  using ParseError::ParseError;
};

/// An immutable connective tree. Nodes are hash-consed in a global table,
/// so structural equality is pointer equality and hashes are precomputed.
class Formula {
 public:
  static Formula var(std::string_view name);
  static Formula unit();
  static Formula prod(Formula a, Formula b);   // a * b
  static Formula ldiv(Formula a, Formula b);   // a \ b
  static Formula rdiv(Formula a, Formula b);   // a / b
  static Formula meet(Formula a, Formula b);   // a & b
  static Formula join(Formula a, Formula b);   // a | b

  Conn tag() const { return node_->tag; }
  const std::string& var_name() const;  // Var only
  Formula left() const;                 // binary connectives only
  Formula right() const;
  bool is_binary() const { return tag() != Conn::Var && tag() != Conn::Unit; }

  /// Total symbol count: atoms count 1, each binary connective adds 1.
  int size() const { return node_->size; }
  size_t hash() const { return node_->hash; }

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }

  /// Deterministic structural order (size, then tag, then contents);
  /// stable across runs, used for canonical multiset antecedents.
  std::strong_ordering operator<=>(const Formula& o) const;

 private:
  struct Node {
    Conn tag;
    int size;
    size_t hash;
    std::string name;        // Var
    const Node* l = nullptr; // binary
    const Node* r = nullptr;
  };
  explicit Formula(const Node* n) : node_(n) {}
  static Formula intern(Conn tag, std::string_view name, const Node* l, const Node* r);
  const Node* node_;
};

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Ordered antecedent, single succedent. Calculi that read the antecedent
/// as a multiset canonicalize it themselves.
struct Sequent {
  std::vector<Formula> antecedent;
  Formula succedent;

  int total_size() const;
  bool operator==(const Sequent&) const = default;
  size_t hash() const;
};

struct SequentHash {
  size_t operator()(const Sequent& s) const { return s.hash(); }
};

Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

/// Deterministic printing; every compound subterm is fully parenthesized,
/// so parse(render(x)) is structurally equal to x.
std::string render(const Formula& f);
std::string render(const Sequent& s);

/// Rewrites B/A into A\B throughout (the commutative reading where the two
/// divisions coincide); used on intake by ILL and IAL.
Formula normalize_commutative(Formula f);
Sequent normalize_commutative(const Sequent& s);

bool contains_subformula(Formula f, Formula sub);
void collect_variables(Formula f, std::vector<std::string>& out);
std::vector<std::string> sequent_variables(const Sequent& s);
bool contains_conn(Formula f, Conn c);

}  // namespace lambek
