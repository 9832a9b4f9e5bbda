#include "lambek/formula.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace lambek {

namespace {

size_t mix(size_t h, size_t v) {
  // boost::hash_combine flavor
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::intern(Conn tag, std::string_view name, const Node* l, const Node* r) {
  struct Key {
    Conn tag;
    std::string name;
    const Node *l, *r;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = static_cast<size_t>(k.tag);
      h = mix(h, std::hash<std::string>{}(k.name));
      h = mix(h, std::hash<const void*>{}(k.l));
      h = mix(h, std::hash<const void*>{}(k.r));
      return h;
    }
  };
  // Interned nodes live for the whole process; the table owns them.
  static std::mutex mu;
  static std::unordered_map<Key, std::unique_ptr<Node>, KeyHash>* table =
      new std::unordered_map<Key, std::unique_ptr<Node>, KeyHash>();

  std::lock_guard<std::mutex> lock(mu);
  Key key{tag, std::string(name), l, r};
  auto it = table->find(key);
  if (it != table->end()) return Formula(it->second.get());

  auto node = std::make_unique<Node>();
  node->tag = tag;
  node->name = key.name;
  node->l = l;
  node->r = r;
  node->size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
  size_t h = static_cast<size_t>(tag) + 0x51ed2701;
  h = mix(h, std::hash<std::string>{}(node->name));
  if (l) h = mix(h, l->hash);
  if (r) h = mix(h, r->hash);
  node->hash = h;
  const Node* raw = node.get();
  table->emplace(std::move(key), std::move(node));
  return Formula(raw);
}

Formula Formula::var(std::string_view name) {
  assert(!name.empty());
  return intern(Conn::Var, name, nullptr, nullptr);
}
Formula Formula::unit() { return intern(Conn::Unit, "", nullptr, nullptr); }
Formula Formula::prod(Formula a, Formula b) { return intern(Conn::Prod, "", a.node_, b.node_); }
Formula Formula::ldiv(Formula a, Formula b) { return intern(Conn::LDiv, "", a.node_, b.node_); }
Formula Formula::rdiv(Formula a, Formula b) { return intern(Conn::RDiv, "", a.node_, b.node_); }
Formula Formula::meet(Formula a, Formula b) { return intern(Conn::Meet, "", a.node_, b.node_); }
Formula Formula::join(Formula a, Formula b) { return intern(Conn::Join, "", a.node_, b.node_); }

const std::string& Formula::var_name() const {
  assert(tag() == Conn::Var);
  return node_->name;
}
Formula Formula::left() const {
  assert(is_binary());
  return Formula(node_->l);
}
Formula Formula::right() const {
  assert(is_binary());
  return Formula(node_->r);
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (auto c = size() <=> o.size(); c != 0) return c;
  if (auto c = static_cast<int>(tag()) <=> static_cast<int>(o.tag()); c != 0) return c;
  switch (tag()) {
    case Conn::Var:
      return node_->name <=> o.node_->name;
    case Conn::Unit:
      return std::strong_ordering::equal;
    default:
      if (auto c = left() <=> o.left(); c != 0) return c;
      return right() <=> o.right();
  }
}

int Sequent::total_size() const {
  int n = succedent.size();
  for (const auto& f : antecedent) n += f.size();
  return n;
}

size_t Sequent::hash() const {
  size_t h = 0xceb1f0;
  for (const auto& f : antecedent) h = mix(h, f.hash());
  h = mix(h, 0x7e57);
  h = mix(h, succedent.hash());
  return h;
}

// ---------------------------------------------------------------------------
// Lexer / parser
//
// formula := join ; join := meet ("|" meet)* ; meet := div ("&" div)* ;
// div := prod [ ("\" | "/") prod ] ; prod := atom ("*" atom)* ;
// atom := var | "1" | "(" formula ")" ; var := [a-z][A-Za-z0-9_]*
//
// "|" and "&" and "*" chains associate to the left. A second "\" or "/" at
// the div level raises AmbiguityError.
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Var, One, LPar, RPar, BSlash, Slash, Star, Amp, Pipe, Comma, Turnstile, End };

struct Lexer {
  std::string_view text;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string tok_text;
  size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { advance(); }

  bool starts_with(std::string_view s) const { return text.substr(pos, s.size()) == s; }

  void advance() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
    tok_pos = pos;
    tok_text.clear();
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    // Unicode aliases accepted on input; canonical output is ASCII.
    struct Alias {
      std::string_view utf8;
      Tok tok;
    };
    static constexpr Alias aliases[] = {
        {"∧", Tok::Amp},    // ∧
        {"∨", Tok::Pipe},   // ∨
        {"⊸", Tok::BSlash}, // ⊸
        {"·", Tok::Star},   // ·
        {"\U0001d7cf", Tok::One} // 𝟏
    };
    for (const auto& a : aliases) {
      if (starts_with(a.utf8)) {
        tok = a.tok;
        pos += a.utf8.size();
        return;
      }
    }
    if (starts_with("|-")) {
      tok = Tok::Turnstile;
      pos += 2;
      return;
    }
    char c = text[pos];
    switch (c) {
      case '(': tok = Tok::LPar; ++pos; return;
      case ')': tok = Tok::RPar; ++pos; return;
      case '\\': tok = Tok::BSlash; ++pos; return;
      case '/': tok = Tok::Slash; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '&': tok = Tok::Amp; ++pos; return;
      case '|': tok = Tok::Pipe; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      case '1': tok = Tok::One; ++pos; return;
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      size_t start = pos;
      ++pos;
      while (pos < text.size()) {
        char d = text[pos];
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_')
          ++pos;
        else
          break;
      }
      tok = Tok::Var;
      tok_text = std::string(text.substr(start, pos - start));
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
  }
};

struct Parser {
  Lexer lex;
  explicit Parser(std::string_view t) : lex(t) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex.tok_pos); }

  Formula atom() {
    switch (lex.tok) {
      case Tok::Var: {
        Formula f = Formula::var(lex.tok_text);
        lex.advance();
        return f;
      }
      case Tok::One:
        lex.advance();
        return Formula::unit();
      case Tok::LPar: {
        lex.advance();
        Formula f = formula();
        if (lex.tok != Tok::RPar) fail("expected ')'");
        lex.advance();
        return f;
      }
      default:
        fail("expected a variable, '1', or '('");
    }
  }

  Formula prod() {
    Formula f = atom();
    while (lex.tok == Tok::Star) {
      lex.advance();
      f = Formula::prod(f, atom());
    }
    return f;
  }

  Formula div() {
    Formula f = prod();
    if (lex.tok == Tok::BSlash || lex.tok == Tok::Slash) {
      bool back = lex.tok == Tok::BSlash;
      lex.advance();
      Formula g = prod();
      f = back ? Formula::ldiv(f, g) : Formula::rdiv(f, g);
      if (lex.tok == Tok::BSlash || lex.tok == Tok::Slash)
        throw AmbiguityError("ambiguous division chain; add parentheses", lex.tok_pos);
    }
    return f;
  }

  Formula meet() {
    Formula f = div();
    while (lex.tok == Tok::Amp) {
      lex.advance();
      f = Formula::meet(f, div());
    }
    return f;
  }

  Formula formula() {
    Formula f = meet();
    while (lex.tok == Tok::Pipe) {
      lex.advance();
      f = Formula::join(f, meet());
    }
    return f;
  }

  Formula whole_formula() {
    Formula f = formula();
    if (lex.tok != Tok::End) fail("trailing input after formula");
    return f;
  }

  Sequent sequent() {
    std::vector<Formula> ant;
    if (lex.tok != Tok::Turnstile) {
      ant.push_back(formula());
      while (lex.tok == Tok::Comma) {
        lex.advance();
        ant.push_back(formula());
      }
    }
    if (lex.tok != Tok::Turnstile) fail("expected '|-'");
    lex.advance();
    Formula suc = formula();
    if (lex.tok != Tok::End) fail("trailing input after sequent");
    return Sequent{std::move(ant), suc};
  }
};

void render_into(const Formula& f, std::string& out) {
  switch (f.tag()) {
    case Conn::Var:
      out += f.var_name();
      return;
    case Conn::Unit:
      out += '1';
      return;
    default:
      break;
  }
  char op = 0;
  switch (f.tag()) {
    case Conn::Prod: op = '*'; break;
    case Conn::LDiv: op = '\\'; break;
    case Conn::RDiv: op = '/'; break;
    case Conn::Meet: op = '&'; break;
    case Conn::Join: op = '|'; break;
    default: break;
  }
  out += '(';
  render_into(f.left(), out);
  out += op;
  render_into(f.right(), out);
  out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

Sequent parse_sequent(std::string_view text) { return Parser(text).sequent(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::string render(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    render_into(s.antecedent[i], out);
  }
  if (!s.antecedent.empty()) out += ' ';
  out += "|- ";
  render_into(s.succedent, out);
  return out;
}

Formula normalize_commutative(Formula f) {
  switch (f.tag()) {
    case Conn::Var:
    case Conn::Unit:
      return f;
    case Conn::RDiv:
      // B/A reads as A -o B
      return Formula::ldiv(normalize_commutative(f.right()), normalize_commutative(f.left()));
    case Conn::LDiv:
      return Formula::ldiv(normalize_commutative(f.left()), normalize_commutative(f.right()));
    case Conn::Prod:
      return Formula::prod(normalize_commutative(f.left()), normalize_commutative(f.right()));
    case Conn::Meet:
      return Formula::meet(normalize_commutative(f.left()), normalize_commutative(f.right()));
    case Conn::Join:
      return Formula::join(normalize_commutative(f.left()), normalize_commutative(f.right()));
  }
  return f;  // unreachable
}

Sequent normalize_commutative(const Sequent& s) {
  Sequent out{{}, normalize_commutative(s.succedent)};
  out.antecedent.reserve(s.antecedent.size());
  for (const auto& f : s.antecedent) out.antecedent.push_back(normalize_commutative(f));
  return out;
}

bool contains_subformula(Formula f, Formula sub) {
  if (f == sub) return true;
  if (!f.is_binary()) return false;
  return contains_subformula(f.left(), sub) || contains_subformula(f.right(), sub);
}

void collect_variables(Formula f, std::vector<std::string>& out) {
  if (f.tag() == Conn::Var) {
    if (std::find(out.begin(), out.end(), f.var_name()) == out.end()) out.push_back(f.var_name());
    return;
  }
  if (f.is_binary()) {
    collect_variables(f.left(), out);
    collect_variables(f.right(), out);
  }
}

std::vector<std::string> sequent_variables(const Sequent& s) {
  std::vector<std::string> out;
  for (const auto& f : s.antecedent) collect_variables(f, out);
  collect_variables(s.succedent, out);
  return out;
}

bool contains_conn(Formula f, Conn c) {
  if (f.tag() == c) return true;
  if (!f.is_binary()) return false;
  return contains_conn(f.left(), c) || contains_conn(f.right(), c);
}

}  // namespace lambek
