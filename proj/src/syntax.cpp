#include "bes/syntax.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace bes {

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw std::invalid_argument("atom name must be nonempty");
  if (name_ == kAbsurdToken) throw std::invalid_argument("'bot' is not a basic sentence");
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != kAbsurdToken;
}

bool Atom::is_identifier() const { return bes::is_identifier(name_); }

namespace {

Formula make_binary(Connective k, Formula lhs, Formula rhs);

}  // namespace

Formula Formula::atom(const Atom& a) {
  return Formula(std::make_shared<const detail::FormulaNode>(
      detail::FormulaNode{Connective::Atomic, a, std::nullopt, std::nullopt, 1}));
}

Formula Formula::absurd() {
  static const Formula bot(std::make_shared<const detail::FormulaNode>(
      detail::FormulaNode{Connective::Absurd, std::nullopt, std::nullopt, std::nullopt, 1}));
  return bot;
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      Connective::Conj, std::nullopt, lhs, rhs, lhs.node_count() + rhs.node_count() + 1}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      Connective::Disj, std::nullopt, lhs, rhs, lhs.node_count() + rhs.node_count() + 1}));
}

Formula Formula::impl(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const detail::FormulaNode>(detail::FormulaNode{
      Connective::Impl, std::nullopt, lhs, rhs, lhs.node_count() + rhs.node_count() + 1}));
}

Formula Formula::neg(Formula f) { return impl(std::move(f), absurd()); }

namespace {

Formula make_binary(Connective k, Formula lhs, Formula rhs) {
  switch (k) {
    case Connective::Conj: return Formula::conj(std::move(lhs), std::move(rhs));
    case Connective::Disj: return Formula::disj(std::move(lhs), std::move(rhs));
    case Connective::Impl: return Formula::impl(std::move(lhs), std::move(rhs));
    default: throw std::logic_error("make_binary: not a binary connective");
  }
}

}  // namespace

Connective Formula::kind() const { return node_->kind; }

bool Formula::is_composite() const {
  auto k = kind();
  return k == Connective::Conj || k == Connective::Disj || k == Connective::Impl;
}

const Atom& Formula::atom_value() const {
  if (!node_->atom) throw std::logic_error("atom_value on non-atomic formula");
  return *node_->atom;
}

const Formula& Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("lhs on non-composite formula");
  return *node_->lhs;
}

const Formula& Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("rhs on non-composite formula");
  return *node_->rhs;
}

std::size_t Formula::node_count() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Connective::Absurd: return std::strong_ordering::equal;
    case Connective::Atomic: return a.atom_value() <=> b.atom_value();
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

ParseError::ParseError(std::size_t off, const std::string& msg)
    : std::runtime_error("offset " + std::to_string(off) + ": " + msg), offset(off) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Bot, Not, And, Or, Arrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::Bot: return "'bot'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, two, i});
      i += 2;
    } else if (two == "/\\") {
      out.push_back({Tok::And, two, i});
      i += 2;
    } else if (two == "\\/") {
      out.push_back({Tok::Or, two, i});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, "~", i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word = s.substr(i, j - i);
      out.push_back({word == kAbsurdToken ? Tok::Bot : Tok::Ident, word, i});
      i = j;
    } else {
      throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_impl();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  void expect(Tok t, const std::string& what) {
    if (peek().kind != t)
      throw ParseError(peek().offset, "expected " + what + ", found " + describe(peek().kind));
    ++pos_;
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Formula::impl(lhs, parse_impl());
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = Formula::disj(f, parse_conj());
    }
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        ++pos_;
        return Formula::neg(parse_unary());
      case Tok::Bot:
        ++pos_;
        return Formula::absurd();
      case Tok::Ident:
        ++pos_;
        return Formula::atom(Atom(t.text));
      case Tok::LParen: {
        ++pos_;
        Formula f = parse_impl();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw ParseError(t.offset, std::string("expected atom, 'bot', '~' or '(', found ") +
                                       describe(t.kind));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(tokenize(text)).parse_all(); }

Context parse_context(const std::string& text) {
  Context ctx;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        ctx.insert(parse_formula(piece));
      } catch (const ParseError& e) {
        throw ParseError(start + e.offset, e.what());
      }
    }
    start = end + 1;
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength; higher binds tighter.
int level(const Formula& f) {
  switch (f.kind()) {
    case Connective::Impl: return f.rhs().is_absurd() ? 4 : 1;
    case Connective::Disj: return 2;
    case Connective::Conj: return 3;
    default: return 5;
  }
}

void print_into(std::ostringstream& os, const Formula& f, int min_level) {
  bool parens = level(f) < min_level;
  if (parens) os << '(';
  switch (f.kind()) {
    case Connective::Atomic: os << f.atom_value().name(); break;
    case Connective::Absurd: os << kAbsurdToken; break;
    case Connective::Conj:
      print_into(os, f.lhs(), 3);
      os << " /\\ ";
      print_into(os, f.rhs(), 4);
      break;
    case Connective::Disj:
      print_into(os, f.lhs(), 2);
      os << " \\/ ";
      print_into(os, f.rhs(), 3);
      break;
    case Connective::Impl:
      if (f.rhs().is_absurd()) {
        os << '~';
        print_into(os, f.lhs(), 4);
      } else {
        print_into(os, f.lhs(), 2);
        os << " -> ";
        print_into(os, f.rhs(), 1);
      }
      break;
  }
  if (parens) os << ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_into(os, f, 0);
  return os.str();
}

std::string print_context(const Context& ctx) {
  std::string out;
  for (const auto& f : ctx) {
    if (!out.empty()) out += "; ";
    out += print_formula(f);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> order;
  std::set<Formula> seen;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (g.is_composite()) {
      visit(g.lhs());
      visit(g.rhs());
    }
    if (seen.insert(g).second) order.push_back(g);
  };
  visit(f);
  return order;
}

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  for (const auto& g : subformulas(f))
    if (g.is_atomic()) out.insert(g.atom_value());
  return out;
}

std::size_t weight(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atomic: return 0;
    case Connective::Absurd: return 1;
    default: return weight(f.lhs()) + weight(f.rhs()) + 1;
  }
}

namespace {

bool bot_normal_at(const Formula& f, bool conclusion_position) {
  switch (f.kind()) {
    case Connective::Atomic: return true;
    case Connective::Absurd: return conclusion_position;
    case Connective::Impl: return bot_normal_at(f.lhs(), false) && bot_normal_at(f.rhs(), true);
    default: return bot_normal_at(f.lhs(), false) && bot_normal_at(f.rhs(), false);
  }
}

Formula normalize_at(const Formula& f, bool conclusion_position) {
  switch (f.kind()) {
    case Connective::Atomic: return f;
    case Connective::Absurd: {
      if (conclusion_position) return f;
      Formula z = Formula::atom(normalizer_atom());
      return Formula::impl(Formula::impl(z, z), Formula::absurd());
    }
    case Connective::Impl:
      return Formula::impl(normalize_at(f.lhs(), false), normalize_at(f.rhs(), true));
    default:
      return make_binary(f.kind(), normalize_at(f.lhs(), false), normalize_at(f.rhs(), false));
  }
}

}  // namespace

bool is_bot_normal(const Formula& f) { return bot_normal_at(f, false); }

Atom normalizer_atom() { return Atom("z"); }

Formula normalize_bot(const Formula& f) {
  if (is_bot_normal(f)) return f;
  return normalize_at(f, false);
}

Formula substitute_bot(const Formula& f, const Atom& a) {
  switch (f.kind()) {
    case Connective::Atomic: return f;
    case Connective::Absurd: return Formula::atom(a);
    default: return make_binary(f.kind(), substitute_bot(f.lhs(), a), substitute_bot(f.rhs(), a));
  }
}

}  // namespace bes
