#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bes {

/// A basic sentence. Any nonempty name except the absurdity token "bot".
///
/// User-facing names follow the identifier grammar (letter, then letters,
/// digits or underscores). Generated names ("#3", the schematic slot "?x")
/// live outside that grammar so they can never clash with parsed atoms.
class Atom {
 public:
  explicit Atom(std::string name);

  const std::string& name() const { return name_; }

  /// True if the name matches the identifier grammar.
  bool is_identifier() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

using AtomSet = std::set<Atom>;

bool is_identifier(const std::string& s);

inline constexpr const char* kAbsurdToken = "bot";

enum class Connective { Atomic, Absurd, Conj, Disj, Impl };

class Formula;

namespace detail {
struct FormulaNode;
}

/// Immutable propositional formula over atoms, bot, /\, \/ and ->.
/// Copies share structure; equality and ordering are syntactic.
class Formula {
 public:
  static Formula atom(const Atom& a);
  static Formula atom(const std::string& name) { return atom(Atom(name)); }
  static Formula absurd();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula impl(Formula lhs, Formula rhs);
  /// ~f, i.e. f -> bot.
  static Formula neg(Formula f);

  Connective kind() const;
  bool is_atomic() const { return kind() == Connective::Atomic; }
  bool is_absurd() const { return kind() == Connective::Absurd; }
  bool is_composite() const;

  /// Only valid on atomic formulas.
  const Atom& atom_value() const;
  /// Only valid on composite formulas.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t node_count() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  Connective kind;
  std::optional<Atom> atom;
  std::optional<Formula> lhs, rhs;
  std::size_t size;
};
}  // namespace detail

/// A finite set of formulas (Gamma on the left of a support judgment).
using Context = std::set<Formula>;

struct ParseError : std::runtime_error {
  ParseError(std::size_t offset, const std::string& msg);
  std::size_t offset;
};

/// The absurdity token appeared where a basic sentence is required.
struct ReservedTokenError : ParseError {
  using ParseError::ParseError;
};

/// Grammar, loosest to tightest:
///   formula := disj ['->' formula]
///   disj    := conj {'\/' conj}
///   conj    := unary {'/\' unary}
///   unary   := '~' unary | 'bot' | identifier | '(' formula ')'
Formula parse_formula(const std::string& text);

/// "f1; f2; ..." (empty text is the empty context).
Context parse_context(const std::string& text);

/// Canonical text with minimal parentheses. f -> bot prints as ~f.
std::string print_formula(const Formula& f);

std::string print_context(const Context& ctx);

/// Every distinct subformula, children before parents, left before right.
std::vector<Formula> subformulas(const Formula& f);

AtomSet atoms_of(const Formula& f);

/// Logical weight: 0 for atoms, 1 for bot, w(a)+w(b)+1 for binary connectives.
std::size_t weight(const Formula& f);

/// True when bot occurs only as the right operand of an implication.
bool is_bot_normal(const Formula& f);

/// Atom used by normalize_bot.
Atom normalizer_atom();

/// Rewrites each bot outside implication-conclusion position to
/// (z -> z) -> bot. Idempotent.
Formula normalize_bot(const Formula& f);

/// f[a/bot].
Formula substitute_bot(const Formula& f, const Atom& a);

}  // namespace bes
