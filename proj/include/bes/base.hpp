#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "bes/syntax.hpp"

namespace bes {

/// One hypothetical premise (P => p) of a rule or clause.
struct Premise {
  AtomSet hyps;
  Atom head;

  friend bool operator==(const Premise&, const Premise&) = default;
  friend auto operator<=>(const Premise&, const Premise&) = default;
};

/// (P1 => p1), ..., (Pn => pn) => c. No premises is the nullary rule => c.
struct AtomicRule {
  std::vector<Premise> premises;
  Atom conclusion;

  bool is_nullary() const { return premises.empty(); }

  friend bool operator==(const AtomicRule&, const AtomicRule&) = default;
  friend auto operator<=>(const AtomicRule&, const AtomicRule&) = default;
};

using Base = std::set<AtomicRule>;

AtomSet atoms_of(const AtomicRule& r);
AtomSet atoms_of(const Base& b);

/// Base file format, one rule per line:
///   => c
///   a, b => r
///   (h1, h2 => p), (h3 => q) => c
/// '#' starts a comment; blank lines are ignored.
Base parse_base(const std::string& text);
AtomicRule parse_rule(const std::string& line);
std::string print_rule(const AtomicRule& r);
std::string print_base(const Base& b);

/// Certificate for P |-_B c.
struct Derivation {
  enum class Kind { Hypothesis, Nullary, Apply };

  Kind kind;
  AtomSet assumptions;
  Atom conclusion;
  std::optional<AtomicRule> rule;
  /// Apply: one per premise, the i-th under assumptions + P_i.
  std::vector<Derivation> children;

  std::size_t size() const;
};

struct DeriveResult {
  bool derivable = false;
  std::optional<Derivation> derivation;
};

/// Decides assumptions |-_b goal, the least relation closed under
/// hypotheses, nullary rules and rule application.
DeriveResult derives(const Base& b, const AtomSet& assumptions, const Atom& goal);

/// Every atom derivable from the assumptions, without certificates.
AtomSet derivable_atoms(const Base& b, const AtomSet& assumptions);

/// Checks a derivation step by step against the three closure conditions.
bool replay(const Base& b, const Derivation& d);

/// Indented text, one judgment per line.
std::string derivation_text(const Derivation& d);

/// {"rule", "assumptions", "conclusion", "children"} tree.
nlohmann::json derivation_json(const Derivation& d);

/// Trace document: derivation_json plus the replay verdict. Throws
/// std::invalid_argument on a structurally malformed tree.
nlohmann::json derivation_trace(const Base& b, const Derivation& d);

}  // namespace bes
