#pragma once

#include <optional>
#include <stdexcept>

#include "bes/base.hpp"
#include "bes/clauses.hpp"
#include "bes/syntax.hpp"

namespace bes {

/// Gamma |=_B phi.
struct SupportQuery {
  Base base;
  Context context;
  Formula formula;
};

struct SupportResult {
  bool verdict = false;
  /// Clause derivation of the flattened formula, when supported.
  std::optional<Derivation> certificate;
  /// Atoms the schematic clauses were instantiated over.
  AtomSet universe;
  /// The instantiated system the certificate lives in.
  ClauseSystem system;
  Atom goal{"_"};
};

/// Decides support through the clausal correspondence: the base's clauses
/// plus the modified system for context and formula, instantiated over the
/// flattening range, bot_atom, the base's atoms and one fresh atom. Context
/// formulas enter as hypotheses. `extra_fresh` adds further fresh atoms to
/// the universe; verdicts must not depend on it.
SupportResult supports(const SupportQuery& q, std::size_t extra_fresh = 0);

/// Support in the empty base, i.e. validity.
bool valid(const Context& context, const Formula& f);

/// The atomic row: support of an atom is derivability in the base.
bool support_atomic(const Base& b, const AtomSet& hyps, const Atom& p);

/// Limits for the direct evaluator.
struct Bounds {
  AtomSet atom_universe;
  /// Largest number of rules an extension may add to the query base.
  std::size_t max_rules = 2;
  std::size_t max_premises = 1;
  /// 0: premises without hypotheses; 1: hypotheses allowed.
  int premise_depth = 1;
};

struct BoundsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Rules over the universe the evaluator extends bases with. Rules whose
/// behaviour is already covered by a smaller rule in the universe are left
/// out: a premise (H => h) with h in H always holds, and a bare premise
/// equal to the conclusion makes a rule inert.
std::vector<AtomicRule> extension_rules(const Bounds& bounds);

/// Evaluates the support clauses literally. Quantification over extensions
/// ranges over the query base plus at most max_rules rules from
/// extension_rules(bounds); quantification over basic sentences ranges over
/// the atom universe. Throws BoundsError when query atoms fall outside the
/// universe or the extension lattice is too large to enumerate.
bool bounded_eval(const SupportQuery& q, const Bounds& bounds);

}  // namespace bes
