#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bes/base.hpp"
#include "bes/syntax.hpp"

namespace bes {

/// (/\P1 -> p1) /\ ... /\ (/\Pn -> pn) -> c. No premises denotes the bare
/// atom c; an empty P_i denotes the bare atom p_i.
struct GeneralClause {
  std::vector<Premise> premises;
  Atom conclusion;

  friend bool operator==(const GeneralClause&, const GeneralClause&) = default;
  friend auto operator<=>(const GeneralClause&, const GeneralClause&) = default;
};

/// Placeholder atom in schematic clauses.
Atom schematic_slot();

struct ClauseSystem {
  std::set<GeneralClause> clauses;
  /// Templates mentioning schematic_slot(), one instance per universe atom.
  std::set<GeneralClause> schematics;

  bool is_instantiated() const { return schematics.empty(); }
};

AtomSet atoms_of(const GeneralClause& c);
AtomSet atoms_of(const ClauseSystem& s);

/// The formula a clause denotes. Conjunctions nest to the left in premise
/// order; hypothesis sets are conjoined in atom order.
Formula as_formula(const GeneralClause& c);

/// Inverse of as_formula up to currying: accepts c, A -> c and A -> (B -> c)
/// where A, B are conjunctions of atoms or of (/\H -> h). Throws
/// std::invalid_argument for anything else.
GeneralClause formula_to_clause(const Formula& f);

std::string print_clause(const GeneralClause& c);

/// [r]: nullary rules become bare atoms.
GeneralClause rule_to_clause(const AtomicRule& r);
AtomicRule clause_to_rule(const GeneralClause& c);
ClauseSystem base_to_clauses(const Base& b);
/// Requires an instantiated system.
Base clauses_to_base(const ClauseSystem& s);

/// The flattening injection from subformulas to basic sentences.
class FlatMap {
 public:
  /// Subformulas in enumeration order, each with its image.
  const std::vector<std::pair<Formula, Atom>>& entries() const { return entries_; }

  const Atom& operator[](const Formula& f) const;
  bool contains(const Formula& f) const { return index_.count(f) > 0; }

  const Atom& bot_atom() const { return bot_; }
  const Atom& fresh_y() const { return y_; }

  /// X: images of the subformulas.
  AtomSet range() const;
  /// Composite subformulas in enumeration order.
  std::vector<Formula> composites() const;

  /// A generated name absent from the range, bot_atom, fresh_y and `avoid`.
  Atom fresh(const AtomSet& avoid, std::size_t skip = 0) const;

 private:
  friend FlatMap flatten(std::span<const Formula> roots, const AtomSet& avoid);

  std::vector<std::pair<Formula, Atom>> entries_;
  std::map<Formula, std::size_t> index_;
  Atom bot_{"#bot"};
  Atom y_{"#y"};
  std::size_t next_ = 1;
};

/// Names composite subformulas "#1", "#2", ... in subformula order, then
/// allocates bot_atom and fresh_y. Atoms map to themselves. Inputs must be
/// bot-normal.
FlatMap flatten(const Formula& f);
/// Joint flattening; subformulas of earlier roots come first. Generated
/// names also avoid `avoid`.
FlatMap flatten(std::span<const Formula> roots, const AtomSet& avoid = {});

/// M_inst(chi) for one composite subformula.
std::set<GeneralClause> clauses_for(const Formula& chi, const FlatMap& m, const AtomSet& inst);

struct FlatSystem {
  ClauseSystem system;
  FlatMap map;
  Atom goal;
};

/// M_X over X = range of the flattening, plus the absurdity clauses.
FlatSystem mints_system(const Formula& f);

/// N: disjunction elimination and bot_atom -> x left schematic in x.
FlatSystem modified_system(const Formula& f);
FlatSystem modified_system(std::span<const Formula> roots, const AtomSet& avoid = {});

/// Expands each schematic once per universe atom.
ClauseSystem instantiate_system(const ClauseSystem& c, const AtomSet& universe);

ClauseSystem merge(const ClauseSystem& a, const ClauseSystem& b);

enum class MintsClassification { ImplicationNested, DisjunctiveHead, Horn, General };

const char* to_string(MintsClassification c);

/// Shapes (p -> q*) -> r and (p1 /\ ... /\ pn) -> q*. The q* slot accepts
/// any atom, bot_atom included. Clause heads are atoms, so DisjunctiveHead
/// is never produced.
MintsClassification classify(const GeneralClause& c);

nlohmann::json clause_json(const GeneralClause& c);
nlohmann::json system_json(const ClauseSystem& s);
/// One clause per line, schematics marked with a leading "forall ?x.".
std::string system_text(const ClauseSystem& s);

}  // namespace bes
