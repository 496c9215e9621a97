#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bes/base.hpp"
#include "bes/clauses.hpp"
#include "bes/syntax.hpp"

namespace bes {

struct Sequent {
  Context assumptions;
  Formula goal;
};

/// "G1, G2 |- F".
std::string print_sequent(const Sequent& s);

/// A sequent-calculus proof tree. Rule names follow the contraction-free
/// calculus: ax, L_bot, L_and, L_or, L_imp_atom, L_imp_bot, L_imp_and,
/// L_imp_or, L_imp_imp, R_and, R_imp, R_or1, R_or2.
struct SequentProof {
  std::string rule;
  Sequent sequent;
  std::vector<SequentProof> children;

  std::size_t size() const;
};

struct OracleOptions {
#ifdef NDEBUG
  bool check_termination = false;
#else
  bool check_termination = true;
#endif
};

struct OracleResult {
  bool provable = false;
  std::optional<SequentProof> proof;
};

/// Decides intuitionistic provability with a contraction-free sequent
/// calculus. With check_termination set, every rule application is checked
/// to strictly decrease the multiset of sequent weights.
OracleResult oracle_prove(const Sequent& s, const OracleOptions& opts = {});

inline bool provable(const Formula& f) { return oracle_prove({{}, f}).provable; }

/// Checks every step of a proof against the rule it names.
bool check_sequent_proof(const SequentProof& p);

nlohmann::json sequent_proof_json(const SequentProof& p);

/// hyps + system |- goal. Throws std::invalid_argument on schematic clauses.
DeriveResult clause_derives(const ClauseSystem& system, const AtomSet& hyps, const Atom& goal);

/// Goals over atoms, /\ and ->. Implication antecedents become hypotheses
/// (atoms) or extra clauses; conjunctions split; atoms go to clause_derives.
bool decide_goal(const ClauseSystem& system, const AtomSet& hyps, const Formula& goal);

/// Formulas of the clauses plus the hypotheses, as a sequent for the oracle.
Sequent clause_sequent(const ClauseSystem& system, const AtomSet& hyps, const Formula& goal);

}  // namespace bes
