#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bes/syntax.hpp"

namespace bes {

/// Finite Kripke model; world 0 is the root.
struct KripkeModel {
  std::size_t worlds = 1;
  /// order[w][v] iff w <= v. Reflexive and transitive.
  std::vector<std::vector<bool>> order;
  std::vector<AtomSet> valuation;

  /// Reflexive, transitive, rooted at 0 and persistent.
  bool well_formed() const;
};

bool forces(const KripkeModel& m, std::size_t world, const Formula& f);

/// Exhaustive search over rooted posets with at most max_worlds worlds and
/// persistent valuations on the atoms of f. A returned model has been
/// re-checked with `forces` and fails f at its root.
std::optional<KripkeModel> kripke_refute(const Formula& f, std::size_t max_worlds);

std::string print_model(const KripkeModel& m);
nlohmann::json model_json(const KripkeModel& m);

}  // namespace bes
