#include "bes/support.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>

#include "bes/prover.hpp"

namespace bes {

SupportResult supports(const SupportQuery& q, std::size_t extra_fresh) {
  std::vector<Formula> roots;
  for (const auto& g : q.context) roots.push_back(normalize_bot(g));
  Formula target = normalize_bot(q.formula);
  roots.push_back(target);

  AtomSet base_atoms = atoms_of(q.base);
  FlatSystem n = modified_system(roots, base_atoms);

  AtomSet universe = n.map.range();
  universe.insert(n.map.bot_atom());
  universe.insert(base_atoms.begin(), base_atoms.end());
  for (std::size_t i = 0; i <= extra_fresh; ++i) universe.insert(n.map.fresh(base_atoms, i));

  ClauseSystem system = merge(instantiate_system(n.system, universe), base_to_clauses(q.base));
  AtomSet hyps;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) hyps.insert(n.map[roots[i]]);

  SupportResult out;
  out.goal = n.map[target];
  auto r = clause_derives(system, hyps, out.goal);
  out.verdict = r.derivable;
  out.certificate = std::move(r.derivation);
  out.universe = std::move(universe);
  out.system = std::move(system);
  return out;
}

bool valid(const Context& context, const Formula& f) { return supports({{}, context, f}).verdict; }

bool support_atomic(const Base& b, const AtomSet& hyps, const Atom& p) {
  return derives(b, hyps, p).derivable;
}

// ---------------------------------------------------------------------------
// Direct evaluation over a finite extension lattice

std::vector<AtomicRule> extension_rules(const Bounds& bounds) {
  std::vector<Atom> atoms(bounds.atom_universe.begin(), bounds.atom_universe.end());
  std::vector<Premise> options;
  const std::size_t n = atoms.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (bounds.premise_depth == 0 && mask != 0) break;
    AtomSet hyps;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) hyps.insert(atoms[i]);
    for (const auto& h : atoms)
      if (!hyps.count(h)) options.push_back({hyps, h});
  }

  std::vector<AtomicRule> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    for (const auto& c : atoms) {
      bool inert = false;
      AtomicRule r{{}, c};
      for (std::size_t i : pick) {
        r.premises.push_back(options[i]);
        inert = inert || (options[i].hyps.empty() && options[i].head == c);
      }
      if (!inert) out.push_back(std::move(r));
    }
    if (pick.size() == bounds.max_premises) return;
    for (std::size_t i = from; i < options.size(); ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return out;
}

namespace {

class BoundedEvaluator {
 public:
  BoundedEvaluator(const SupportQuery& q, const Bounds& bounds) : query_(q), bounds_(bounds) {
    AtomSet needed = atoms_of(q.formula);
    for (const auto& g : q.context) needed.merge(atoms_of(g));
    needed.merge(atoms_of(q.base));
    for (const auto& a : needed)
      if (!bounds.atom_universe.count(a))
        throw BoundsError("bounded_eval: atom " + a.name() + " outside the atom universe");
    if (bounds.atom_universe.size() > 16) throw BoundsError("bounded_eval: atom universe too large");

    for (const auto& a : bounds.atom_universe) {
      atom_index_.emplace(a, universe_.size());
      universe_.push_back(a);
    }
    all_atoms_ = (std::uint32_t{1} << universe_.size()) - 1;

    for (auto& r : extension_rules(bounds))
      if (!q.base.count(r)) rules_.push_back(std::move(r));
    if (rules_.size() > 40) throw BoundsError("bounded_eval: extension rule universe too large");
    cap_ = std::min(bounds.max_rules, rules_.size());

    // Rough size of the lattice: refuse anything beyond a few million worlds.
    double worlds = 0, term = 1;
    for (std::size_t k = 0; k <= cap_; ++k) {
      worlds += term;
      term = term * double(rules_.size() - k) / double(k + 1);
    }
    if (worlds > 4e6) throw BoundsError("bounded_eval: extension lattice too large");
  }

  bool run() {
    std::vector<int> ctx;
    for (const auto& g : query_.context) ctx.push_back(intern(g));
    int target = intern(query_.formula);
    if (ctx.empty()) return support(0, target);
    return for_all_extensions(0, [&](std::uint64_t w) {
      for (int g : ctx)
        if (!support(w, g)) return true;
      return support(w, target);
    });
  }

 private:
  struct Node {
    Connective k;
    std::size_t atom = 0;
    int l = -1, r = -1;
  };

  int intern(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    Node n{f.kind()};
    if (f.is_atomic()) n.atom = atom_index_.at(f.atom_value());
    if (f.is_composite()) {
      n.l = intern(f.lhs());
      n.r = intern(f.rhs());
    }
    if (nodes_.size() >= 127) throw BoundsError("bounded_eval: formula too large");
    nodes_.push_back(n);
    int id = static_cast<int>(nodes_.size()) - 1;
    ids_.emplace(f, id);
    return id;
  }

  template <class Pred>
  bool for_all_extensions(std::uint64_t world, Pred&& pred) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (!(world >> i & 1)) free.push_back(i);
    std::size_t room = cap_ - static_cast<std::size_t>(std::popcount(world));
    // Every superset of `world` adding at most `room` rules.
    std::function<bool(std::size_t, std::uint64_t, std::size_t)> walk =
        [&](std::size_t from, std::uint64_t w, std::size_t left) {
          if (!pred(w)) return false;
          if (left == 0) return true;
          for (std::size_t i = from; i < free.size(); ++i)
            if (!walk(i + 1, w | (std::uint64_t{1} << free[i]), left - 1)) return false;
          return true;
        };
    return walk(0, world, room);
  }

  std::uint32_t derivable(std::uint64_t world) {
    if (auto it = derivable_.find(world); it != derivable_.end()) return it->second;
    Base b = query_.base;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (world >> i & 1) b.insert(rules_[i]);
    std::uint32_t bits = 0;
    for (const auto& a : derivable_atoms(b, {})) {
      auto it = atom_index_.find(a);
      if (it != atom_index_.end()) bits |= std::uint32_t{1} << it->second;
    }
    derivable_.emplace(world, bits);
    return bits;
  }

  static std::uint64_t key(std::uint64_t world, int node, int extra) {
    return world * 4096 + static_cast<std::uint64_t>(node) * 32 + static_cast<std::uint64_t>(extra);
  }

  bool support(std::uint64_t world, int id) {
    auto k = key(world, id, 31);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    const Node n = nodes_[id];
    bool v = false;
    switch (n.k) {
      case Connective::Atomic: v = derivable(world) >> n.atom & 1; break;
      case Connective::Absurd: v = derivable(world) == all_atoms_; break;
      case Connective::Conj: v = support(world, n.l) && support(world, n.r); break;
      case Connective::Impl:
        v = for_all_extensions(world, [&](std::uint64_t w) { return !support(w, n.l) || support(w, n.r); });
        break;
      case Connective::Disj:
        v = for_all_extensions(world, [&](std::uint64_t w) {
          for (std::size_t x = 0; x < universe_.size(); ++x)
            if (entails_atom(w, n.l, x) && entails_atom(w, n.r, x) && !(derivable(w) >> x & 1)) return false;
          return true;
        });
        break;
    }
    memo_.emplace(k, v);
    return v;
  }

  // phi |=_world x
  bool entails_atom(std::uint64_t world, int id, std::size_t x) {
    auto k = key(world, id, static_cast<int>(x));
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    bool v = for_all_extensions(world, [&](std::uint64_t w) { return !support(w, id) || (derivable(w) >> x & 1); });
    memo_.emplace(k, v);
    return v;
  }

  const SupportQuery& query_;
  Bounds bounds_;
  std::vector<Atom> universe_;
  std::map<Atom, std::size_t> atom_index_;
  std::uint32_t all_atoms_ = 0;
  std::vector<AtomicRule> rules_;
  std::size_t cap_ = 0;
  std::vector<Node> nodes_;
  std::map<Formula, int> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> derivable_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

bool bounded_eval(const SupportQuery& q, const Bounds& bounds) { return BoundedEvaluator(q, bounds).run(); }

}  // namespace bes
