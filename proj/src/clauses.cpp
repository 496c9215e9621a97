#include "bes/clauses.hpp"

#include <stdexcept>

namespace bes {

Atom schematic_slot() { return Atom("?x"); }

AtomSet atoms_of(const GeneralClause& c) { return atoms_of(clause_to_rule(c)); }

AtomSet atoms_of(const ClauseSystem& s) {
  AtomSet out;
  for (const auto& c : s.clauses) out.merge(atoms_of(c));
  for (const auto& c : s.schematics) out.merge(atoms_of(c));
  out.erase(schematic_slot());
  return out;
}

namespace {

Formula conjoin(const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conj(out, parts[i]);
  return out;
}

Formula premise_formula(const Premise& p) {
  if (p.hyps.empty()) return Formula::atom(p.head);
  std::vector<Formula> hs;
  for (const auto& h : p.hyps) hs.push_back(Formula::atom(h));
  return Formula::impl(conjoin(hs), Formula::atom(p.head));
}

void flatten_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Connective::Conj) {
    flatten_conj(f.lhs(), out);
    flatten_conj(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

[[noreturn]] void not_a_clause(const Formula& f) {
  throw std::invalid_argument("not a clause: " + print_formula(f));
}

AtomSet atom_conjunction(const Formula& f, const Formula& whole) {
  std::vector<Formula> parts;
  flatten_conj(f, parts);
  AtomSet out;
  for (const auto& p : parts) {
    if (!p.is_atomic()) not_a_clause(whole);
    out.insert(p.atom_value());
  }
  return out;
}

void collect_premises(const Formula& antecedent, const Formula& whole, std::vector<Premise>& out) {
  std::vector<Formula> parts;
  flatten_conj(antecedent, parts);
  for (const auto& p : parts) {
    if (p.is_atomic()) {
      out.push_back({{}, p.atom_value()});
    } else if (p.kind() == Connective::Impl && p.rhs().is_atomic()) {
      out.push_back({atom_conjunction(p.lhs(), whole), p.rhs().atom_value()});
    } else {
      not_a_clause(whole);
    }
  }
}

}  // namespace

Formula as_formula(const GeneralClause& c) {
  if (c.premises.empty()) return Formula::atom(c.conclusion);
  std::vector<Formula> ps;
  for (const auto& p : c.premises) ps.push_back(premise_formula(p));
  return Formula::impl(conjoin(ps), Formula::atom(c.conclusion));
}

GeneralClause formula_to_clause(const Formula& f) {
  if (f.is_atomic()) return {{}, f.atom_value()};
  GeneralClause c{{}, Atom("_")};
  Formula cur = f;
  while (cur.kind() == Connective::Impl) {
    collect_premises(cur.lhs(), f, c.premises);
    cur = cur.rhs();
  }
  if (!cur.is_atomic() || c.premises.empty()) not_a_clause(f);
  c.conclusion = cur.atom_value();
  return c;
}

std::string print_clause(const GeneralClause& c) { return print_formula(as_formula(c)); }

GeneralClause rule_to_clause(const AtomicRule& r) { return {r.premises, r.conclusion}; }

AtomicRule clause_to_rule(const GeneralClause& c) { return {c.premises, c.conclusion}; }

ClauseSystem base_to_clauses(const Base& b) {
  ClauseSystem s;
  for (const auto& r : b) s.clauses.insert(rule_to_clause(r));
  return s;
}

Base clauses_to_base(const ClauseSystem& s) {
  if (!s.is_instantiated()) throw std::invalid_argument("clause system still has schematic clauses");
  Base b;
  for (const auto& c : s.clauses) b.insert(clause_to_rule(c));
  return b;
}

// ---------------------------------------------------------------------------
// Flattening

const Atom& FlatMap::operator[](const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) throw std::out_of_range("not a flattened subformula: " + print_formula(f));
  return entries_[it->second].second;
}

AtomSet FlatMap::range() const {
  AtomSet out;
  for (const auto& [f, a] : entries_) out.insert(a);
  return out;
}

std::vector<Formula> FlatMap::composites() const {
  std::vector<Formula> out;
  for (const auto& [f, a] : entries_)
    if (f.is_composite()) out.push_back(f);
  return out;
}

Atom FlatMap::fresh(const AtomSet& avoid, std::size_t skip) const {
  AtomSet taken = range();
  taken.insert(bot_);
  taken.insert(y_);
  for (std::size_t k = next_;; ++k) {
    Atom a("#" + std::to_string(k));
    if (taken.count(a) || avoid.count(a)) continue;
    if (skip-- == 0) return a;
  }
}

FlatMap flatten(const Formula& f) { return flatten(std::span<const Formula>(&f, 1)); }

FlatMap flatten(std::span<const Formula> roots, const AtomSet& avoid) {
  FlatMap m;
  std::vector<Formula> xi;
  std::set<Formula> seen;
  AtomSet source_atoms = avoid;
  for (const auto& r : roots) {
    if (!is_bot_normal(r))
      throw std::invalid_argument("flatten: bot outside conclusion position in " + print_formula(r));
    source_atoms.merge(atoms_of(r));
    for (const auto& g : subformulas(r))
      if (seen.insert(g).second) xi.push_back(g);
  }

  std::size_t k = 1;
  auto next_name = [&] {
    for (;; ++k) {
      Atom a("#" + std::to_string(k));
      if (!source_atoms.count(a)) {
        ++k;
        return a;
      }
    }
  };

  std::map<Formula, Atom> names;
  for (const auto& g : xi)
    if (g.is_composite()) names.emplace(g, next_name());
  m.bot_ = next_name();
  m.y_ = next_name();
  m.next_ = k;

  for (const auto& g : xi) {
    Atom image = g.is_atomic() ? g.atom_value() : g.is_absurd() ? m.bot_ : names.at(g);
    m.index_.emplace(g, m.entries_.size());
    m.entries_.emplace_back(g, image);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Clause generators

namespace {

Premise bare(const Atom& a) { return {{}, a}; }

GeneralClause implies(const Atom& from, const Atom& to) { return {{bare(from)}, to}; }

}  // namespace

std::set<GeneralClause> clauses_for(const Formula& chi, const FlatMap& m, const AtomSet& inst) {
  if (!chi.is_composite()) throw std::invalid_argument("clauses_for: not a composite subformula");
  if (!m.contains(chi)) throw std::invalid_argument("clauses_for: outside the flattening domain");
  if (inst.empty()) throw std::invalid_argument("clauses_for: empty instantiation set");

  const Atom& self = m[chi];
  const Atom& left = m[chi.lhs()];
  const Atom& right = m[chi.rhs()];
  std::set<GeneralClause> out;
  switch (chi.kind()) {
    case Connective::Conj:
      out.insert(implies(self, left));
      out.insert(implies(self, right));
      out.insert({{bare(left), bare(right)}, self});
      break;
    case Connective::Disj:
      out.insert(implies(left, self));
      out.insert(implies(right, self));
      for (const auto& x : inst) out.insert({{bare(self), {{left}, x}, {{right}, x}}, x});
      break;
    case Connective::Impl:
      out.insert({{bare(self), bare(left)}, right});
      out.insert({{{{left}, right}}, self});
      break;
    default: break;
  }
  return out;
}

FlatSystem mints_system(const Formula& f) {
  FlatMap m = flatten(f);
  AtomSet X = m.range();
  ClauseSystem s;
  for (const auto& chi : m.composites()) s.clauses.merge(clauses_for(chi, m, X));

  GeneralClause all_to_bot{{}, m.bot_atom()};
  for (const auto& x : X) all_to_bot.premises.push_back(bare(x));
  all_to_bot.premises.push_back(bare(m.fresh_y()));
  s.clauses.insert(all_to_bot);
  s.clauses.insert(implies(m.bot_atom(), m.fresh_y()));
  for (const auto& x : X) s.clauses.insert(implies(m.bot_atom(), x));

  Atom goal = m[f];
  return {std::move(s), std::move(m), std::move(goal)};
}

FlatSystem modified_system(const Formula& f) {
  return modified_system(std::span<const Formula>(&f, 1));
}

FlatSystem modified_system(std::span<const Formula> roots, const AtomSet& avoid) {
  FlatMap m = flatten(roots, avoid);
  Atom slot = schematic_slot();
  ClauseSystem s;
  for (const auto& chi : m.composites()) {
    for (auto& c : clauses_for(chi, m, {slot})) {
      if (atoms_of(clause_to_rule(c)).count(slot))
        s.schematics.insert(c);
      else
        s.clauses.insert(c);
    }
  }
  s.schematics.insert(implies(m.bot_atom(), slot));
  Atom goal = m[roots.back()];
  return {std::move(s), std::move(m), std::move(goal)};
}

namespace {

Atom subst(const Atom& a, const Atom& slot, const Atom& x) { return a == slot ? x : a; }

GeneralClause instantiate(const GeneralClause& c, const Atom& x) {
  Atom slot = schematic_slot();
  GeneralClause out{{}, subst(c.conclusion, slot, x)};
  for (const auto& p : c.premises) {
    Premise q{{}, subst(p.head, slot, x)};
    for (const auto& h : p.hyps) q.hyps.insert(subst(h, slot, x));
    out.premises.push_back(std::move(q));
  }
  return out;
}

}  // namespace

ClauseSystem instantiate_system(const ClauseSystem& c, const AtomSet& universe) {
  if (universe.empty()) throw std::invalid_argument("instantiate_system: empty universe");
  if (universe.count(schematic_slot()))
    throw std::invalid_argument("instantiate_system: universe contains the schematic slot");
  ClauseSystem out{c.clauses, {}};
  for (const auto& t : c.schematics)
    for (const auto& x : universe) out.clauses.insert(instantiate(t, x));
  return out;
}

ClauseSystem merge(const ClauseSystem& a, const ClauseSystem& b) {
  ClauseSystem out = a;
  out.clauses.insert(b.clauses.begin(), b.clauses.end());
  out.schematics.insert(b.schematics.begin(), b.schematics.end());
  return out;
}

const char* to_string(MintsClassification c) {
  switch (c) {
    case MintsClassification::ImplicationNested: return "implication-nested";
    case MintsClassification::DisjunctiveHead: return "disjunctive-head";
    case MintsClassification::Horn: return "horn";
    case MintsClassification::General: return "general";
  }
  return "?";
}

MintsClassification classify(const GeneralClause& c) {
  bool all_bare = true;
  for (const auto& p : c.premises) all_bare = all_bare && p.hyps.empty();
  if (all_bare) return MintsClassification::Horn;
  if (c.premises.size() == 1 && c.premises[0].hyps.size() == 1)
    return MintsClassification::ImplicationNested;
  return MintsClassification::General;
}

nlohmann::json clause_json(const GeneralClause& c) {
  nlohmann::json prem = nlohmann::json::array();
  for (const auto& p : c.premises) {
    nlohmann::json hyps = nlohmann::json::array();
    for (const auto& h : p.hyps) hyps.push_back(h.name());
    prem.push_back({{"hyps", hyps}, {"head", p.head.name()}});
  }
  return {{"premises", prem}, {"conclusion", c.conclusion.name()}};
}

nlohmann::json system_json(const ClauseSystem& s) {
  nlohmann::json cl = nlohmann::json::array(), sc = nlohmann::json::array();
  for (const auto& c : s.clauses) cl.push_back(clause_json(c));
  for (const auto& c : s.schematics) sc.push_back(clause_json(c));
  return {{"clauses", cl}, {"schematics", sc}};
}

std::string system_text(const ClauseSystem& s) {
  std::string out;
  for (const auto& c : s.clauses) out += print_clause(c) + '\n';
  for (const auto& c : s.schematics) out += "forall ?x. " + print_clause(c) + '\n';
  return out;
}

}  // namespace bes
