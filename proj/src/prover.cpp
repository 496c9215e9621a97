#include "bes/prover.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace bes {

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (const auto& f : s.assumptions) {
    if (!out.empty()) out += ", ";
    out += print_formula(f);
  }
  out += out.empty() ? "|- " : " |- ";
  return out + print_formula(s.goal);
}

std::size_t SequentProof::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Contraction-free sequent calculus (G4ip) over interned formulas.

namespace {

class G4 {
 public:
  explicit G4(const OracleOptions& opts) : opts_(opts) {}

  int intern(const Formula& f) {
    switch (f.kind()) {
      case Connective::Atomic: {
        auto [it, fresh] = atom_ids_.emplace(f.atom_value(), static_cast<int>(atom_names_.size()));
        if (fresh) atom_names_.push_back(f.atom_value());
        return mk(Connective::Atomic, it->second, -1, -1);
      }
      case Connective::Absurd: return mk(Connective::Absurd, -1, -1, -1);
      default: return mk(f.kind(), -1, intern(f.lhs()), intern(f.rhs()));
    }
  }

  using Ctx = std::vector<int>;

  /// Index of a proof step, or -1.
  int prove(Ctx ctx, int goal) {
    Key key{std::move(ctx), goal};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int r = search(key.first, goal);
    memo_.emplace(std::move(key), r);
    return r;
  }

  SequentProof extract(int step) {
    const Step& s = steps_[step];
    SequentProof p{s.rule, {{}, formula(s.goal)}, {}};
    for (int f : s.ctx) p.sequent.assumptions.insert(formula(f));
    for (int c : s.children) p.children.push_back(extract(c));
    return p;
  }

 private:
  struct Node {
    Connective k;
    int atom, l, r;
    auto operator<=>(const Node&) const = default;
  };

  struct Step {
    std::string rule;
    Ctx ctx;
    int goal;
    std::vector<int> children;
  };

  using Key = std::pair<Ctx, int>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<int>()(k.second);
      for (int x : k.first) h = h * 1000003u ^ std::hash<int>()(x);
      return h;
    }
  };

  int mk(Connective k, int atom, int l, int r) {
    Node n{k, atom, l, r};
    auto [it, fresh] = node_ids_.emplace(n, static_cast<int>(nodes_.size()));
    if (fresh) {
      nodes_.push_back(n);
      std::size_t w = 1;
      if (k == Connective::Conj) w = weights_[l] + weights_[r] + 2;
      if (k == Connective::Disj || k == Connective::Impl) w = weights_[l] + weights_[r] + 1;
      weights_.push_back(w);
    }
    return it->second;
  }

  Formula formula(int id) {
    const Node& n = nodes_[id];
    switch (n.k) {
      case Connective::Atomic: return Formula::atom(atom_names_[n.atom]);
      case Connective::Absurd: return Formula::absurd();
      case Connective::Conj: return Formula::conj(formula(n.l), formula(n.r));
      case Connective::Disj: return Formula::disj(formula(n.l), formula(n.r));
      case Connective::Impl: return Formula::impl(formula(n.l), formula(n.r));
    }
    throw std::logic_error("bad node");
  }

  static bool has(const Ctx& c, int f) { return std::binary_search(c.begin(), c.end(), f); }

  static Ctx without(const Ctx& c, int f) {
    Ctx out;
    out.reserve(c.size());
    for (int x : c)
      if (x != f) out.push_back(x);
    return out;
  }

  static Ctx with(Ctx c, std::initializer_list<int> fs) {
    for (int f : fs) {
      auto it = std::lower_bound(c.begin(), c.end(), f);
      if (it == c.end() || *it != f) c.insert(it, f);
    }
    return c;
  }

  std::vector<std::size_t> measure(const Ctx& c, int goal) const {
    std::vector<std::size_t> m;
    for (int f : c) m.push_back(weights_[f]);
    m.push_back(weights_[goal]);
    std::sort(m.begin(), m.end());
    return m;
  }

  // Multiset extension of < on weights.
  static bool multiset_less(std::vector<std::size_t> a, std::vector<std::size_t> b) {
    std::vector<std::size_t> only_a, only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    if (only_b.empty()) return false;
    return only_a.empty() || only_b.back() > only_a.back();
  }

  int sub(const Ctx& parent, int parent_goal, Ctx ctx, int goal) {
    if (opts_.check_termination && !multiset_less(measure(ctx, goal), measure(parent, parent_goal)))
      throw std::logic_error("G4ip measure did not decrease");
    return prove(std::move(ctx), goal);
  }

  int record(std::string rule, const Ctx& ctx, int goal, std::vector<int> children) {
    steps_.push_back({std::move(rule), ctx, goal, std::move(children)});
    return static_cast<int>(steps_.size()) - 1;
  }

  int search(const Ctx& ctx, int goal) {
    for (int f : ctx)
      if (nodes_[f].k == Connective::Absurd) return record("L_bot", ctx, goal, {});
    if (has(ctx, goal)) return record("ax", ctx, goal, {});

    // Invertible left rules: the first applicable one decides.
    for (int f : ctx) {
      const Node n = nodes_[f];
      switch (n.k) {
        case Connective::Conj: {
          int p = sub(ctx, goal, with(without(ctx, f), {n.l, n.r}), goal);
          return p < 0 ? -1 : record("L_and", ctx, goal, {p});
        }
        case Connective::Disj: {
          int p = sub(ctx, goal, with(without(ctx, f), {n.l}), goal);
          if (p < 0) return -1;
          int q = sub(ctx, goal, with(without(ctx, f), {n.r}), goal);
          return q < 0 ? -1 : record("L_or", ctx, goal, {p, q});
        }
        case Connective::Impl: {
          const Node a = nodes_[n.l];
          if (a.k == Connective::Atomic && has(ctx, n.l)) {
            int p = sub(ctx, goal, with(without(ctx, f), {n.r}), goal);
            return p < 0 ? -1 : record("L_imp_atom", ctx, goal, {p});
          }
          if (a.k == Connective::Absurd) {
            int p = sub(ctx, goal, without(ctx, f), goal);
            return p < 0 ? -1 : record("L_imp_bot", ctx, goal, {p});
          }
          if (a.k == Connective::Conj) {
            int curried = mk(Connective::Impl, -1, a.l, mk(Connective::Impl, -1, a.r, n.r));
            int p = sub(ctx, goal, with(without(ctx, f), {curried}), goal);
            return p < 0 ? -1 : record("L_imp_and", ctx, goal, {p});
          }
          if (a.k == Connective::Disj) {
            int left = mk(Connective::Impl, -1, a.l, n.r);
            int right = mk(Connective::Impl, -1, a.r, n.r);
            int p = sub(ctx, goal, with(without(ctx, f), {left, right}), goal);
            return p < 0 ? -1 : record("L_imp_or", ctx, goal, {p});
          }
          break;
        }
        default: break;
      }
    }

    // Invertible right rules.
    const Node g = nodes_[goal];
    if (g.k == Connective::Conj) {
      int p = sub(ctx, goal, ctx, g.l);
      if (p < 0) return -1;
      int q = sub(ctx, goal, ctx, g.r);
      return q < 0 ? -1 : record("R_and", ctx, goal, {p, q});
    }
    if (g.k == Connective::Impl) {
      int p = sub(ctx, goal, with(ctx, {g.l}), g.r);
      return p < 0 ? -1 : record("R_imp", ctx, goal, {p});
    }

    // Non-invertible rules, tried in order.
    if (g.k == Connective::Disj) {
      if (int p = sub(ctx, goal, ctx, g.l); p >= 0) return record("R_or1", ctx, goal, {p});
      if (int p = sub(ctx, goal, ctx, g.r); p >= 0) return record("R_or2", ctx, goal, {p});
    }
    for (int f : ctx) {
      const Node n = nodes_[f];
      if (n.k != Connective::Impl || nodes_[n.l].k != Connective::Impl) continue;
      const Node a = nodes_[n.l];  // (c -> d) -> b
      Ctx rest = without(ctx, f);
      int p = sub(ctx, goal, with(rest, {mk(Connective::Impl, -1, a.r, n.r)}), n.l);
      if (p < 0) continue;
      int q = sub(ctx, goal, with(rest, {n.r}), goal);
      if (q < 0) continue;
      return record("L_imp_imp", ctx, goal, {p, q});
    }
    return -1;
  }

  OracleOptions opts_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> weights_;
  std::map<Node, int> node_ids_;
  std::vector<Atom> atom_names_;
  std::map<Atom, int> atom_ids_;
  std::unordered_map<Key, int, KeyHash> memo_;
  std::deque<Step> steps_;
};

}  // namespace

OracleResult oracle_prove(const Sequent& s, const OracleOptions& opts) {
  G4 g(opts);
  std::vector<int> ctx;
  for (const auto& f : s.assumptions) ctx.push_back(g.intern(f));
  std::sort(ctx.begin(), ctx.end());
  ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
  int goal = g.intern(s.goal);
  int step = g.prove(std::move(ctx), goal);
  if (step < 0) return {};
  return {true, g.extract(step)};
}

// ---------------------------------------------------------------------------
// Independent replay of sequent proofs on Formula values.

namespace {

Context minus(Context c, const Formula& f) {
  c.erase(f);
  return c;
}

Context plus(Context c, std::initializer_list<Formula> fs) {
  c.insert(fs.begin(), fs.end());
  return c;
}

bool premise_is(const SequentProof& p, std::size_t i, const Context& ctx, const Formula& goal) {
  return p.children.size() > i && p.children[i].sequent.assumptions == ctx &&
         p.children[i].sequent.goal == goal;
}

bool step_ok(const SequentProof& p) {
  const Context& G = p.sequent.assumptions;
  const Formula& goal = p.sequent.goal;
  const auto& r = p.rule;
  const std::size_t n = p.children.size();
  if (r == "ax") return n == 0 && G.count(goal);
  if (r == "L_bot") return n == 0 && G.count(Formula::absurd());
  if (r == "R_and")
    return n == 2 && goal.kind() == Connective::Conj && premise_is(p, 0, G, goal.lhs()) &&
           premise_is(p, 1, G, goal.rhs());
  if (r == "R_imp")
    return n == 1 && goal.kind() == Connective::Impl && premise_is(p, 0, plus(G, {goal.lhs()}), goal.rhs());
  if (r == "R_or1" || r == "R_or2")
    return n == 1 && goal.kind() == Connective::Disj &&
           premise_is(p, 0, G, r == "R_or1" ? goal.lhs() : goal.rhs());
  // Left rules: find the principal formula.
  for (const auto& f : G) {
    Context rest = minus(G, f);
    if (r == "L_and" && f.kind() == Connective::Conj && n == 1 &&
        premise_is(p, 0, plus(rest, {f.lhs(), f.rhs()}), goal))
      return true;
    if (r == "L_or" && f.kind() == Connective::Disj && n == 2 &&
        premise_is(p, 0, plus(rest, {f.lhs()}), goal) && premise_is(p, 1, plus(rest, {f.rhs()}), goal))
      return true;
    if (f.kind() != Connective::Impl) continue;
    const Formula& a = f.lhs();
    const Formula& b = f.rhs();
    if (r == "L_imp_atom" && a.is_atomic() && G.count(a) && n == 1 && premise_is(p, 0, plus(rest, {b}), goal))
      return true;
    if (r == "L_imp_bot" && a.is_absurd() && n == 1 && premise_is(p, 0, rest, goal)) return true;
    if (r == "L_imp_and" && a.kind() == Connective::Conj && n == 1 &&
        premise_is(p, 0, plus(rest, {Formula::impl(a.lhs(), Formula::impl(a.rhs(), b))}), goal))
      return true;
    if (r == "L_imp_or" && a.kind() == Connective::Disj && n == 1 &&
        premise_is(p, 0, plus(rest, {Formula::impl(a.lhs(), b), Formula::impl(a.rhs(), b)}), goal))
      return true;
    if (r == "L_imp_imp" && a.kind() == Connective::Impl && n == 2 &&
        premise_is(p, 0, plus(rest, {Formula::impl(a.rhs(), b)}), a) &&
        premise_is(p, 1, plus(rest, {b}), goal))
      return true;
  }
  return false;
}

}  // namespace

bool check_sequent_proof(const SequentProof& p) {
  if (!step_ok(p)) return false;
  for (const auto& c : p.children)
    if (!check_sequent_proof(c)) return false;
  return true;
}

nlohmann::json sequent_proof_json(const SequentProof& p) {
  nlohmann::json j{{"rule", p.rule}, {"sequent", print_sequent(p.sequent)}};
  j["children"] = nlohmann::json::array();
  for (const auto& c : p.children) j["children"].push_back(sequent_proof_json(c));
  return j;
}

// ---------------------------------------------------------------------------

DeriveResult clause_derives(const ClauseSystem& system, const AtomSet& hyps, const Atom& goal) {
  return derives(clauses_to_base(system), hyps, goal);
}

bool decide_goal(const ClauseSystem& system, const AtomSet& hyps, const Formula& goal) {
  switch (goal.kind()) {
    case Connective::Atomic: return clause_derives(system, hyps, goal.atom_value()).derivable;
    case Connective::Conj:
      return decide_goal(system, hyps, goal.lhs()) && decide_goal(system, hyps, goal.rhs());
    case Connective::Impl: {
      ClauseSystem extended = system;
      AtomSet extra = hyps;
      std::vector<Formula> parts{goal.lhs()};
      while (!parts.empty()) {
        Formula f = parts.back();
        parts.pop_back();
        if (f.kind() == Connective::Conj) {
          parts.push_back(f.lhs());
          parts.push_back(f.rhs());
        } else if (f.is_atomic()) {
          extra.insert(f.atom_value());
        } else {
          extended.clauses.insert(formula_to_clause(f));
        }
      }
      return decide_goal(extended, extra, goal.rhs());
    }
    default:
      throw std::invalid_argument("decide_goal: goal outside the /\\, -> fragment: " + print_formula(goal));
  }
}

Sequent clause_sequent(const ClauseSystem& system, const AtomSet& hyps, const Formula& goal) {
  if (!system.is_instantiated()) throw std::invalid_argument("clause system still has schematic clauses");
  Sequent s{{}, goal};
  for (const auto& c : system.clauses) s.assumptions.insert(as_formula(c));
  for (const auto& h : hyps) s.assumptions.insert(Formula::atom(h));
  return s;
}

}  // namespace bes
