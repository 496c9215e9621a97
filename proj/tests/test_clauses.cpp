#include "doctest.h"

#include <random>

#include "bes/clauses.hpp"
#include "bes/crosscheck.hpp"
#include "bes/prover.hpp"
#include "helpers.hpp"

using namespace bes;

namespace {

GeneralClause C(const std::string& s) {
  GeneralClause c = formula_to_clause(H(s));
  auto slot = [](Atom& a) {
    if (a.name() == "Q_x") a = schematic_slot();
  };
  slot(c.conclusion);
  for (auto& p : c.premises) {
    slot(p.head);
    AtomSet hs;
    for (Atom h : p.hyps) {
      slot(h);
      hs.insert(h);
    }
    p.hyps = hs;
  }
  return c;
}

std::set<GeneralClause> clauses(std::initializer_list<const char*> fs) {
  std::set<GeneralClause> out;
  for (const char* f : fs) out.insert(C(f));
  return out;
}

}  // namespace

TEST_CASE("flattening a conjunction") {
  FlatMap m = flatten(F("a /\\ b"));
  CHECK(m[At("a")] == A("a"));
  CHECK(m[At("b")] == A("b"));
  CHECK(m[F("a /\\ b")] == A("#1"));
  CHECK(m.bot_atom() == A("#2"));
  CHECK(m.fresh_y() == A("#3"));
  CHECK(flatten(At("p")).entries().size() == 1);
  FlatMap i = flatten(F("p -> q"));
  CHECK(i[F("p -> q")] == A("#1"));
  CHECK(i.range() == atoms({"p", "q", "#1"}));
}

TEST_CASE("flattening rejects bot outside conclusion position") {
  CHECK_THROWS_AS(flatten(F("bot -> p")), std::invalid_argument);
  FlatMap m = flatten(F("~p"));
  CHECK(m[Formula::absurd()] == m.bot_atom());
}

TEST_CASE("generated names skip source atoms") {
  Formula f = H("#1 /\\ #2");
  FlatMap m = flatten(f);
  CHECK(m[f] == A("#3"));
  CHECK(m.bot_atom() == A("#4"));
  CHECK(m.fresh(atoms({"#6"})) == A("#7"));
}

TEST_CASE("flattening is injective on random formulas") {
  FormulaGenerator gen(3, 12, 3);
  for (int i = 0; i < 500; ++i) {
    Formula f = normalize_bot(gen.next());
    FlatMap m = flatten(f);
    AtomSet images;
    for (const auto& [g, a] : m.entries()) {
      if (!g.is_absurd()) CHECK(images.insert(a).second);
    }
    CHECK_FALSE(images.count(m.fresh_y()));
  }
}

TEST_CASE("per-connective clauses") {
  FlatMap c = flatten(F("a /\\ b"));
  CHECK(clauses_for(F("a /\\ b"), c, atoms({"g"})) == clauses({"#1 -> a", "#1 -> b", "a /\\ b -> #1"}));

  FlatMap d = flatten(F("a \\/ b"));
  CHECK(clauses_for(F("a \\/ b"), d, atoms({"g"})) ==
        clauses({"a -> #1", "b -> #1", "#1 /\\ (a -> g) /\\ (b -> g) -> g"}));

  FlatMap i = flatten(F("p -> q"));
  CHECK(clauses_for(F("p -> q"), i, atoms({"g"})) == clauses({"#1 /\\ p -> q", "(p -> q) -> #1"}));

  CHECK_THROWS_AS(clauses_for(At("a"), c, atoms({"g"})), std::invalid_argument);
  CHECK_THROWS_AS(clauses_for(F("a /\\ b"), c, {}), std::invalid_argument);
}

TEST_CASE("Mints system of a conjunction") {
  FlatSystem s = mints_system(F("a /\\ b"));
  CHECK(s.goal == A("#1"));
  auto expected = clauses({"#1 -> a", "#1 -> b", "a /\\ b -> #1", "#1 /\\ a /\\ b /\\ #3 -> #2", "#2 -> #3",
                           "#2 -> a", "#2 -> b", "#2 -> #1"});
  CHECK(s.system.clauses == expected);
  CHECK(s.system.is_instantiated());
}

TEST_CASE("Mints system of an atom and of p -> p") {
  FlatSystem s = mints_system(At("p"));
  CHECK(s.goal == A("p"));
  CHECK(s.system.clauses == clauses({"p /\\ #2 -> #1", "#1 -> #2", "#1 -> p"}));

  FlatSystem i = mints_system(F("p -> p"));
  CHECK(i.system.clauses.count(C("#1 /\\ p -> p")));
  CHECK(i.system.clauses.count(C("(p -> p) -> #1")));
  CHECK(clause_derives(i.system, {}, i.goal).derivable);
  CHECK(oracle_prove(clause_sequent(i.system, {}, Formula::atom(i.goal))).provable);
}

TEST_CASE("modified system keeps elimination schematic") {
  FlatSystem p = modified_system(At("p"));
  CHECK(p.system.clauses.empty());
  CHECK(p.system.schematics == clauses({"#1 -> ?x"}));

  FlatSystem c = modified_system(F("a /\\ b"));
  CHECK(c.system.clauses == clauses({"#1 -> a", "#1 -> b", "a /\\ b -> #1"}));
  CHECK(c.system.schematics == clauses({"#2 -> ?x"}));

  FlatSystem d = modified_system(F("a \\/ b"));
  CHECK(d.system.clauses == clauses({"a -> #1", "b -> #1"}));
  CHECK(d.system.schematics == clauses({"#1 /\\ (a -> ?x) /\\ (b -> ?x) -> ?x", "#2 -> ?x"}));
  CHECK_FALSE(d.system.is_instantiated());
}

TEST_CASE("instantiation") {
  ClauseSystem bot{{}, clauses({"#2 -> ?x"})};
  CHECK(instantiate_system(bot, atoms({"a", "b"})).clauses == clauses({"#2 -> a", "#2 -> b"}));
  ClauseSystem plain{clauses({"a -> b"}), {}};
  CHECK(instantiate_system(plain, atoms({"a"})).clauses == plain.clauses);
  FlatSystem d = modified_system(F("a \\/ b"));
  ClauseSystem dis{{}, {*d.system.schematics.begin()}};
  CHECK(instantiate_system(dis, atoms({"g"})).clauses == clauses({"#1 /\\ (a -> g) /\\ (b -> g) -> g"}));
  CHECK_THROWS_AS(instantiate_system(bot, {}), std::invalid_argument);
}

TEST_CASE("rules and clauses correspond") {
  CHECK(as_formula(rule_to_clause(parse_rule("=> c"))) == At("c"));
  CHECK(as_formula(rule_to_clause(parse_rule("a, b => r"))) == F("a /\\ b -> r"));
  CHECK(as_formula(rule_to_clause(parse_rule("(a => b) => c"))) == F("(a -> b) -> c"));
  CHECK(base_to_clauses({}).clauses.empty());
  CHECK(base_to_clauses(parse_base("=> c")).clauses == clauses({"c"}));
  CHECK(base_to_clauses(parse_base("a, b => r\nr => a\nr => b")).clauses ==
        clauses({"a /\\ b -> r", "r -> a", "r -> b"}));
  CHECK_THROWS_AS(clauses_to_base(modified_system(At("p")).system), std::invalid_argument);
}

TEST_CASE("curried formulas are read as clauses") {
  CHECK(C("a -> b -> r") == C("a /\\ b -> r"));
  CHECK_THROWS_AS(C("a \\/ b -> r"), std::invalid_argument);
  CHECK_THROWS_AS(C("(a -> b -> c) -> d"), std::invalid_argument);
  CHECK_THROWS_AS(C("a -> b /\\ c"), std::invalid_argument);
}

TEST_CASE("classification") {
  CHECK(classify(C("a /\\ b -> r")) == MintsClassification::Horn);
  CHECK(classify(C("c")) == MintsClassification::Horn);
  CHECK(classify(C("(a -> b) -> c")) == MintsClassification::ImplicationNested);
  CHECK(classify(C("#1 /\\ (a -> g) /\\ (b -> g) -> g")) == MintsClassification::General);
  CHECK(std::string(to_string(MintsClassification::General)) == "general");
}

TEST_CASE("bijection round trips on random rules") {
  std::mt19937_64 rng(17);
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 300; ++i) {
    AtomicRule r{{}, A(names[pick(4)])};
    for (int k = pick(4); k > 0; --k) {
      Premise p{{}, A(names[pick(4)])};
      for (int h = pick(3); h > 0; --h) p.hyps.insert(A(names[pick(4)]));
      r.premises.push_back(p);
    }
    CHECK(clause_to_rule(rule_to_clause(r)) == r);
    GeneralClause c = rule_to_clause(r);
    CHECK(rule_to_clause(clause_to_rule(c)) == c);
  }
}

TEST_CASE("system output") {
  FlatSystem d = modified_system(F("a \\/ b"));
  std::string text = system_text(d.system);
  CHECK(text.find("forall ?x. #1 /\\ (a -> ?x) /\\ (b -> ?x) -> ?x") != std::string::npos);
  auto j = system_json(d.system);
  CHECK(j["clauses"].size() == 2);
  CHECK(j["schematics"].size() == 2);
}
