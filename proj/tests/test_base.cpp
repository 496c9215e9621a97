#include "doctest.h"

#include "bes/base.hpp"
#include "helpers.hpp"

using namespace bes;

namespace {

const char* kConjBase = R"(
# conjunction simulation
a, b => r
r => a
r => b
)";

}  // namespace

TEST_CASE("parsing rule shapes") {
  CHECK(parse_base("=> c") == Base{{{}, A("c")}});
  CHECK(parse_base("(a => b) => c") == Base{{{{atoms({"a"}), A("b")}}, A("c")}});
  CHECK(parse_base("a, b => r") == Base{{{{{}, A("a")}, {{}, A("b")}}, A("r")}});
  AtomicRule r = parse_rule("(h1, h2 => p), (h3 => q), s => c");
  REQUIRE(r.premises.size() == 3);
  CHECK(r.premises[0].hyps == atoms({"h1", "h2"}));
  CHECK(r.premises[2] == Premise{{}, A("s")});
  CHECK(parse_base(kConjBase).size() == 3);
}

TEST_CASE("base parse errors name the line") {
  CHECK_THROWS_AS(parse_base("=> bot"), ReservedTokenError);
  try {
    parse_base("=> c\na b => r\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_base("a =>"), ParseError);
  CHECK_THROWS_AS(parse_base("(a => b => c"), ParseError);
}

TEST_CASE("printing round trips") {
  Base b = parse_base(kConjBase);
  CHECK(parse_base(print_base(b)) == b);
  AtomicRule r = parse_rule("(h1, h2 => p), q => c");
  CHECK(parse_rule(print_rule(r)) == r);
  CHECK(print_rule(parse_rule("=> c")) == "=> c");
}

TEST_CASE("derivability basics") {
  CHECK(derives(parse_base("=> c"), {}, A("c")).derivable);
  CHECK(derives({}, atoms({"p"}), A("p")).derivable);
  CHECK_FALSE(derives({}, {}, A("p")).derivable);
}

TEST_CASE("hypothetical premises need the discharged derivation") {
  Base b = parse_base("(a => b) => c");
  CHECK_FALSE(derives(b, {}, A("c")).derivable);
  b.insert(parse_rule("a => b"));
  CHECK(derives(b, {}, A("c")).derivable);
}

TEST_CASE("conjunction simulation base") {
  Base b = parse_base(kConjBase);
  auto r = derives(b, atoms({"a", "b"}), A("r"));
  CHECK(r.derivable);
  REQUIRE(r.derivation);
  CHECK(r.derivation->size() == 3);
  CHECK(replay(b, *r.derivation));
  CHECK(derives(b, atoms({"r"}), A("a")).derivable);
  CHECK_FALSE(derives(b, atoms({"a"}), A("r")).derivable);
}

TEST_CASE("traces") {
  Base b = parse_base("=> c");
  auto d = derives(b, {}, A("c")).derivation;
  REQUIRE(d);
  auto t = derivation_trace(b, *d);
  CHECK(t["steps"] == 1);
  CHECK(t["nodes"] == 1);
  CHECK(t["replayed"] == true);
  CHECK(t["derivation"]["conclusion"] == "c");

  auto h = derives({}, atoms({"p"}), A("p")).derivation;
  REQUIRE(h);
  CHECK(derivation_trace({}, *h)["steps"] == 0);
  CHECK(derivation_json(*h)["rule"] == "hypothesis");
}

TEST_CASE("replay rejects a forged derivation") {
  Base b = parse_base(kConjBase);
  auto d = *derives(b, atoms({"a", "b"}), A("r")).derivation;
  CHECK_FALSE(replay(parse_base("r => a"), d));
  Derivation forged = d;
  forged.children.pop_back();
  CHECK_FALSE(replay(b, forged));
  Derivation wrong_hyp{Derivation::Kind::Hypothesis, atoms({"a"}), A("b"), std::nullopt, {}};
  CHECK_FALSE(replay(b, wrong_hyp));
  CHECK_THROWS_AS(derivation_trace(b, forged), std::invalid_argument);
}

TEST_CASE("derivable atoms and monotonicity in assumptions") {
  Base b = parse_base("a, b => r\n(r => s) => t\nr => s");
  AtomSet none = derivable_atoms(b, {});
  CHECK(none == atoms({"t"}));
  AtomSet ab = derivable_atoms(b, atoms({"a", "b"}));
  CHECK(ab == atoms({"a", "b", "r", "s", "t"}));
  for (const auto& x : none) CHECK(ab.count(x));
}

TEST_CASE("nested hypotheses are discharged per premise") {
  Base b = parse_base("(p => q), (q => p) => e\np => q\nq => p");
  CHECK(derives(b, {}, A("e")).derivable);
  Base c = parse_base("(p => q), (q => r) => e\np => q");
  CHECK_FALSE(derives(c, {}, A("e")).derivable);
  c.insert(parse_rule("q => r"));
  auto r = derives(c, {}, A("e"));
  CHECK(r.derivable);
  CHECK(replay(c, *r.derivation));
}
