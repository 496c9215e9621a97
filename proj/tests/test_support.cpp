#include "doctest.h"

#include <random>

#include "bes/crosscheck.hpp"
#include "bes/prover.hpp"
#include "bes/support.hpp"
#include "helpers.hpp"

using namespace bes;

namespace {

bool sup(const Base& b, const Context& ctx, const Formula& f) { return supports({b, ctx, f}).verdict; }

Base random_base(std::mt19937_64& rng, const std::vector<Atom>& pool, std::size_t max_rules) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Base b;
  for (std::size_t k = pick(max_rules + 1); k > 0; --k) {
    AtomicRule r{{}, pool[pick(pool.size())]};
    for (std::size_t n = pick(3); n > 0; --n) {
      Premise p{{}, pool[pick(pool.size())]};
      if (pick(3) == 0) p.hyps.insert(pool[pick(pool.size())]);
      r.premises.push_back(p);
    }
    b.insert(r);
  }
  return b;
}

}  // namespace

TEST_CASE("support examples") {
  CHECK(sup(parse_base("=> p"), {}, At("p")));
  CHECK(sup({}, {}, F("p -> p")));
  CHECK_FALSE(sup({}, {}, F("p \\/ (p -> bot)")));
  CHECK(sup({}, parse_context("a /\\ b"), At("a")));
  CHECK_FALSE(sup({}, {}, At("p")));
}

TEST_CASE("validity examples") {
  CHECK(valid({}, F("p -> p")));
  CHECK_FALSE(valid({}, F("((p -> q) -> p) -> p")));
  CHECK(valid(parse_context("p; p -> q"), At("q")));
  CHECK(valid({}, F("bot -> p")));
  CHECK(valid(parse_context("bot"), At("q")));
}

TEST_CASE("atomic support is derivability") {
  CHECK(support_atomic(parse_base("=> c"), {}, A("c")));
  CHECK(support_atomic({}, atoms({"p"}), A("p")));
  CHECK_FALSE(support_atomic({}, {}, A("p")));
}

TEST_CASE("positive verdicts carry a replayable certificate") {
  SupportResult r = supports({parse_base("a, b => r\nr => a\nr => b"), {}, F("a /\\ b -> r")});
  CHECK(r.verdict);
  REQUIRE(r.certificate);
  CHECK(r.certificate->conclusion == r.goal);
  CHECK(replay(clauses_to_base(r.system), *r.certificate));
  CHECK(r.system.is_instantiated());
}

TEST_CASE("support in the conjunction base") {
  Base b = parse_base("a, b => r\nr => a\nr => b");
  CHECK(sup(b, {}, F("r -> a /\\ b")));
  CHECK(sup(b, {}, F("a /\\ b -> r")));
  CHECK_FALSE(sup(b, {}, F("a -> r")));
  CHECK(sup(b, parse_context("a; b"), At("r")));
}

TEST_CASE("contexts agree with folding into an implication") {
  FormulaGenerator gen(13, 5, 3);
  for (int i = 0; i < 150; ++i) {
    Formula g = gen.next(), f = gen.next();
    CHECK(valid({g}, f) == provable(Formula::impl(g, f)));
  }
}

TEST_CASE("support rows cohere") {
  std::mt19937_64 rng(4);
  std::vector<Atom> pool{A("p"), A("q"), A("r")};
  FormulaGenerator gen(23, 4, 3);
  for (int i = 0; i < 150; ++i) {
    Base b = random_base(rng, pool, 3);
    Formula f = gen.next(), g = gen.next();
    CHECK(sup(b, {}, Formula::conj(f, g)) == (sup(b, {}, f) && sup(b, {}, g)));
    CHECK(sup(b, {}, Formula::impl(f, g)) == sup(b, {f}, g));
    const Atom& p = pool[rng() % 3];
    CHECK(sup(b, {}, Formula::atom(p)) == derives(b, {}, p).derivable);
  }
}

TEST_CASE("support is monotone in the base") {
  std::mt19937_64 rng(31);
  std::vector<Atom> pool{A("p"), A("q"), A("r")};
  FormulaGenerator gen(37, 5, 3);
  for (int i = 0; i < 120; ++i) {
    Base b = random_base(rng, pool, 2);
    Formula f = gen.next();
    if (!sup(b, {}, f)) continue;
    Base c = b;
    c.merge(random_base(rng, pool, 3));
    CHECK(sup(c, {}, f));
  }
}

TEST_CASE("extra fresh atoms leave verdicts unchanged") {
  std::mt19937_64 rng(41);
  std::vector<Atom> pool{A("p"), A("q"), A("r")};
  FormulaGenerator gen(43, 6, 3);
  for (int i = 0; i < 100; ++i) {
    SupportQuery q{random_base(rng, pool, 2), {}, gen.next()};
    CHECK(supports(q).verdict == supports(q, 3).verdict);
  }
}

TEST_CASE("extension rules") {
  Bounds nullary{atoms({"p", "q"}), 2, 0, 0};
  auto rules = extension_rules(nullary);
  CHECK(rules.size() == 2);
  Bounds one{atoms({"p", "q"}), 2, 1, 1};
  for (const auto& r : extension_rules(one)) {
    for (const auto& prem : r.premises) {
      CHECK_FALSE(prem.hyps.count(prem.head));
      CHECK_FALSE((prem.hyps.empty() && prem.head == r.conclusion));
    }
  }
}

TEST_CASE("bounded evaluation") {
  Bounds b{atoms({"p"}), 2, 1, 1};
  CHECK_FALSE(bounded_eval({{}, {}, At("p")}, b));
  CHECK(bounded_eval({parse_base("=> p"), {}, At("p")}, b));
  CHECK(bounded_eval({{}, {}, F("p -> p")}, b));
  CHECK(bounded_eval({{}, {At("p")}, At("p")}, b));
  Bounds pq{atoms({"p", "q"}), 2, 1, 1};
  CHECK(bounded_eval({{}, {}, F("p \\/ ~p")}, pq));
  Bounds all{atoms({"p", "q"}), 64, 1, 1};
  CHECK_FALSE(bounded_eval({{}, {}, F("p \\/ ~p")}, all));
  CHECK_FALSE(bounded_eval({{}, {}, F("~~p -> p")}, all));
  CHECK(bounded_eval({{}, {}, F("p /\\ q -> q /\\ p")}, pq));
  CHECK(bounded_eval({{}, {}, F("bot -> q")}, pq));
  CHECK_THROWS_AS(bounded_eval({{}, {}, At("r")}, pq), BoundsError);
  Bounds big{atoms({"p", "q", "r", "s"}), 6, 2, 1};
  CHECK_THROWS_AS(bounded_eval({{}, {}, At("p")}, big), BoundsError);
}
