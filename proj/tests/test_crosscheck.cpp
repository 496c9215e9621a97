#include "doctest.h"

#include "bes/crosscheck.hpp"
#include "helpers.hpp"

using namespace bes;

TEST_CASE("generator is reproducible") {
  FormulaGenerator a(42, 8, 3), b(42, 8, 3), c(43, 8, 3);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    Formula x = a.next();
    CHECK(x == b.next());
    differs = differs || !(x == c.next());
    CHECK(x.node_count() <= 17);
    for (const auto& at : atoms_of(x)) CHECK((at == A("p") || at == A("q") || at == A("r")));
  }
  CHECK(differs);
  CHECK_THROWS(FormulaGenerator(1, 31, 3));
  CHECK_THROWS(FormulaGenerator(1, 5, 0));
}

TEST_CASE("atom pool names") {
  auto pool = atom_pool(8);
  CHECK(pool[0] == A("p"));
  CHECK(pool[5] == A("u"));
  CHECK(pool[7] == A("a7"));
}

TEST_CASE("corpus parsing") {
  auto c = parse_corpus("# header\nvalid p -> p\ninvalid p \\/ ~p  # excluded middle\n\n q -> q\n");
  REQUIRE(c.size() == 3);
  CHECK(*c[0].expected);
  CHECK_FALSE(*c[1].expected);
  CHECK_FALSE(c[2].expected);
  CHECK(c[2].formula == F("q -> q"));
  CHECK(parse_corpus("validity")[0].formula == At("validity"));
  CHECK_THROWS_AS(parse_corpus("valid p ->"), ParseError);
}

TEST_CASE("crosscheck on small corpora") {
  auto one = crosscheck({{F("p -> p"), std::nullopt}});
  CHECK(one.records.size() == 1);
  CHECK(one.mismatches == 0);
  auto curated = crosscheck(curated_corpus());
  CHECK(curated.mismatches == 0);
  CHECK(curated.records.size() == 9);
  for (const auto& r : curated.records)
    if (!r.oracle) CHECK(r.kripke == std::optional<bool>(true));
}

TEST_CASE("a wrong expected status is a mismatch") {
  auto r = crosscheck({{F("p \\/ ~p"), true}});
  CHECK(r.mismatches == 1);
  CHECK_FALSE(r.records[0].agree);
}

TEST_CASE("parallel runs keep input order") {
  std::vector<CorpusEntry> corpus;
  FormulaGenerator gen(42, 8, 3);
  for (int i = 0; i < 40; ++i) corpus.push_back({gen.next(), std::nullopt});
  CHECK(report_jsonl(crosscheck(corpus, {1, 3})) == report_jsonl(crosscheck(corpus, {4, 3})));
}

TEST_CASE("report summary line") {
  std::string out = report_jsonl(crosscheck(curated_corpus()));
  auto last = out.substr(out.rfind('\n', out.size() - 2) + 1);
  auto j = nlohmann::json::parse(last);
  CHECK(j["summary"] == true);
  CHECK(j["checked"] == 9);
  CHECK(j["valid"] == 5);
  CHECK(j["mismatches"] == 0);
}
