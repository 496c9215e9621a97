#include "bes/crosscheck.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bes/kripke.hpp"
#include "bes/prover.hpp"
#include "bes/support.hpp"

namespace bes {

std::vector<Atom> atom_pool(std::size_t n) {
  static const char* first[] = {"p", "q", "r", "s", "t", "u"};
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i)
    out.emplace_back(i < 6 ? std::string(first[i]) : "a" + std::to_string(i));
  return out;
}

FormulaGenerator::FormulaGenerator(std::uint64_t seed, std::size_t max_connectives, std::size_t atom_pool_size)
    : rng_(seed), max_connectives_(max_connectives), pool_(atom_pool(atom_pool_size)) {
  if (atom_pool_size == 0) throw std::invalid_argument("atom pool must be nonempty");
  if (max_connectives > 30) throw std::invalid_argument("at most 30 connectives are supported");
  catalan_.push_back(1);
  for (std::size_t n = 1; n <= max_connectives; ++n) {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < n; ++k) c += catalan_[k] * catalan_[n - 1 - k];
    catalan_.push_back(c);
  }
}

std::uint64_t FormulaGenerator::uniform(std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t v;
  do v = rng_(); while (v >= limit);
  return v % n;
}

Formula FormulaGenerator::next() { return tree(uniform(max_connectives_ + 1)); }

Formula FormulaGenerator::leaf() {
  if (uniform(8) == 0) return Formula::absurd();
  return Formula::atom(pool_[uniform(pool_.size())]);
}

Formula FormulaGenerator::tree(std::size_t n) {
  if (n == 0) return leaf();
  // Left subtree size k with probability C(k) C(n-1-k) / C(n).
  std::uint64_t pick = uniform(catalan_[n]);
  std::size_t k = 0;
  for (;; ++k) {
    std::uint64_t w = catalan_[k] * catalan_[n - 1 - k];
    if (pick < w) break;
    pick -= w;
  }
  std::uint64_t op = uniform(3);
  Formula l = tree(k);
  Formula r = tree(n - 1 - k);
  if (op == 0) return Formula::conj(l, r);
  if (op == 1) return Formula::disj(l, r);
  return Formula::impl(l, r);
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    std::optional<bool> expected;
    for (auto [word, status] : {std::pair{"valid", true}, std::pair{"invalid", false}}) {
      std::string w = word;
      if (line.compare(0, w.size(), w) == 0 && line.size() > w.size() &&
          (line[w.size()] == ' ' || line[w.size()] == '\t')) {
        expected = status;
        line = line.substr(w.size());
        break;
      }
    }
    out.push_back({parse_formula(line), expected});
  }
  return out;
}

std::vector<CorpusEntry> curated_corpus() {
  return parse_corpus(R"(
valid   p -> p
valid   bot -> p
valid   p /\ q -> p
valid   ~~(p \/ ~p)
valid   ((p \/ q) -> r) -> p -> r
invalid p \/ ~p
invalid ~~p -> p
invalid ((p -> q) -> p) -> p
invalid (p -> q) \/ (q -> p)
)");
}

namespace {

CrosscheckRecord check_one(const CorpusEntry& e, const CrosscheckOptions& opts) {
  CrosscheckRecord r{e.formula, false, false, std::nullopt, std::nullopt, false};
  r.bes = valid({}, e.formula);
  r.oracle = provable(e.formula);
  r.expected = e.expected;
  if (!r.oracle) r.kripke = kripke_refute(e.formula, opts.kripke_worlds).has_value();
  else if (kripke_refute(e.formula, opts.kripke_worlds)) r.kripke = true;
  r.agree = r.bes == r.oracle && !(r.oracle && r.kripke.value_or(false)) &&
            (!e.expected || *e.expected == r.oracle);
  return r;
}

}  // namespace

CrosscheckReport crosscheck(const std::vector<CorpusEntry>& corpus, const CrosscheckOptions& opts) {
  CrosscheckReport report;
  report.records.resize(corpus.size(), CrosscheckRecord{Formula::absurd(), false, false, std::nullopt, std::nullopt, false});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < corpus.size();) report.records[i] = check_one(corpus[i], opts);
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, corpus.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : report.records) report.mismatches += !r.agree;
  return report;
}

nlohmann::json record_json(const CrosscheckRecord& r) {
  nlohmann::json j{{"formula", print_formula(r.formula)}, {"bes", r.bes}, {"oracle", r.oracle}};
  j["kripke"] = r.kripke ? nlohmann::json(*r.kripke) : nlohmann::json(nullptr);
  if (r.expected) j["expected"] = *r.expected;
  j["agree"] = r.agree;
  return j;
}

std::string report_jsonl(const CrosscheckReport& r) {
  std::string out;
  std::size_t valid_count = 0;
  for (const auto& rec : r.records) {
    out += record_json(rec).dump() + '\n';
    valid_count += rec.oracle;
  }
  nlohmann::json summary{{"summary", true},
                         {"checked", r.records.size()},
                         {"valid", valid_count},
                         {"mismatches", r.mismatches}};
  return out + summary.dump() + '\n';
}

}  // namespace bes
