#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "bes/syntax.hpp"

namespace bes {

/// Seeded formula generator. Shapes are uniform over binary trees with a
/// uniformly chosen number of connectives in [0, max_connectives];
/// connectives are uniform over /\, \/, ->; a leaf is bot with probability
/// 1/8 and otherwise a uniform atom from the pool.
class FormulaGenerator {
 public:
  FormulaGenerator(std::uint64_t seed, std::size_t max_connectives, std::size_t atom_pool);

  Formula next();
  /// Uniform in [0, n). Platform independent.
  std::uint64_t uniform(std::uint64_t n);

  const std::vector<Atom>& pool() const { return pool_; }

 private:
  Formula tree(std::size_t connectives);
  Formula leaf();

  std::mt19937_64 rng_;
  std::size_t max_connectives_;
  std::vector<Atom> pool_;
  std::vector<std::uint64_t> catalan_;
};

/// Atom names used for a pool of the given size: p, q, r, s, t, u, then a6, a7, ...
std::vector<Atom> atom_pool(std::size_t n);

struct CorpusEntry {
  Formula formula;
  std::optional<bool> expected;
};

/// Lines "valid <formula>", "invalid <formula>" or a bare formula; '#'
/// starts a comment.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

/// The nine reference formulas with their known statuses.
std::vector<CorpusEntry> curated_corpus();

struct CrosscheckRecord {
  Formula formula;
  bool bes = false;
  bool oracle = false;
  /// Set for formulas the oracle rejects: whether a countermodel was found.
  std::optional<bool> kripke;
  std::optional<bool> expected;
  bool agree = false;
};

struct CrosscheckReport {
  std::vector<CrosscheckRecord> records;
  std::size_t mismatches = 0;
};

struct CrosscheckOptions {
  std::size_t jobs = 1;
  std::size_t kripke_worlds = 3;
};

/// Compares validity under the support relation with the oracle prover for
/// each formula. A record disagrees when the two verdicts differ, when a
/// countermodel exists for an oracle-provable formula, or when an expected
/// status is given and not met. Records keep input order.
CrosscheckReport crosscheck(const std::vector<CorpusEntry>& corpus, const CrosscheckOptions& opts = {});

nlohmann::json record_json(const CrosscheckRecord& r);
/// JSON lines, one per record, summary last.
std::string report_jsonl(const CrosscheckReport& r);

}  // namespace bes
