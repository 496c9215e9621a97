#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bes/base.hpp"
#include "bes/clauses.hpp"
#include "bes/crosscheck.hpp"
#include "bes/kripke.hpp"
#include "bes/prover.hpp"
#include "bes/support.hpp"
#include "bes/syntax.hpp"

using nlohmann::json;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bes::AtomSet parse_atom_list(const std::string& text) {
  bes::AtomSet out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (item == "bot") throw bes::ReservedTokenError(0, "'bot' is reserved");
    if (!bes::is_identifier(item)) throw UsageError("not an atom: " + item);
    out.insert(bes::Atom(item));
  }
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json atom_list(const bes::AtomSet& s) {
  json out = json::array();
  for (const auto& a : s) out.push_back(a.name());
  return out;
}

struct Options {
  bool json = false;
  bool trace = false;
  std::string formula;
  std::string base_file;
  std::string context;
  std::string assume;
  std::string atom;
  std::string system = "n";
  std::string universe;
  std::string corpus;
  std::size_t random = 0;
  std::uint64_t seed = 0;
  std::size_t max_size = 8;
  std::size_t atoms = 3;
  std::size_t jobs = 1;
  std::size_t max_worlds = 3;
};

int run_check(const Options& o) {
  bes::Formula f = bes::parse_formula(o.formula);
  bool v = bes::valid({}, f);
  if (o.json)
    emit({{"formula", bes::print_formula(f)}, {"valid", v}});
  else
    std::cout << (v ? "valid" : "invalid") << '\n';
  return v ? 0 : 1;
}

int run_support(const Options& o) {
  bes::Base b = bes::parse_base(read_file(o.base_file));
  bes::Context ctx = bes::parse_context(o.context);
  bes::Formula f = bes::parse_formula(o.formula);
  bes::SupportResult r = bes::supports({b, ctx, f});
  bes::Base system_base = bes::clauses_to_base(r.system);

  if (o.json) {
    json j{{"formula", bes::print_formula(f)},
           {"context", bes::print_context(ctx)},
           {"supported", r.verdict},
           {"goal", r.goal.name()}};
    if (o.trace)
      j["certificate"] = r.certificate ? bes::derivation_trace(system_base, *r.certificate) : json(nullptr);
    emit(j);
  } else {
    std::cout << (r.verdict ? "supported" : "not supported") << '\n';
    if (o.trace && r.certificate) std::cout << bes::derivation_text(*r.certificate);
  }
  return r.verdict ? 0 : 1;
}

int run_derive(const Options& o) {
  bes::Base b = bes::parse_base(read_file(o.base_file));
  bes::AtomSet hyps = parse_atom_list(o.assume);
  if (o.atom == "bot") throw bes::ReservedTokenError(0, "'bot' is reserved");
  if (!bes::is_identifier(o.atom)) throw UsageError("not an atom: " + o.atom);
  bes::Atom goal(o.atom);
  bes::DeriveResult r = bes::derives(b, hyps, goal);

  if (o.json) {
    json j{{"goal", goal.name()}, {"assumptions", atom_list(hyps)}, {"derivable", r.derivable}};
    if (o.trace) j["derivation"] = r.derivation ? bes::derivation_trace(b, *r.derivation) : json(nullptr);
    emit(j);
  } else {
    std::cout << (r.derivable ? "derivable" : "not derivable") << '\n';
    if (o.trace && r.derivation) std::cout << bes::derivation_text(*r.derivation);
  }
  return r.derivable ? 0 : 1;
}

int run_flatten(const Options& o) {
  bes::Formula f = bes::normalize_bot(bes::parse_formula(o.formula));
  bes::FlatMap m = bes::flatten(f);
  if (o.json) {
    json entries = json::array();
    for (const auto& [g, a] : m.entries())
      entries.push_back({{"subformula", bes::print_formula(g)}, {"atom", a.name()}});
    emit({{"formula", bes::print_formula(f)},
          {"entries", entries},
          {"bot_atom", m.bot_atom().name()},
          {"fresh", m.fresh_y().name()}});
    return 0;
  }
  std::cout << "formula  " << bes::print_formula(f) << '\n';
  for (const auto& [g, a] : m.entries()) std::cout << a.name() << "\t" << bes::print_formula(g) << '\n';
  std::cout << "bot\t" << m.bot_atom().name() << '\n' << "fresh\t" << m.fresh_y().name() << '\n';
  return 0;
}

int run_emit(const Options& o) {
  bes::Formula f = bes::normalize_bot(bes::parse_formula(o.formula));
  if (o.system == "mints" && !o.universe.empty()) throw UsageError("--universe applies to --system n only");
  bes::FlatSystem fs = o.system == "mints" ? bes::mints_system(f) : bes::modified_system(f);
  if (!o.universe.empty()) fs.system = bes::instantiate_system(fs.system, parse_atom_list(o.universe));
  if (o.json) {
    json j = bes::system_json(fs.system);
    j["goal"] = fs.goal.name();
    j["system"] = o.system;
    emit(j);
  } else {
    std::cout << "# goal " << fs.goal.name() << '\n' << bes::system_text(fs.system);
  }
  return 0;
}

int run_crosscheck(const Options& o) {
  std::vector<bes::CorpusEntry> corpus;
  if (!o.corpus.empty()) corpus = bes::parse_corpus(read_file(o.corpus));
  if (o.random > 0) {
    bes::FormulaGenerator gen(o.seed, o.max_size, o.atoms);
    for (std::size_t i = 0; i < o.random; ++i) corpus.push_back({gen.next(), std::nullopt});
  }
  if (o.corpus.empty() && o.random == 0) corpus = bes::curated_corpus();

  bes::CrosscheckReport r = bes::crosscheck(corpus, {o.jobs, 3});
  if (o.json) {
    std::cout << bes::report_jsonl(r);
  } else {
    for (const auto& rec : r.records) {
      std::cout << (rec.agree ? "ok       " : "MISMATCH ") << (rec.oracle ? "valid   " : "invalid ")
                << bes::print_formula(rec.formula);
      if (!rec.agree) std::cout << "  [bes=" << rec.bes << " oracle=" << rec.oracle << "]";
      std::cout << '\n';
    }
    std::cout << r.records.size() << " checked, " << r.mismatches << " mismatches\n";
  }
  return r.mismatches == 0 ? 0 : 1;
}

int run_refute(const Options& o) {
  bes::Formula f = bes::parse_formula(o.formula);
  auto m = bes::kripke_refute(f, o.max_worlds);
  if (o.json) {
    emit({{"formula", bes::print_formula(f)}, {"countermodel", m ? bes::model_json(*m) : json(nullptr)}});
  } else if (m) {
    std::cout << bes::print_model(*m);
  } else {
    std::cout << "none\n";
  }
  return m ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base-extension semantics toolkit"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check", "Decide validity of a formula");
  check->add_option("formula", o.formula)->required();

  auto* support = app.add_subcommand("support", "Decide support of a formula in a base");
  support->add_option("--base", o.base_file, "Base file")->required();
  support->add_option("--context", o.context, "Context formulas separated by ';'");
  support->add_flag("--trace", o.trace, "Print the clause derivation certificate");
  support->add_option("formula", o.formula)->required();

  auto* derive = app.add_subcommand("derive", "Derivability of an atom in a base");
  derive->add_option("--base", o.base_file, "Base file")->required();
  derive->add_option("--assume", o.assume, "Comma-separated assumption atoms");
  derive->add_flag("--trace", o.trace, "Print the derivation");
  derive->add_option("atom", o.atom)->required();

  auto* flatten = app.add_subcommand("flatten", "Print the flattening table");
  flatten->add_option("formula", o.formula)->required();

  auto* emit_clauses = app.add_subcommand("emit-clauses", "Print the clause system of a formula");
  emit_clauses->add_option("formula", o.formula)->required();
  emit_clauses->add_option("--system", o.system, "mints or n")->check(CLI::IsMember({"mints", "n"}));
  emit_clauses->add_option("--universe", o.universe, "Comma-separated instantiation atoms for n");

  auto* cross = app.add_subcommand("crosscheck", "Compare support validity with the sequent prover");
  cross->add_option("--corpus", o.corpus, "Corpus file");
  cross->add_option("--random", o.random, "Number of random formulas");
  cross->add_option("--seed", o.seed, "Generator seed");
  cross->add_option("--max-size", o.max_size, "Largest number of connectives")->check(CLI::Range(0, 30));
  cross->add_option("--atoms", o.atoms, "Atom pool size")->check(CLI::Range(1, 64));
  cross->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));

  auto* refute = app.add_subcommand("refute", "Search for a Kripke countermodel");
  refute->add_option("formula", o.formula)->required();
  refute->add_option("--max-worlds", o.max_worlds, "Largest model size")->check(CLI::Range(1, 6));

  for (auto* sub : {check, support, derive, flatten, emit_clauses, cross, refute})
    sub->add_flag("--json", o.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*check) return run_check(o);
    if (*support) return run_support(o);
    if (*derive) return run_derive(o);
    if (*flatten) return run_flatten(o);
    if (*emit_clauses) return run_emit(o);
    if (*cross) return run_crosscheck(o);
    if (*refute) return run_refute(o);
  } catch (const bes::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kUsageError;
}
