#include "bes/base.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

namespace bes {

AtomSet atoms_of(const AtomicRule& r) {
  AtomSet out{r.conclusion};
  for (const auto& p : r.premises) {
    out.insert(p.head);
    out.insert(p.hyps.begin(), p.hyps.end());
  }
  return out;
}

AtomSet atoms_of(const Base& b) {
  AtomSet out;
  for (const auto& r : b) out.merge(atoms_of(r));
  return out;
}

// ---------------------------------------------------------------------------
// Base file format

namespace {

enum class BTok { Ident, Comma, Arrow, LParen, RParen, End };

struct BToken {
  BTok kind;
  std::string text;
  std::size_t offset;
};

class RuleParser {
 public:
  RuleParser(const std::string& line, std::size_t base_offset, std::size_t line_no)
      : base_offset_(base_offset), line_no_(line_no) {
    tokenize(line);
  }

  AtomicRule parse() {
    AtomicRule r{{}, Atom("_")};
    if (peek().kind != BTok::Arrow) {
      r.premises.push_back(premise());
      while (peek().kind == BTok::Comma) {
        ++pos_;
        r.premises.push_back(premise());
      }
    }
    expect(BTok::Arrow, "'=>'");
    r.conclusion = atom();
    expect(BTok::End, "end of rule");
    return r;
  }

 private:
  void tokenize(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (s.compare(i, 2, "=>") == 0) {
        toks_.push_back({BTok::Arrow, "=>", i});
        i += 2;
      } else if (c == ',') {
        toks_.push_back({BTok::Comma, ",", i++});
      } else if (c == '(') {
        toks_.push_back({BTok::LParen, "(", i++});
      } else if (c == ')') {
        toks_.push_back({BTok::RParen, ")", i++});
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        toks_.push_back({BTok::Ident, s.substr(i, j - i), i});
        i = j;
      } else {
        fail(i, std::string("unexpected character '") + c + "'");
      }
    }
    toks_.push_back({BTok::End, "", s.size()});
  }

  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw ParseError(base_offset_ + col, "line " + std::to_string(line_no_) + ": " + msg);
  }

  const BToken& peek() const { return toks_[pos_]; }

  void expect(BTok k, const std::string& what) {
    if (peek().kind != k) fail(peek().offset, "expected " + what);
    ++pos_;
  }

  Atom atom() {
    const BToken& t = peek();
    if (t.kind != BTok::Ident) fail(t.offset, "expected atom");
    if (t.text == kAbsurdToken)
      throw ReservedTokenError(base_offset_ + t.offset, "line " + std::to_string(line_no_) +
                                                            ": 'bot' cannot appear in an atomic rule");
    ++pos_;
    return Atom(t.text);
  }

  Premise premise() {
    if (peek().kind != BTok::LParen) return Premise{{}, atom()};
    ++pos_;
    AtomSet hyps;
    if (peek().kind != BTok::Arrow) {
      hyps.insert(atom());
      while (peek().kind == BTok::Comma) {
        ++pos_;
        hyps.insert(atom());
      }
    }
    expect(BTok::Arrow, "'=>'");
    Atom head = atom();
    expect(BTok::RParen, "')'");
    return Premise{std::move(hyps), std::move(head)};
  }

  std::vector<BToken> toks_;
  std::size_t pos_ = 0;
  std::size_t base_offset_;
  std::size_t line_no_;
};

}  // namespace

AtomicRule parse_rule(const std::string& line) { return RuleParser(line, 0, 1).parse(); }

Base parse_base(const std::string& text) {
  Base b;
  std::size_t start = 0, line_no = 1;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      b.insert(RuleParser(line, start, line_no).parse());
    start = end + 1;
    ++line_no;
  }
  return b;
}

std::string print_rule(const AtomicRule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    const auto& p = r.premises[i];
    if (i) out += ", ";
    if (p.hyps.empty()) {
      out += p.head.name();
      continue;
    }
    out += '(';
    bool first = true;
    for (const auto& h : p.hyps) {
      if (!first) out += ", ";
      out += h.name();
      first = false;
    }
    out += " => " + p.head.name() + ')';
  }
  out += out.empty() ? "=> " : " => ";
  out += r.conclusion.name();
  return out;
}

std::string print_base(const Base& b) {
  std::string out;
  for (const auto& r : b) out += print_rule(r) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Derivability
//
// closure(P) is the set of atoms derivable from P. A premise (P_i => p_i)
// either adds nothing to P, in which case it is resolved inside the fixpoint
// for P itself, or strictly enlarges it, in which case closure(P + P_i) is
// computed first. Sets only grow along that recursion, so it terminates.

namespace {

using Bits = boost::dynamic_bitset<>;

class Engine {
 public:
  Engine(const Base& b, const AtomSet& assumptions, const std::optional<Atom>& goal) {
    for (const auto& a : assumptions) intern(a);
    if (goal) intern(*goal);
    for (const auto& r : b)
      for (const auto& a : atoms_of(r)) intern(a);
    for (const auto& r : b) {
      IRule ir{{}, index_.at(r.conclusion), &r};
      for (const auto& p : r.premises) ir.premises.push_back({bits(p.hyps), index_.at(p.head)});
      rules_.push_back(std::move(ir));
    }
  }

  Bits bits(const AtomSet& s) const {
    Bits out(atoms_.size());
    for (const auto& a : s) out.set(index_.at(a));
    return out;
  }

  std::optional<std::size_t> index_of(const Atom& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Atom& atom(std::size_t i) const { return atoms_[i]; }

  struct Just {
    Derivation::Kind kind;
    std::size_t rule;
  };

  struct Entry {
    Bits derived;
    std::vector<Just> just;
  };

  const Entry& closure(const Bits& P) {
    if (auto it = memo_.find(P); it != memo_.end()) return it->second;
    Entry e{P, std::vector<Just>(atoms_.size(), Just{Derivation::Kind::Hypothesis, 0})};
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
        const IRule& r = rules_[ri];
        if (e.derived.test(r.conclusion)) continue;
        bool ok = true;
        for (const auto& [hyps, head] : r.premises) {
          if (hyps.is_subset_of(P)) {
            ok = e.derived.test(head);
          } else {
            ok = closure(P | hyps).derived.test(head);
          }
          if (!ok) break;
        }
        if (ok) {
          e.derived.set(r.conclusion);
          e.just[r.conclusion] = {r.premises.empty() ? Derivation::Kind::Nullary
                                                     : Derivation::Kind::Apply,
                                  ri};
          changed = true;
        }
      }
    }
    return memo_.emplace(P, std::move(e)).first->second;
  }

  Derivation build(const Bits& P, std::size_t atom) {
    const Entry& e = closure(P);
    Derivation d{e.just[atom].kind, to_set(P), atoms_[atom], std::nullopt, {}};
    if (d.kind == Derivation::Kind::Hypothesis) return d;
    const IRule& r = rules_[e.just[atom].rule];
    d.rule = *r.source;
    for (const auto& [hyps, head] : r.premises) d.children.push_back(build(P | hyps, head));
    return d;
  }

  AtomSet to_set(const Bits& s) const {
    AtomSet out;
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) out.insert(atoms_[i]);
    return out;
  }

 private:
  struct IRule {
    std::vector<std::pair<Bits, std::size_t>> premises;
    std::size_t conclusion;
    const AtomicRule* source;
  };

  void intern(const Atom& a) {
    if (index_.emplace(a, atoms_.size()).second) atoms_.push_back(a);
  }

  std::vector<Atom> atoms_;
  std::map<Atom, std::size_t> index_;
  std::vector<IRule> rules_;
  std::map<Bits, Entry> memo_;
};

}  // namespace

DeriveResult derives(const Base& b, const AtomSet& assumptions, const Atom& goal) {
  Engine eng(b, assumptions, goal);
  Bits P = eng.bits(assumptions);
  std::size_t g = *eng.index_of(goal);
  if (!eng.closure(P).derived.test(g)) return {};
  return {true, eng.build(P, g)};
}

AtomSet derivable_atoms(const Base& b, const AtomSet& assumptions) {
  Engine eng(b, assumptions, std::nullopt);
  Bits P = eng.bits(assumptions);
  return eng.to_set(eng.closure(P).derived);
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

bool replay(const Base& b, const Derivation& d) {
  switch (d.kind) {
    case Derivation::Kind::Hypothesis:
      return !d.rule && d.children.empty() && d.assumptions.count(d.conclusion) > 0;
    case Derivation::Kind::Nullary:
      return d.rule && d.rule->is_nullary() && b.count(*d.rule) && d.children.empty() &&
             d.rule->conclusion == d.conclusion;
    case Derivation::Kind::Apply: {
      if (!d.rule || d.rule->is_nullary() || !b.count(*d.rule)) return false;
      if (d.rule->conclusion != d.conclusion) return false;
      if (d.children.size() != d.rule->premises.size()) return false;
      for (std::size_t i = 0; i < d.children.size(); ++i) {
        const auto& prem = d.rule->premises[i];
        const auto& child = d.children[i];
        AtomSet expected = d.assumptions;
        expected.insert(prem.hyps.begin(), prem.hyps.end());
        if (child.assumptions != expected || child.conclusion != prem.head) return false;
        if (!replay(b, child)) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

const char* kind_name(Derivation::Kind k) {
  switch (k) {
    case Derivation::Kind::Hypothesis: return "hypothesis";
    case Derivation::Kind::Nullary: return "nullary";
    case Derivation::Kind::Apply: return "apply";
  }
  return "?";
}

std::string join_atoms(const AtomSet& s) {
  std::string out;
  for (const auto& a : s) {
    if (!out.empty()) out += ", ";
    out += a.name();
  }
  return out;
}

void text_into(std::ostringstream& os, const Derivation& d, int depth) {
  os << std::string(2 * depth, ' ') << join_atoms(d.assumptions) << (d.assumptions.empty() ? "" : " ")
     << "|- " << d.conclusion.name() << "  [" << kind_name(d.kind);
  if (d.rule) os << ": " << print_rule(*d.rule);
  os << "]\n";
  for (const auto& c : d.children) text_into(os, c, depth + 1);
}

void check_shape(const Derivation& d) {
  bool ok = d.kind == Derivation::Kind::Hypothesis ? !d.rule && d.children.empty()
                                                   : d.rule.has_value();
  if (d.kind == Derivation::Kind::Nullary) ok = ok && d.children.empty();
  if (d.kind == Derivation::Kind::Apply) ok = ok && d.children.size() == d.rule->premises.size();
  if (!ok) throw std::invalid_argument("malformed derivation node concluding " + d.conclusion.name());
  for (const auto& c : d.children) check_shape(c);
}

}  // namespace

std::string derivation_text(const Derivation& d) {
  std::ostringstream os;
  text_into(os, d, 0);
  return os.str();
}

nlohmann::json derivation_json(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = kind_name(d.kind);
  if (d.rule) j["by"] = print_rule(*d.rule);
  j["assumptions"] = nlohmann::json::array();
  for (const auto& a : d.assumptions) j["assumptions"].push_back(a.name());
  j["conclusion"] = d.conclusion.name();
  j["children"] = nlohmann::json::array();
  for (const auto& c : d.children) j["children"].push_back(derivation_json(c));
  return j;
}

namespace {

std::size_t rule_steps(const Derivation& d) {
  std::size_t n = d.kind == Derivation::Kind::Hypothesis ? 0 : 1;
  for (const auto& c : d.children) n += rule_steps(c);
  return n;
}

}  // namespace

nlohmann::json derivation_trace(const Base& b, const Derivation& d) {
  check_shape(d);
  return {{"derivation", derivation_json(d)},
          {"text", derivation_text(d)},
          {"nodes", d.size()},
          {"steps", rule_steps(d)},
          {"replayed", replay(b, d)}};
}

}  // namespace bes
