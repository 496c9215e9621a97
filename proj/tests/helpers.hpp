#pragma once

#include <string>

#include "bes/base.hpp"
#include "bes/syntax.hpp"

inline bes::Formula F(const std::string& s) { return bes::parse_formula(s); }
inline bes::Atom A(const std::string& s) { return bes::Atom(s); }
inline bes::Formula At(const std::string& s) { return bes::Formula::atom(bes::Atom(s)); }

inline bes::AtomSet atoms(std::initializer_list<const char*> names) {
  bes::AtomSet out;
  for (const char* n : names) out.insert(bes::Atom(n));
  return out;
}

// Test spelling for generated names: "H_3" stands for "#3".
inline bes::Formula hashed(const bes::Formula& f) {
  using bes::Formula;
  switch (f.kind()) {
    case bes::Connective::Atomic: {
      const std::string& n = f.atom_value().name();
      return n.rfind("H_", 0) == 0 ? Formula::atom(bes::Atom("#" + n.substr(2))) : f;
    }
    case bes::Connective::Absurd: return f;
    case bes::Connective::Conj: return Formula::conj(hashed(f.lhs()), hashed(f.rhs()));
    case bes::Connective::Disj: return Formula::disj(hashed(f.lhs()), hashed(f.rhs()));
    case bes::Connective::Impl: return Formula::impl(hashed(f.lhs()), hashed(f.rhs()));
  }
  return f;
}

inline bes::Formula H(std::string s) {
  for (std::size_t i; (i = s.find('#')) != std::string::npos;) s.replace(i, 1, "H_");
  for (std::size_t i; (i = s.find('?')) != std::string::npos;) s.replace(i, 1, "Q_");
  bes::Formula f = hashed(bes::parse_formula(s));
  return f;
}
