#include "bes/kripke.hpp"

#include <sstream>
#include <stdexcept>

namespace bes {

bool KripkeModel::well_formed() const {
  if (worlds == 0 || order.size() != worlds || valuation.size() != worlds) return false;
  for (std::size_t w = 0; w < worlds; ++w) {
    if (order[w].size() != worlds || !order[w][w] || !order[0][w]) return false;
    for (std::size_t v = 0; v < worlds; ++v) {
      if (!order[w][v]) continue;
      for (const auto& a : valuation[w])
        if (!valuation[v].count(a)) return false;
      for (std::size_t u = 0; u < worlds; ++u)
        if (order[v][u] && !order[w][u]) return false;
    }
  }
  return true;
}

bool forces(const KripkeModel& m, std::size_t w, const Formula& f) {
  switch (f.kind()) {
    case Connective::Atomic: return m.valuation[w].count(f.atom_value()) > 0;
    case Connective::Absurd: return false;
    case Connective::Conj: return forces(m, w, f.lhs()) && forces(m, w, f.rhs());
    case Connective::Disj: return forces(m, w, f.lhs()) || forces(m, w, f.rhs());
    case Connective::Impl:
      for (std::size_t v = 0; v < m.worlds; ++v)
        if (m.order[w][v] && forces(m, v, f.lhs()) && !forces(m, v, f.rhs())) return false;
      return true;
  }
  return false;
}

namespace {

// Candidate orders only relate lower-numbered worlds to higher-numbered
// ones; every finite poset has such a labelling.
std::vector<std::vector<std::vector<bool>>> rooted_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> out;
  for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) le[pairs[k].first][pairs[k].second] = true;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = le[0][j];
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t c = 0; c < n && ok; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) ok = false;
    if (ok) out.push_back(std::move(le));
  }
  return out;
}

std::vector<unsigned> up_sets(const std::vector<std::vector<bool>>& le) {
  std::size_t n = le.size();
  std::vector<unsigned> out;
  for (unsigned s = 0; s < (1u << n); ++s) {
    bool closed = true;
    for (std::size_t w = 0; w < n && closed; ++w)
      for (std::size_t v = 0; v < n && closed; ++v)
        if ((s >> w & 1) && le[w][v] && !(s >> v & 1)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

}  // namespace

std::optional<KripkeModel> kripke_refute(const Formula& f, std::size_t max_worlds) {
  if (max_worlds == 0) throw std::invalid_argument("kripke_refute: max_worlds must be at least 1");
  if (max_worlds > 6) throw std::invalid_argument("kripke_refute: at most 6 worlds are supported");
  std::vector<Atom> atoms;
  for (const auto& a : atoms_of(f)) atoms.push_back(a);

  for (std::size_t n = 1; n <= max_worlds; ++n) {
    for (const auto& le : rooted_orders(n)) {
      auto ups = up_sets(le);
      std::vector<std::size_t> choice(atoms.size(), 0);
      while (true) {
        KripkeModel m{n, le, std::vector<AtomSet>(n)};
        for (std::size_t i = 0; i < atoms.size(); ++i)
          for (std::size_t w = 0; w < n; ++w)
            if (ups[choice[i]] >> w & 1) m.valuation[w].insert(atoms[i]);
        if (!forces(m, 0, f)) {
          if (!m.well_formed() || forces(m, 0, f)) throw std::logic_error("countermodel failed replay");
          return m;
        }
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == ups.size()) choice[i++] = 0;
        if (i == choice.size()) break;
      }
    }
  }
  return std::nullopt;
}

std::string print_model(const KripkeModel& m) {
  std::ostringstream os;
  for (std::size_t w = 0; w < m.worlds; ++w) {
    os << "w" << w << " {";
    bool first = true;
    for (const auto& a : m.valuation[w]) {
      os << (first ? "" : ", ") << a.name();
      first = false;
    }
    os << "} <=";
    for (std::size_t v = 0; v < m.worlds; ++v)
      if (m.order[w][v]) os << " w" << v;
    os << '\n';
  }
  return os.str();
}

nlohmann::json model_json(const KripkeModel& m) {
  nlohmann::json worlds = nlohmann::json::array();
  for (std::size_t w = 0; w < m.worlds; ++w) {
    nlohmann::json above = nlohmann::json::array(), val = nlohmann::json::array();
    for (std::size_t v = 0; v < m.worlds; ++v)
      if (m.order[w][v]) above.push_back(v);
    for (const auto& a : m.valuation[w]) val.push_back(a.name());
    worlds.push_back({{"world", w}, {"above", above}, {"true", val}});
  }
  return {{"worlds", worlds}};
}

}  // namespace bes
