#pragma once

#include <random>
#include <string>

#include "canonseq/coherence.hpp"
#include "canonseq/decision.hpp"
#include "canonseq/derivation.hpp"
#include "canonseq/kripke.hpp"
#include "canonseq/parser.hpp"
#include "canonseq/rules.hpp"

namespace ct {

using namespace canonseq;

inline const CanonicalSystem& sys(const std::string& name) {
  const CanonicalSystem* g = find_builtin(name);
  if (!g) throw std::runtime_error("no builtin system: " + name);
  return *g;
}

// A system holding every catalog connective, handy for parsing test inputs.
inline const CanonicalSystem& all_sys() {
  static const CanonicalSystem g = [] {
    std::vector<const CanonicalSystem*> parts;
    for (const auto& [name, s] : builtin_systems()) parts.push_back(&s);
    return merge_systems("all", parts);
  }();
  return g;
}

inline Formula F(const std::string& text) {
  return parse_formula(text, all_sys().signature);
}

inline Sequent S(const std::string& text) {
  return parse_sequent(text, all_sys().signature);
}

inline std::set<Sequent> SS(std::initializer_list<std::string> texts) {
  std::set<Sequent> out;
  for (const auto& t : texts) out.insert(S(t));
  return out;
}

inline Theory TT(std::initializer_list<std::string> texts) {
  Theory out;
  for (const auto& t : texts) out.insert(F(t));
  return out;
}

inline std::string fixture(const std::string& rel) {
  return std::string(CANONSEQ_FIXTURES_DIR) + "/" + rel;
}

// Random formula over the given signature and atom indices.
inline Formula random_formula(std::mt19937& rng, const Signature& sig,
                              int max_depth, int max_atom = 2) {
  std::vector<Connective> conns(sig.connectives().begin(),
                                sig.connectives().end());
  std::uniform_int_distribution<int> atom_dist(1, max_atom);
  if (max_depth == 0 || conns.empty() || rng() % 3 == 0)
    return Formula::atom(atom_dist(rng));
  const Connective& c = conns[rng() % conns.size()];
  std::vector<Formula> args;
  for (int i = 0; i < c.arity; ++i)
    args.push_back(random_formula(rng, sig, max_depth - 1, max_atom));
  return Formula::compound(c.name, std::move(args));
}

}  // namespace ct
