#include "canonseq/coherence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace canonseq {

namespace {

// Clauses over p1..pn packed as (antecedent bitmask, succedent 0|1..n).
struct PackedClause {
  unsigned ante = 0;
  int succ = 0;
  auto operator<=>(const PackedClause&) const = default;
};

PackedClause pack(const Clause& c, int arity) {
  PackedClause p;
  for (const auto& f : c.antecedent) {
    if (!f.is_atom() || f.atom_index() > arity)
      throw std::invalid_argument("clause atom out of range: " + to_string(f));
    p.ante |= 1u << (f.atom_index() - 1);
  }
  if (c.succedent) {
    if (!c.succedent->is_atom() || c.succedent->atom_index() > arity)
      throw std::invalid_argument("clause atom out of range: " +
                                  to_string(*c.succedent));
    p.succ = c.succedent->atom_index();
  }
  return p;
}

Clause unpack(const PackedClause& p, int arity) {
  Clause c;
  for (int i = 0; i < arity; ++i)
    if (p.ante & (1u << i)) c.antecedent.insert(Formula::atom(i + 1));
  if (p.succ) c.succedent = Formula::atom(p.succ);
  return c;
}

bool satisfied(const PackedClause& c, unsigned assignment) {
  if ((c.ante & assignment) != c.ante) return true;  // some antecedent false
  return c.succ != 0 && (assignment & (1u << (c.succ - 1)));
}

}  // namespace

InconsistencyWitness classically_inconsistent(
    const std::vector<Clause>& clauses, int arity) {
  std::vector<PackedClause> packed;
  packed.reserve(clauses.size());
  for (const auto& c : clauses) packed.push_back(pack(c, arity));

  std::optional<unsigned> model;
  for (unsigned v = 0; v < (1u << arity); ++v) {
    bool all = true;
    for (const auto& c : packed)
      if (!satisfied(c, v)) {
        all = false;
        break;
      }
    if (all) {
      model = v;
      break;
    }
  }

  // Cut saturation with minimal cut counts; doubles as an independent
  // decision of the same question.
  struct Info {
    int cost;
    int left = -1, right = -1;  // indices into the id space below
    int cut_atom = 0;
  };
  std::map<PackedClause, Info> best;
  std::vector<PackedClause> by_id;
  auto id_of = [&](const PackedClause& c) {
    for (size_t i = 0; i < by_id.size(); ++i)
      if (by_id[i] == c) return static_cast<int>(i);
    by_id.push_back(c);
    return static_cast<int>(by_id.size() - 1);
  };
  for (const auto& c : packed)
    if (!best.count(c) || best[c].cost > 0) {
      best[c] = Info{0};
      id_of(c);
    }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<PackedClause, Info>> snapshot(best.begin(),
                                                        best.end());
    for (const auto& [c1, i1] : snapshot) {
      if (c1.succ == 0) continue;
      unsigned bit = 1u << (c1.succ - 1);
      for (const auto& [c2, i2] : snapshot) {
        if (!(c2.ante & bit)) continue;
        PackedClause r{c1.ante | (c2.ante & ~bit), c2.succ};
        int cost = i1.cost + i2.cost + 1;
        auto it = best.find(r);
        if (it == best.end() || it->second.cost > cost) {
          best[r] = Info{cost, id_of(c1), id_of(c2), c1.succ};
          id_of(r);
          changed = true;
        }
      }
    }
  }
  bool empty_derivable = best.count(PackedClause{0, 0}) > 0;
  if (empty_derivable == model.has_value())
    throw std::logic_error(
        "truth-table and cut-saturation deciders disagree on a clause set");

  if (model) {
    SatisfyingAssignment a;
    for (int i = 0; i < arity; ++i) a.values.push_back(*model & (1u << i));
    return a;
  }

  // Linearize the minimal-cost derivation of the empty clause; shared
  // subderivations are emitted once.
  CutDerivation out;
  out.initial = clauses;
  std::map<PackedClause, int> emitted;  // clause -> index in [initial|steps]
  for (size_t i = 0; i < packed.size(); ++i)
    if (!emitted.count(packed[i])) emitted[packed[i]] = static_cast<int>(i);
  auto emit = [&](auto&& self, const PackedClause& c) -> int {
    auto it = emitted.find(c);
    if (it != emitted.end()) return it->second;
    const Info& info = best.at(c);
    int li = self(self, by_id[info.left]);
    int ri = self(self, by_id[info.right]);
    out.steps.push_back(ClauseCut{unpack(c, arity), li, ri,
                                  Formula::atom(info.cut_atom)});
    int idx = static_cast<int>(out.initial.size() + out.steps.size() - 1);
    emitted[c] = idx;
    return idx;
  };
  emit(emit, PackedClause{0, 0});
  return out;
}

bool validate_witness(const std::vector<Clause>& clauses, int arity,
                      const InconsistencyWitness& w) {
  if (const auto* a = std::get_if<SatisfyingAssignment>(&w)) {
    if (static_cast<int>(a->values.size()) < arity) return false;
    unsigned v = 0;
    for (int i = 0; i < arity; ++i)
      if (a->values[i]) v |= 1u << i;
    for (const auto& c : clauses)
      if (!satisfied(pack(c, arity), v)) return false;
    return true;
  }
  const auto& d = std::get<CutDerivation>(w);
  if (d.initial.size() != clauses.size()) return false;
  std::vector<PackedClause> all;
  for (const auto& c : d.initial) all.push_back(pack(c, arity));
  for (size_t i = 0; i < d.steps.size(); ++i) {
    const ClauseCut& s = d.steps[i];
    size_t limit = d.initial.size() + i;
    if (s.left_index < 0 || s.right_index < 0 ||
        static_cast<size_t>(s.left_index) >= limit ||
        static_cast<size_t>(s.right_index) >= limit)
      return false;
    const PackedClause& l = all[s.left_index];
    const PackedClause& r = all[s.right_index];
    if (!s.cut_atom.is_atom()) return false;
    int atom = s.cut_atom.atom_index();
    unsigned bit = 1u << (atom - 1);
    if (l.succ != atom || !(r.ante & bit)) return false;
    PackedClause res{l.ante | (r.ante & ~bit), r.succ};
    if (!(pack(s.result, arity) == res)) return false;
    all.push_back(res);
  }
  return !d.steps.empty() && all.back() == PackedClause{0, 0};
}

const RulePairResult* CoherenceReport::first_incoherent() const {
  for (const auto& p : pairs)
    if (std::holds_alternative<SatisfyingAssignment>(p.witness)) return &p;
  return nullptr;
}

CoherenceReport is_coherent(const CanonicalSystem& g) {
  CoherenceReport rep;
  for (const auto& conn : g.signature.connectives()) {
    auto lefts = g.left_rules_for(conn.name);
    auto rights = g.right_rules_for(conn.name);
    for (const auto& [li, lrule] : lefts) {
      for (const auto& [ri, rrule] : rights) {
        std::set<Clause> dedup;
        for (const auto& c : lrule->hard_premises) dedup.insert(c);
        for (const auto& c : lrule->soft_premises) dedup.insert(c);
        for (const auto& c : rrule->premises) dedup.insert(c);
        std::vector<Clause> clauses(dedup.begin(), dedup.end());
        InconsistencyWitness w = classically_inconsistent(clauses, conn.arity);
        if (std::holds_alternative<SatisfyingAssignment>(w))
          rep.coherent = false;
        rep.pairs.push_back(RulePairResult{conn.name, li, ri, std::move(w)});
      }
    }
  }
  return rep;
}

std::set<Sequent> strong_consistency_assumptions() {
  Sequent pos{{}, Formula::atom(1)};
  Sequent neg{{Formula::atom(2)}, std::nullopt};
  return {pos, neg};
}

namespace {

// Derives sigma(clause) with empty context from {=> p1, p2 =>} by
// weakening, where sigma maps true atoms to p1 and false atoms to p2.
Derivation derive_clause_instance(const Substitution& sigma,
                                  const Clause& clause,
                                  const std::vector<bool>& v,
                                  const Succedent& want_succ) {
  const Formula p1 = Formula::atom(1);
  const Formula p2 = Formula::atom(2);
  Theory ante = sigma.apply(clause.antecedent);

  bool false_antecedent = false;
  for (const auto& f : clause.antecedent)
    if (!v[f.atom_index() - 1]) false_antecedent = true;

  if (false_antecedent) {
    Derivation d = d_assume(Sequent{{p2}, std::nullopt});
    Theory added = ante;
    added.erase(p2);
    if (!added.empty()) d = d_weaken_left(std::move(d), added);
    if (want_succ) d = d_weaken_right(std::move(d), *want_succ);
    return d;
  }
  // The clause is satisfied through its succedent: sigma maps it to p1.
  Derivation d = d_assume(Sequent{{}, p1});
  if (!ante.empty()) d = d_weaken_left(std::move(d), ante);
  return d;
}

}  // namespace

StrongConsistencyWitness strong_consistency_witness(const CanonicalSystem& g) {
  CoherenceReport rep = is_coherent(g);
  if (rep.coherent) return {};

  const RulePairResult* bad = rep.first_incoherent();
  const auto& v = std::get<SatisfyingAssignment>(bad->witness).values;
  const LeftRule* lrule = g.left_rule(bad->connective, bad->left_index);
  const RightRule* rrule = g.right_rule(bad->connective, bad->right_index);

  Substitution sigma;
  for (size_t i = 0; i < v.size(); ++i)
    sigma.set(static_cast<int>(i) + 1, Formula::atom(v[i] ? 1 : 2));

  std::vector<Derivation> right_premises;
  for (const auto& p : rrule->premises)
    right_premises.push_back(
        derive_clause_instance(sigma, p, v, sigma.apply(p.succedent)));
  Derivation right_app =
      d_apply_right(g, bad->connective, bad->right_index, sigma, {},
                    std::move(right_premises));

  std::vector<Derivation> left_premises;
  for (const auto& p : lrule->hard_premises)
    left_premises.push_back(
        derive_clause_instance(sigma, p, v, sigma.apply(p.succedent)));
  for (const auto& p : lrule->soft_premises)
    left_premises.push_back(derive_clause_instance(sigma, p, v, std::nullopt));
  Derivation left_app =
      d_apply_left(g, bad->connective, bad->left_index, sigma, {},
                   std::nullopt, std::move(left_premises));

  Formula head = rule_head(bad->connective, rrule->arity, sigma);
  Derivation root =
      d_cut(std::move(right_app), std::move(left_app), head);
  return {false, std::move(root)};
}

}  // namespace canonseq
