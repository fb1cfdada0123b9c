#include "canonseq/kripke.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "canonseq/decision.hpp"
#include "canonseq/parser.hpp"

namespace canonseq {

int Semiframe::formula_id(const Formula& f) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), f);
  if (it == domain.end() || !(*it == f)) return -1;
  return static_cast<int>(it - domain.begin());
}

bool Semiframe::value(int world, const Formula& f) const {
  int id = formula_id(f);
  if (id < 0) throw DomainError(f);
  return valuation[world][id];
}

Semiframe make_semiframe(
    int worlds, const std::vector<std::pair<int, int>>& below,
    const Theory& domain,
    const std::vector<std::vector<std::pair<Formula, bool>>>& rows) {
  Semiframe f;
  for (int i = 0; i < worlds; ++i) f.world_labels.push_back(std::to_string(i));
  f.leq.assign(worlds, std::vector<bool>(worlds, false));
  for (int i = 0; i < worlds; ++i) f.leq[i][i] = true;
  for (auto [a, b] : below) f.leq[a][b] = true;
  for (int k = 0; k < worlds; ++k)  // transitive closure
    for (int a = 0; a < worlds; ++a)
      for (int b = 0; b < worlds; ++b)
        if (f.leq[a][k] && f.leq[k][b]) f.leq[a][b] = true;
  f.domain.assign(domain.begin(), domain.end());
  f.valuation.assign(worlds, std::vector<bool>(f.domain.size(), false));
  if (static_cast<int>(rows.size()) != worlds)
    throw std::invalid_argument("one valuation row per world required");
  for (int w = 0; w < worlds; ++w)
    for (const auto& [formula, v] : rows[w]) {
      int id = f.formula_id(formula);
      if (id < 0) throw DomainError(formula);
      f.valuation[w][id] = v;
    }
  return f;
}

std::vector<std::string> check_semiframe(const Semiframe& f) {
  std::vector<std::string> out;
  int n = f.world_count();
  if (n == 0) out.push_back("the set of worlds is empty");
  if (static_cast<int>(f.leq.size()) != n)
    out.push_back("order relation has the wrong shape");
  else
    for (const auto& row : f.leq)
      if (static_cast<int>(row.size()) != n) {
        out.push_back("order relation has the wrong shape");
        break;
      }
  if (!out.empty()) return out;

  for (int a = 0; a < n; ++a)
    if (!f.leq[a][a])
      out.push_back("order not reflexive at world " + std::to_string(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && f.leq[a][b] && f.leq[b][a])
        out.push_back("order not antisymmetric on worlds " +
                      std::to_string(a) + ", " + std::to_string(b));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (f.leq[a][b] && f.leq[b][c] && !f.leq[a][c])
          out.push_back("order not transitive through worlds " +
                        std::to_string(a) + ", " + std::to_string(b) + ", " +
                        std::to_string(c));

  for (size_t i = 0; i + 1 < f.domain.size(); ++i)
    if (!(f.domain[i] < f.domain[i + 1]))
      out.push_back("domain not sorted or contains duplicates");
  for (const auto& formula : f.domain)
    for (const auto& arg : formula.args())
      if (f.formula_id(arg) < 0)
        out.push_back("domain not closed under subformulas: missing " +
                      to_string(arg));

  if (static_cast<int>(f.valuation.size()) != n)
    out.push_back("one valuation row per world required");
  else
    for (const auto& row : f.valuation)
      if (row.size() != f.domain.size()) {
        out.push_back("valuation row does not cover the domain");
        return out;
      }
  if (!out.empty()) return out;

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!f.leq[a][b] || a == b) continue;
      for (size_t i = 0; i < f.domain.size(); ++i)
        if (f.valuation[a][i] && !f.valuation[b][i])
          out.push_back("persistence violation at (" + std::to_string(a) +
                        ", " + std::to_string(b) + ", " +
                        to_string(f.domain[i]) + ")");
    }
  return out;
}

bool locally_true(const Semiframe& f, int world, const Sequent& s) {
  for (const auto& formula : s.antecedent)
    if (!f.value(world, formula)) return true;
  return s.succedent && f.value(world, *s.succedent);
}

bool true_in(const Semiframe& f, int world, const Sequent& s) {
  for (int b = 0; b < f.world_count(); ++b)
    if (f.leq[world][b] && !locally_true(f, b, s)) return false;
  return true;
}

namespace {

Substitution subst_for_target(const Formula& target) {
  Substitution s;
  for (size_t i = 0; i < target.args().size(); ++i)
    s.set(static_cast<int>(i) + 1, target.args()[i]);
  return s;
}

Sequent clause_instance(const Clause& c, const Substitution& sigma) {
  return sigma.apply(c);
}

}  // namespace

LegalityReport respects(const Semiframe& f, const RightRule& r,
                        const std::string& label) {
  for (int t = 0; t < static_cast<int>(f.domain.size()); ++t) {
    const Formula& target = f.domain[t];
    if (target.is_atom() || target.connective() != r.connective ||
        static_cast<int>(target.args().size()) != r.arity)
      continue;
    Substitution sigma = subst_for_target(target);
    std::vector<Sequent> premises;
    for (const auto& p : r.premises)
      premises.push_back(clause_instance(p, sigma));
    for (int a = 0; a < f.world_count(); ++a) {
      bool fulfils = true;
      for (const auto& p : premises)
        if (!true_in(f, a, p)) {
          fulfils = false;
          break;
        }
      if (fulfils && !f.valuation[a][t])
        return {false, LegalityViolation{a, label, sigma}};
    }
  }
  return {};
}

LegalityReport respects(const Semiframe& f, const LeftRule& r,
                        const std::string& label) {
  for (int t = 0; t < static_cast<int>(f.domain.size()); ++t) {
    const Formula& target = f.domain[t];
    if (target.is_atom() || target.connective() != r.connective ||
        static_cast<int>(target.args().size()) != r.arity)
      continue;
    Substitution sigma = subst_for_target(target);
    std::vector<Sequent> hard, soft;
    for (const auto& p : r.hard_premises)
      hard.push_back(clause_instance(p, sigma));
    for (const auto& p : r.soft_premises)
      soft.push_back(clause_instance(p, sigma));
    for (int a = 0; a < f.world_count(); ++a) {
      bool fulfils = true;
      for (const auto& p : hard)
        if (!true_in(f, a, p)) {
          fulfils = false;
          break;
        }
      if (fulfils)
        for (const auto& p : soft)
          if (!locally_true(f, a, p)) {
            fulfils = false;
            break;
          }
      if (fulfils && f.valuation[a][t])
        return {false, LegalityViolation{a, label, sigma}};
    }
  }
  return {};
}

LegalityReport is_legal(const Semiframe& f, const CanonicalSystem& g) {
  std::map<std::string, int> right_seen, left_seen;
  for (const auto& r : g.right_rules) {
    auto rep = respects(
        f, r, rule_label(true, r.connective, right_seen[r.connective]++));
    if (!rep.legal) return rep;
  }
  for (const auto& r : g.left_rules) {
    auto rep = respects(
        f, r, rule_label(false, r.connective, left_seen[r.connective]++));
    if (!rep.legal) return rep;
  }
  return {};
}

bool is_model(const Semiframe& f, const std::set<Sequent>& seqs) {
  bool local_everywhere = true;
  bool absolute_everywhere = true;
  for (const auto& s : seqs)
    for (int a = 0; a < f.world_count(); ++a) {
      if (!locally_true(f, a, s)) local_everywhere = false;
      if (!true_in(f, a, s)) absolute_everywhere = false;
    }
  if (local_everywhere != absolute_everywhere)
    throw std::logic_error(
        "the two model-hood formulations disagree; persistence is broken");
  return local_everywhere;
}

// ---------------------------------------------------------------------------
// Canonical countermodel (the completeness construction)

namespace {

std::string theory_label(SaturationState::Mask mask,
                         const std::vector<Formula>& domain) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (size_t i = 0; i < domain.size(); ++i)
    if (mask & (SaturationState::Mask(1) << i)) {
      if (!first) os << ", ";
      first = false;
      os << to_string(domain[i]);
    }
  os << '}';
  return os.str();
}

}  // namespace

Semiframe build_canonical_countermodel(const CanonicalSystem& g,
                                       const std::set<Sequent>& assumptions,
                                       const Sequent& goal,
                                       const SaturationState& sat) {
  using Mask = SaturationState::Mask;
  const auto& domain = sat.domain();
  const int n = static_cast<int>(domain.size());
  const Mask full = n == 0 ? 0 : (Mask(~0u) >> (32 - n));

  Mask goal_ante = 0;
  for (const auto& f : goal.antecedent) goal_ante |= Mask(1) << sat.formula_id(f);
  int goal_succ = goal.succedent ? sat.formula_id(*goal.succedent) + 1 : 0;
  if (sat.covered_ids(goal_ante, goal_succ))
    throw std::logic_error("goal is derivable; no countermodel exists");

  auto covered = [&](Mask m, int e) { return sat.covered_ids(m, e); };

  // Extends t to an E-maximal theory, scanning candidates in domain order.
  auto extend_maximal = [&](Mask t, int e) {
    for (int i = 0; i < n; ++i) {
      Mask bit = Mask(1) << i;
      if (!(t & bit) && !covered(t | bit, e)) t |= bit;
    }
    return t;
  };
  auto is_maximal = [&](Mask t, int e) {
    if (covered(t, e)) return false;
    for (int i = 0; i < n; ++i) {
      Mask bit = Mask(1) << i;
      if (!(t & bit) && !covered(t | bit, e)) return false;
    }
    return true;
  };

  Mask t0 = extend_maximal(goal_ante, goal_succ);

  std::vector<Mask> worlds;
  Mask comp = full & ~t0;
  for (Mask sub = comp;; sub = (sub - 1) & comp) {
    Mask t = t0 | sub;
    for (int e = 0; e <= n; ++e)
      if (is_maximal(t, e)) {
        worlds.push_back(t);
        break;
      }
    if (sub == 0) break;
  }
  std::sort(worlds.begin(), worlds.end());
  const int w = static_cast<int>(worlds.size());
  if (w == 0) throw std::logic_error("canonical construction found no worlds");

  Semiframe frame;
  frame.domain = domain;
  for (Mask t : worlds) frame.world_labels.push_back(theory_label(t, domain));
  frame.leq.assign(w, std::vector<bool>(w, false));
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      frame.leq[a][b] = (worlds[a] & ~worlds[b]) == 0;
  frame.valuation.assign(w, std::vector<bool>(n, false));

  // Values are defined by complexity stratum across all worlds at once:
  // atoms by membership; a compound is true when a right rule for it is
  // fulfilled, or it is a member and no left rule is fulfilled at any
  // larger world.
  auto local_clause = [&](int world, Mask pi, int ei) {
    for (int i = 0; i < n; ++i)
      if ((pi & (Mask(1) << i)) && !frame.valuation[world][i]) return true;
    return ei != 0 && frame.valuation[world][ei - 1];
  };
  auto abs_clause = [&](int world, Mask pi, int ei) {
    for (int b = 0; b < w; ++b)
      if (frame.leq[world][b] && !local_clause(b, pi, ei)) return false;
    return true;
  };

  for (int t = 0; t < n; ++t) {
    const Formula& psi = domain[t];
    if (psi.is_atom()) {
      for (int a = 0; a < w; ++a)
        frame.valuation[a][t] = (worlds[a] >> t) & 1;
      continue;
    }
    std::vector<int> arg_ids;
    for (const auto& arg : psi.args()) arg_ids.push_back(sat.formula_id(arg));
    auto premise_req = [&](const Clause& c, int& ei) {
      Mask pi = 0;
      for (const auto& f : c.antecedent)
        pi |= Mask(1) << arg_ids[f.atom_index() - 1];
      ei = c.succedent ? arg_ids[c.succedent->atom_index() - 1] + 1 : 0;
      return pi;
    };
    auto right_fulfilled = [&](int world) {
      for (const auto& [idx, rule] : g.right_rules_for(psi.connective())) {
        if (rule->arity != static_cast<int>(psi.args().size())) continue;
        bool all = true;
        for (const auto& p : rule->premises) {
          int ei;
          Mask pi = premise_req(p, ei);
          if (!abs_clause(world, pi, ei)) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    };
    auto left_fulfilled = [&](int world) {
      for (const auto& [idx, rule] : g.left_rules_for(psi.connective())) {
        if (rule->arity != static_cast<int>(psi.args().size())) continue;
        bool all = true;
        for (const auto& p : rule->hard_premises) {
          int ei;
          Mask pi = premise_req(p, ei);
          if (!abs_clause(world, pi, ei)) {
            all = false;
            break;
          }
        }
        if (all)
          for (const auto& p : rule->soft_premises) {
            int ei;
            Mask pi = premise_req(p, ei);
            if (!local_clause(world, pi, ei)) {
              all = false;
              break;
            }
          }
        if (all) return true;
      }
      return false;
    };
    for (int a = 0; a < w; ++a) {
      bool value = right_fulfilled(a);
      if (!value && ((worlds[a] >> t) & 1)) {
        bool blocked = false;
        for (int b = 0; b < w && !blocked; ++b)
          if (frame.leq[a][b] && left_fulfilled(b)) blocked = true;
        value = !blocked;
      }
      frame.valuation[a][t] = value;
    }
  }

  if (auto diags = check_semiframe(frame); !diags.empty())
    throw std::logic_error("canonical countermodel is not a semiframe: " +
                           diags.front());
  if (!is_legal(frame, g).legal)
    throw std::logic_error("canonical countermodel is not legal");
  if (!is_model(frame, assumptions))
    throw std::logic_error(
        "canonical countermodel does not model the assumptions");
  if (is_model(frame, {goal}))
    throw std::logic_error("canonical countermodel models the goal");
  return frame;
}

// ---------------------------------------------------------------------------
// Generic countermodel search

CountermodelSearchResult countermodel_search(const CanonicalSystem& g,
                                             const std::set<Sequent>& assumptions,
                                             const Sequent& goal,
                                             int max_worlds,
                                             long long node_budget) {
  using Mask = std::uint32_t;
  std::set<Sequent> seed = assumptions;
  seed.insert(goal);
  Theory closure = subformula_closure(seed);
  const int n = static_cast<int>(closure.size());
  if (n > 20)
    throw std::invalid_argument(
        "countermodel search domain too large: " + std::to_string(n));
  std::vector<Formula> domain(closure.begin(), closure.end());

  const int theories = 1 << n;
  if (max_worlds < 0) max_worlds = std::min(theories, 16);
  max_worlds = std::min(max_worlds, theories);

  auto intern = [&](const Sequent& s) {
    std::pair<Mask, int> out{0, 0};
    for (const auto& f : s.antecedent) {
      auto it = std::lower_bound(domain.begin(), domain.end(), f);
      out.first |= Mask(1) << (it - domain.begin());
    }
    if (s.succedent) {
      auto it = std::lower_bound(domain.begin(), domain.end(), *s.succedent);
      out.second = static_cast<int>(it - domain.begin()) + 1;
    }
    return out;
  };
  std::vector<std::pair<Mask, int>> assumption_bits;
  for (const auto& s : assumptions) assumption_bits.push_back(intern(s));
  auto [goal_ante, goal_succ] = intern(goal);

  auto local_ok = [&](Mask t, Mask ante, int succ) {
    if ((ante & ~t) != 0) return true;  // some antecedent member is false
    return succ != 0 && ((t >> (succ - 1)) & 1);
  };

  // Rule requirements per compound target, as in the saturation engine.
  struct LocalRule {
    int target;
    bool right;
    std::vector<std::pair<Mask, int>> hard;  // absolute premises
    std::vector<Mask> soft;                  // local premises
  };
  std::vector<LocalRule> rules;
  for (int t = 0; t < n; ++t) {
    const Formula& psi = domain[t];
    if (psi.is_atom()) continue;
    std::vector<int> arg_ids;
    for (const auto& arg : psi.args()) {
      auto it = std::lower_bound(domain.begin(), domain.end(), arg);
      arg_ids.push_back(static_cast<int>(it - domain.begin()));
    }
    auto req = [&](const Clause& c) {
      std::pair<Mask, int> r{0, 0};
      for (const auto& f : c.antecedent)
        r.first |= Mask(1) << arg_ids[f.atom_index() - 1];
      if (c.succedent) r.second = arg_ids[c.succedent->atom_index() - 1] + 1;
      return r;
    };
    for (const auto& [idx, rule] : g.right_rules_for(psi.connective())) {
      if (rule->arity != static_cast<int>(psi.args().size())) continue;
      LocalRule lr{t, true, {}, {}};
      for (const auto& p : rule->premises) lr.hard.push_back(req(p));
      rules.push_back(std::move(lr));
    }
    for (const auto& [idx, rule] : g.left_rules_for(psi.connective())) {
      if (rule->arity != static_cast<int>(psi.args().size())) continue;
      LocalRule lr{t, false, {}, {}};
      for (const auto& p : rule->hard_premises) lr.hard.push_back(req(p));
      for (const auto& p : rule->soft_premises) lr.soft.push_back(req(p).first);
      rules.push_back(std::move(lr));
    }
  }

  // Candidate worlds are theories over the domain, ordered by inclusion and
  // valued by membership; any legal frame quotients onto this shape.
  auto candidate_ok = [&](const std::vector<Mask>& ws) {
    bool goal_fails_somewhere = false;
    for (Mask t : ws)
      if (!local_ok(t, goal_ante, goal_succ)) goal_fails_somewhere = true;
    if (!goal_fails_somewhere) return false;
    for (const auto& [ante, succ] : assumption_bits)
      for (Mask t : ws)
        if (!local_ok(t, ante, succ)) return false;

    auto abs_ok = [&](Mask at, Mask ante, int succ) {
      for (Mask t : ws)
        if ((at & ~t) == 0 && !local_ok(t, ante, succ)) return false;
      return true;
    };
    for (const auto& lr : rules) {
      for (Mask t : ws) {
        bool fulfils = true;
        for (const auto& [pi, ei] : lr.hard)
          if (!abs_ok(t, pi, ei)) {
            fulfils = false;
            break;
          }
        if (fulfils)
          for (Mask pi : lr.soft)
            if (local_ok(t, pi, 0) == false) {
              fulfils = false;
              break;
            }
        if (!fulfils) continue;
        bool member = (t >> lr.target) & 1;
        if (lr.right ? !member : member) return false;
      }
    }
    return true;
  };

  long long examined = 0;
  std::vector<Mask> pick;
  std::optional<std::vector<Mask>> found;
  bool exhausted = true;
  auto choose = [&](auto&& self, int next, int want) -> bool {
    if (examined >= node_budget) {
      exhausted = false;
      return false;
    }
    if (static_cast<int>(pick.size()) == want) {
      ++examined;
      if (candidate_ok(pick)) {
        found = pick;
        return true;
      }
      return false;
    }
    for (int t = next; t < theories; ++t) {
      pick.push_back(static_cast<Mask>(t));
      if (self(self, t + 1, want)) return true;
      pick.pop_back();
      if (examined >= node_budget) {
        exhausted = false;
        return false;
      }
    }
    return false;
  };
  for (int k = 1; k <= max_worlds && !found; ++k) choose(choose, 0, k);

  CountermodelSearchResult out;
  out.exhaustive = exhausted;
  if (!found) return out;

  Semiframe frame;
  frame.domain = domain;
  for (Mask t : *found) {
    frame.world_labels.push_back(theory_label(t, domain));
  }
  int w = static_cast<int>(found->size());
  frame.leq.assign(w, std::vector<bool>(w, false));
  for (int a = 0; a < w; ++a)
    for (int b = 0; b < w; ++b)
      frame.leq[a][b] = ((*found)[a] & ~(*found)[b]) == 0;
  frame.valuation.assign(w, std::vector<bool>(n, false));
  for (int a = 0; a < w; ++a)
    for (int i = 0; i < n; ++i)
      frame.valuation[a][i] = ((*found)[a] >> i) & 1;

  // Cross-check the bit-level search result against the reference
  // evaluators before handing it out.
  if (!check_semiframe(frame).empty() || !is_legal(frame, g).legal ||
      !is_model(frame, assumptions) || is_model(frame, {goal}))
    throw std::logic_error("countermodel search produced an invalid frame");
  out.frame = std::move(frame);
  return out;
}

// ---------------------------------------------------------------------------
// Semiframe extension (analycity made executable)

namespace {

struct ExtensionSearch {
  const CanonicalSystem& g;
  const Semiframe& base;
  std::vector<Formula> target_domain;
  std::vector<int> from_base;  // target id -> base id or -1
  Semiframe work;
  std::vector<int> new_ids;
  size_t limit;
  std::vector<Semiframe> results;

  // Worlds at which each rule concluding `target` forces a value, given the
  // current partial assignment. Returns false on a violated constraint.
  bool row_consistent(int target) {
    const int w = work.world_count();
    for (int a = 0; a < w; ++a)
      for (int b = 0; b < w; ++b)
        if (work.leq[a][b] && work.valuation[a][target] &&
            !work.valuation[b][target])
          return false;
    const Formula& psi = work.domain[target];
    Substitution sigma = subst_for_target(psi);
    for (const auto& [idx, rule] : g.right_rules_for(psi.connective())) {
      if (rule->arity != static_cast<int>(psi.args().size())) continue;
      std::vector<Sequent> premises;
      for (const auto& p : rule->premises)
        premises.push_back(sigma.apply(p));
      for (int a = 0; a < w; ++a) {
        bool fulfils = true;
        for (const auto& p : premises)
          if (!true_in(work, a, p)) {
            fulfils = false;
            break;
          }
        if (fulfils && !work.valuation[a][target]) return false;
      }
    }
    for (const auto& [idx, rule] : g.left_rules_for(psi.connective())) {
      if (rule->arity != static_cast<int>(psi.args().size())) continue;
      std::vector<Sequent> hard, soft;
      for (const auto& p : rule->hard_premises) hard.push_back(sigma.apply(p));
      for (const auto& p : rule->soft_premises) soft.push_back(sigma.apply(p));
      for (int a = 0; a < w; ++a) {
        bool fulfils = true;
        for (const auto& p : hard)
          if (!true_in(work, a, p)) {
            fulfils = false;
            break;
          }
        if (fulfils)
          for (const auto& p : soft)
            if (!locally_true(work, a, p)) {
              fulfils = false;
              break;
            }
        if (fulfils && work.valuation[a][target]) return false;
      }
    }
    return true;
  }

  bool dfs(size_t i) {
    if (i == new_ids.size()) {
      results.push_back(work);
      return results.size() >= limit;
    }
    int target = new_ids[i];
    const int w = work.world_count();
    // Enumerate the row as a bitmask over worlds.
    for (unsigned row = 0; row < (1u << w); ++row) {
      for (int a = 0; a < w; ++a)
        work.valuation[a][target] = (row >> a) & 1;
      if (row_consistent(target) && dfs(i + 1)) return true;
    }
    for (int a = 0; a < w; ++a) work.valuation[a][target] = false;
    return false;
  }
};

}  // namespace

std::vector<Semiframe> enumerate_extensions(const CanonicalSystem& g,
                                            const Semiframe& f,
                                            const Theory& larger_domain,
                                            size_t limit) {
  Theory closed = subformula_closure(larger_domain);
  for (const auto& formula : f.domain)
    if (!closed.count(formula))
      throw std::invalid_argument(
          "extension domain must contain the base domain");

  ExtensionSearch search{g, f, {}, {}, {}, {}, limit, {}};
  search.target_domain.assign(closed.begin(), closed.end());
  search.work.world_labels = f.world_labels;
  search.work.leq = f.leq;
  search.work.domain = search.target_domain;
  search.work.valuation.assign(f.world_count(),
                               std::vector<bool>(closed.size(), false));
  for (int t = 0; t < static_cast<int>(search.target_domain.size()); ++t) {
    int base_id = f.formula_id(search.target_domain[t]);
    search.from_base.push_back(base_id);
    if (base_id >= 0)
      for (int a = 0; a < f.world_count(); ++a)
        search.work.valuation[a][t] = f.valuation[a][base_id];
    else
      search.new_ids.push_back(t);
  }
  if (f.world_count() > 20)
    throw std::invalid_argument("too many worlds for extension search");
  search.dfs(0);
  return search.results;
}

Semiframe extend_semiframe(const CanonicalSystem& g, const Semiframe& f,
                           const Theory& larger_domain) {
  auto all = enumerate_extensions(g, f, larger_domain, 1);
  if (all.empty()) throw NoExtensionError();
  return all.front();
}

// ---------------------------------------------------------------------------
// JSON serialization

nlohmann::json frame_to_json(const Semiframe& f) {
  nlohmann::json j;
  j["worlds"] = f.world_labels;
  nlohmann::json order = nlohmann::json::array();
  int n = f.world_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !f.leq[a][b]) continue;
      bool reduced = false;  // drop edges implied by transitivity
      for (int c = 0; c < n && !reduced; ++c)
        if (c != a && c != b && f.leq[a][c] && f.leq[c][b]) reduced = true;
      if (!reduced) order.push_back(nlohmann::json::array({a, b}));
    }
  j["order"] = order;
  nlohmann::json dom = nlohmann::json::array();
  for (const auto& formula : f.domain) dom.push_back(to_string(formula));
  j["domain"] = dom;
  nlohmann::json rows = nlohmann::json::array();
  for (int a = 0; a < n; ++a) {
    nlohmann::json row = nlohmann::json::object();
    for (size_t i = 0; i < f.domain.size(); ++i)
      row[to_string(f.domain[i])] = static_cast<bool>(f.valuation[a][i]);
    rows.push_back(row);
  }
  j["valuation"] = rows;
  return j;
}

Semiframe frame_from_json(const nlohmann::json& j, const Signature& sig) {
  Semiframe f;
  for (const auto& w : j.at("worlds")) {
    if (w.is_string())
      f.world_labels.push_back(w.get<std::string>());
    else
      f.world_labels.push_back(std::to_string(w.get<int>()));
  }
  int n = f.world_count();
  f.leq.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) f.leq[a][a] = true;
  for (const auto& pair : j.at("order")) {
    int a = pair.at(0).get<int>();
    int b = pair.at(1).get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::runtime_error("order pair out of range");
    f.leq[a][b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (f.leq[a][k] && f.leq[k][b]) f.leq[a][b] = true;

  Theory dom;
  for (const auto& s : j.at("domain"))
    dom.insert(parse_formula(s.get<std::string>(), sig));
  f.domain.assign(dom.begin(), dom.end());
  f.valuation.assign(n, std::vector<bool>(f.domain.size(), false));
  const auto& rows = j.at("valuation");
  if (static_cast<int>(rows.size()) != n)
    throw std::runtime_error("one valuation row per world required");
  for (int a = 0; a < n; ++a)
    for (const auto& [key, value] : rows[a].items()) {
      Formula formula = parse_formula(key, sig);
      int id = f.formula_id(formula);
      if (id < 0) throw DomainError(formula);
      f.valuation[a][id] = value.get<bool>();
    }
  return f;
}

}  // namespace canonseq
