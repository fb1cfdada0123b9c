#include "canonseq/decision.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace canonseq {

using Mask = SaturationState::Mask;
using Just = SaturationState::Just;

int SaturationState::formula_id(const Formula& f) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), f);
  if (it == domain_.end() || !(*it == f)) return -1;
  return static_cast<int>(it - domain_.begin());
}

bool SaturationState::covered_ids(Mask ante, int succ) const {
  for (const auto& [m, fact] : minimal_[succ])
    if ((m & ~ante) == 0) return true;
  if (succ != 0)
    for (const auto& [m, fact] : minimal_[0])
      if ((m & ~ante) == 0) return true;
  return false;
}

bool SaturationState::covered(const Sequent& s) const {
  Mask ante = 0;
  for (const auto& f : s.antecedent) {
    int id = formula_id(f);
    if (id < 0) return false;
    ante |= Mask(1) << id;
  }
  int succ = 0;
  if (s.succedent) {
    int id = formula_id(*s.succedent);
    if (id < 0) return false;
    succ = id + 1;
  }
  return covered_ids(ante, succ);
}

Sequent SaturationState::sequent_of(Mask ante, int succ) const {
  Sequent s;
  for (size_t i = 0; i < domain_.size(); ++i)
    if (ante & (Mask(1) << i)) s.antecedent.insert(domain_[i]);
  if (succ) s.succedent = domain_[succ - 1];
  return s;
}

bool SaturationState::insert(Mask ante, int succ, Just just) {
  if (definite_only_ && succ == 0) return false;
  if (covered_ids(ante, succ)) return false;
  int idx = static_cast<int>(log_.size());
  log_.push_back(Fact{ante, succ, std::move(just)});
  auto prune = [&](std::vector<std::pair<Mask, int>>& v) {
    std::erase_if(v, [&](const std::pair<Mask, int>& p) {
      return (ante & ~p.first) == 0;  // new antecedent is a subset
    });
  };
  if (succ == 0)
    for (auto& v : minimal_) prune(v);
  else
    prune(minimal_[succ]);
  minimal_[succ].push_back({ante, idx});
  return true;
}

// ---------------------------------------------------------------------------
// Proof extraction

struct ProofExtractor {
  const SaturationState& st;
  std::map<int, Derivation> cache;

  Theory theory_of(Mask m) const {
    Theory t;
    for (size_t i = 0; i < st.domain_.size(); ++i)
      if (m & (Mask(1) << i)) t.insert(st.domain_[i]);
    return t;
  }

  int intern_succ(const Succedent& e) const {
    if (!e) return 0;
    int id = st.formula_id(*e);
    if (id < 0) throw std::logic_error("extraction formula outside domain");
    return id + 1;
  }

  Mask intern_theory(const Theory& t) const {
    Mask m = 0;
    for (const auto& f : t) {
      int id = st.formula_id(f);
      if (id < 0) throw std::logic_error("extraction formula outside domain");
      m |= Mask(1) << id;
    }
    return m;
  }

  Derivation fact_proof(int fact) {
    auto it = cache.find(fact);
    if (it != cache.end()) return it->second;
    const auto& f = st.log_[fact];
    Derivation d;
    switch (f.just.kind) {
      case Just::Axiom:
        d = d_axiom(st.domain_[f.just.formula]);
        break;
      case Just::Assumption:
        d = d_assume(st.assumptions_[f.just.assumption_index]);
        break;
      case Just::Cut: {
        Derivation l = fact_proof(f.just.left_fact);
        Derivation r = fact_proof(f.just.right_fact);
        d = d_cut(std::move(l), std::move(r), st.domain_[f.just.formula]);
        break;
      }
      case Just::Apply: {
        const Formula& target = st.domain_[f.just.target];
        Substitution sigma;
        for (size_t i = 0; i < target.args().size(); ++i)
          sigma.set(static_cast<int>(i) + 1, target.args()[i]);
        Theory context = theory_of(f.just.context);
        RuleInstance inst;
        int local_index = 0;
        if (f.just.side == RuleSide::Right) {
          const RightRule& rule = st.system_->right_rules[f.just.global_rule];
          for (int i = 0; i < f.just.global_rule; ++i)
            if (st.system_->right_rules[i].connective == rule.connective)
              ++local_index;
          inst = instantiate_right(rule, sigma, context);
          std::vector<Derivation> children;
          for (size_t i = 0; i < inst.premises.size(); ++i)
            children.push_back(premise_proof(f.just.premise_facts[i],
                                             inst.premises[i]));
          d = d_apply_right(*st.system_, rule.connective, local_index, sigma,
                            context, std::move(children));
        } else {
          const LeftRule& rule = st.system_->left_rules[f.just.global_rule];
          for (int i = 0; i < f.just.global_rule; ++i)
            if (st.system_->left_rules[i].connective == rule.connective)
              ++local_index;
          Succedent e;
          if (f.just.succ_context) e = st.domain_[f.just.succ_context - 1];
          inst = instantiate_left(rule, sigma, context, e);
          std::vector<Derivation> children;
          for (size_t i = 0; i < inst.premises.size(); ++i)
            children.push_back(premise_proof(f.just.premise_facts[i],
                                             inst.premises[i]));
          d = d_apply_left(*st.system_, rule.connective, local_index, sigma,
                           context, e, std::move(children));
        }
        break;
      }
    }
    cache[fact] = d;
    return d;
  }

  // Proof of exactly `want`, from a fact that covers it, adding the
  // weakenings subsumption elided.
  Derivation premise_proof(int fact, const Sequent& want) {
    return to_sequent(fact, intern_theory(want.antecedent),
                      intern_succ(want.succedent));
  }

  Derivation to_sequent(int fact, Mask want_ante, int want_succ) {
    const auto& f = st.log_[fact];
    Derivation d = fact_proof(fact);
    if (f.ante != want_ante) {
      if ((f.ante & ~want_ante) != 0)
        throw std::logic_error("covering fact antecedent is not a subset");
      d = d_weaken_left(std::move(d), theory_of(want_ante & ~f.ante));
    }
    if (f.succ != want_succ) {
      if (f.succ != 0 || want_succ == 0)
        throw std::logic_error("covering fact succedent mismatch");
      d = d_weaken_right(std::move(d), st.domain_[want_succ - 1]);
    }
    return d;
  }
};

Derivation SaturationState::extract(const Sequent& goal) const {
  Mask ante = 0;
  for (const auto& f : goal.antecedent) {
    int id = formula_id(f);
    if (id < 0) throw std::invalid_argument("goal formula outside the domain");
    ante |= Mask(1) << id;
  }
  int succ = 0;
  if (goal.succedent) {
    int id = formula_id(*goal.succedent);
    if (id < 0) throw std::invalid_argument("goal formula outside the domain");
    succ = id + 1;
  }
  std::vector<int> candidates;
  for (const auto& [m, fact] : minimal_[succ])
    if ((m & ~ante) == 0) candidates.push_back(fact);
  if (succ != 0)
    for (const auto& [m, fact] : minimal_[0])
      if ((m & ~ante) == 0) candidates.push_back(fact);
  if (candidates.empty())
    throw std::logic_error("extract called on an uncovered sequent");

  std::optional<Derivation> best;
  int best_cuts = 0, best_size = 0;
  for (int fact : candidates) {
    ProofExtractor ex{*this, {}};
    Derivation d = ex.to_sequent(fact, ante, succ);
    int cuts = count_cuts(d);
    int size = tree_size(d);
    if (!best || cuts < best_cuts ||
        (cuts == best_cuts && size < best_size)) {
      best = std::move(d);
      best_cuts = cuts;
      best_size = size;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Saturation

SaturationState saturate_core(const CanonicalSystem& g,
                              const std::set<Sequent>& assumptions,
                              const Sequent& goal, const Theory& extra_domain,
                              const Theory& cut_pool, int max_rounds,
                              const SaturationOptions& opts) {
  if (auto diags = validate_system(g); !diags.empty())
    throw std::invalid_argument("invalid canonical system: " +
                                diags.front().rule + ": " +
                                diags.front().message);

  SaturationState st;
  st.system_ = &g;
  st.definite_only_ = opts.definite_only;

  std::set<Sequent> seed = assumptions;
  seed.insert(goal);
  Theory closure = subformula_closure(seed);
  for (const auto& f : subformula_closure(extra_domain)) closure.insert(f);
  for (const auto& f : subformula_closure(cut_pool)) closure.insert(f);
  if (closure.size() > static_cast<size_t>(opts.max_closure_size) ||
      closure.size() > 31)
    throw ClosureTooLargeError(closure.size(),
                               std::min<size_t>(opts.max_closure_size, 31));
  st.domain_.assign(closure.begin(), closure.end());
  const int n = static_cast<int>(st.domain_.size());
  st.minimal_.resize(n + 1);
  st.pool_ = cut_pool;

  std::vector<int> pool_ids;
  for (const auto& f : cut_pool) {
    int id = st.formula_id(f);
    if (id >= 0) pool_ids.push_back(id);
  }

  for (int i = 0; i < n; ++i) {
    Just j;
    j.kind = Just::Axiom;
    j.formula = i;
    st.insert(Mask(1) << i, i + 1, j);
  }
  st.assumptions_.assign(assumptions.begin(), assumptions.end());
  for (size_t i = 0; i < st.assumptions_.size(); ++i) {
    const Sequent& s = st.assumptions_[i];
    Mask ante = 0;
    for (const auto& f : s.antecedent) ante |= Mask(1) << st.formula_id(f);
    int succ = s.succedent ? st.formula_id(*s.succedent) + 1 : 0;
    Just j;
    j.kind = Just::Assumption;
    j.assumption_index = static_cast<int>(i);
    st.insert(ante, succ, j);
  }

  // Rule application jobs: one per (rule, domain formula with that head).
  // The substitution is determined by the target formula, so premises are
  // precomputed as (antecedent mask, succedent id) requirements.
  struct PremReq {
    Mask pi = 0;
    int ei = 0;
  };
  struct Job {
    bool right;
    int global_rule;
    int target;
    std::vector<PremReq> hard;   // right rules use only this list
    std::vector<Mask> soft;
  };
  std::vector<Job> jobs;
  for (int t = 0; t < n; ++t) {
    const Formula& psi = st.domain_[t];
    if (psi.is_atom()) continue;
    std::vector<int> arg_ids;
    for (const auto& a : psi.args()) arg_ids.push_back(st.formula_id(a));
    auto req_of = [&](const Clause& c) {
      PremReq r;
      for (const auto& f : c.antecedent)
        r.pi |= Mask(1) << arg_ids[f.atom_index() - 1];
      if (c.succedent) r.ei = arg_ids[c.succedent->atom_index() - 1] + 1;
      return r;
    };
    for (size_t gi = 0; gi < g.right_rules.size(); ++gi) {
      const RightRule& r = g.right_rules[gi];
      if (r.connective != psi.connective() ||
          r.arity != static_cast<int>(psi.args().size()))
        continue;
      Job job{true, static_cast<int>(gi), t, {}, {}};
      for (const auto& p : r.premises) job.hard.push_back(req_of(p));
      jobs.push_back(std::move(job));
    }
    for (size_t gi = 0; gi < g.left_rules.size(); ++gi) {
      const LeftRule& r = g.left_rules[gi];
      if (r.connective != psi.connective() ||
          r.arity != static_cast<int>(psi.args().size()))
        continue;
      Job job{false, static_cast<int>(gi), t, {}, {}};
      for (const auto& p : r.hard_premises) job.hard.push_back(req_of(p));
      for (const auto& p : r.soft_premises) job.soft.push_back(req_of(p).pi);
      jobs.push_back(std::move(job));
    }
  }

  auto snapshot = st.minimal_;
  // Chooses one covering entry per premise requirement and emits the
  // conclusion with the minimal context that makes every choice fit.
  auto expand = [&](const std::vector<PremReq>& reqs, auto&& emit) {
    std::vector<int> picked;
    auto rec = [&](auto&& self, size_t i, Mask gamma) -> void {
      if (i == reqs.size()) {
        emit(gamma, picked);
        return;
      }
      const PremReq& req = reqs[i];
      auto use = [&](Mask m, int fact) {
        picked.push_back(fact);
        self(self, i + 1, gamma | (m & ~req.pi));
        picked.pop_back();
      };
      for (const auto& [m, fact] : snapshot[req.ei]) use(m, fact);
      if (req.ei != 0)
        for (const auto& [m, fact] : snapshot[0]) use(m, fact);
    };
    rec(rec, 0, 0);
  };

  for (int round = 0; max_rounds < 0 || round < max_rounds; ++round) {
    snapshot = st.minimal_;
    bool changed = false;

    for (int f : pool_ids) {
      Mask bit = Mask(1) << f;
      for (const auto& [m1, fact1] : snapshot[f + 1]) {
        for (int e = 0; e <= n; ++e) {
          for (const auto& [m2, fact2] : snapshot[e]) {
            if (!(m2 & bit)) continue;
            Just j;
            j.kind = Just::Cut;
            j.formula = f;
            j.left_fact = fact1;
            j.right_fact = fact2;
            changed |= st.insert(m1 | (m2 & ~bit), e, j);
          }
        }
      }
    }

    for (const auto& job : jobs) {
      if (job.right) {
        expand(job.hard, [&](Mask gamma, const std::vector<int>& picked) {
          Just j;
          j.kind = Just::Apply;
          j.side = RuleSide::Right;
          j.global_rule = job.global_rule;
          j.target = job.target;
          j.context = gamma;
          j.succ_context = 0;
          j.premise_facts = picked;
          changed |= st.insert(gamma, job.target + 1, std::move(j));
        });
      } else {
        int e_lo = st.definite_only_ ? 1 : 0;
        for (int e = e_lo; e <= n; ++e) {
          std::vector<PremReq> reqs = job.hard;
          for (Mask s : job.soft) reqs.push_back(PremReq{s, e});
          expand(reqs, [&](Mask gamma, const std::vector<int>& picked) {
            Just j;
            j.kind = Just::Apply;
            j.side = RuleSide::Left;
            j.global_rule = job.global_rule;
            j.target = job.target;
            j.context = gamma;
            j.succ_context = e;
            j.premise_facts = picked;
            changed |=
                st.insert(gamma | (Mask(1) << job.target), e, std::move(j));
          });
        }
      }
    }

    if (!changed) break;
  }
  return st;
}

namespace {
Theory occurring_formulas(const std::set<Sequent>& seqs) {
  Theory out;
  for (const auto& s : seqs) {
    out.insert(s.antecedent.begin(), s.antecedent.end());
    if (s.succedent) out.insert(*s.succedent);
  }
  return out;
}
}  // namespace

SaturationState saturate(const CanonicalSystem& g,
                         const std::set<Sequent>& assumptions,
                         const Sequent& goal, const SaturationOptions& opts) {
  if (!is_coherent(g).coherent) throw IncoherentSystemError(g.name);
  return saturate_core(g, assumptions, goal, {},
                       occurring_formulas(assumptions), -1, opts);
}

SaturationState saturate_unrestricted(const CanonicalSystem& g,
                                      const std::set<Sequent>& assumptions,
                                      const Sequent& goal,
                                      const Theory& extra_domain,
                                      const Theory& cut_pool, int max_rounds,
                                      const SaturationOptions& opts) {
  return saturate_core(g, assumptions, goal, extra_domain, cut_pool,
                       max_rounds, opts);
}

DecisionOutcome decide(const CanonicalSystem& g,
                       const std::set<Sequent>& assumptions,
                       const Sequent& goal, const DecideOptions& opts) {
  SaturationOptions sopts{opts.max_closure_size, opts.definite_only};
  SaturationState st = saturate(g, assumptions, goal, sopts);
  DecisionOutcome out;
  if (st.covered(goal)) {
    out.provable = true;
    out.proof = st.extract(goal);
    return out;
  }
  if (opts.want_countermodel)
    out.countermodel = build_canonical_countermodel(g, assumptions, goal, st);
  return out;
}

bool entails(const CanonicalSystem& g, const Theory& theory,
             const Succedent& e, const DecideOptions& opts) {
  std::set<Sequent> assumptions;
  for (const auto& f : theory) assumptions.insert(Sequent{{}, f});
  return decide(g, assumptions, Sequent{{}, e}, opts).provable;
}

BoundedSearchResult bounded_search_unrestricted(
    const CanonicalSystem& g, const std::set<Sequent>& assumptions,
    const Sequent& goal, const Theory& cut_formula_pool, int depth,
    const SaturationOptions& opts) {
  SaturationState st = saturate_core(g, assumptions, goal, cut_formula_pool,
                                     cut_formula_pool, depth, opts);
  BoundedSearchResult out;
  if (st.covered(goal)) {
    out.found = true;
    out.proof = st.extract(goal);
  }
  return out;
}

}  // namespace canonseq
