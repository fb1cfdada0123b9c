#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "canonseq/coherence.hpp"
#include "canonseq/derivation.hpp"
#include "canonseq/kripke.hpp"
#include "canonseq/rules.hpp"

namespace canonseq {

struct IncoherentSystemError : std::runtime_error {
  explicit IncoherentSystemError(const std::string& system)
      : std::runtime_error("system '" + system +
                           "' is incoherent; the decision procedure requires "
                           "a coherent system (use the bounded unrestricted "
                           "search instead)") {}
};

struct ClosureTooLargeError : std::runtime_error {
  ClosureTooLargeError(size_t size, size_t cap)
      : std::runtime_error("subformula closure has " + std::to_string(size) +
                           " formulas, over the configured bound " +
                           std::to_string(cap)),
        closure_size(size),
        cap(cap) {}
  size_t closure_size;
  size_t cap;
};

struct SaturationOptions {
  int max_closure_size = 12;
  bool definite_only = false;  // restrict derived sequents to definite ones
};

// Forward saturation over the subformula closure U of assumptions + goal:
// the least fixpoint of axioms, assumptions, rule applications with minimal
// contexts, and cuts on the formulas occurring in the assumptions.
// Weakening is handled by subsumption: a derived sequent covers every
// sequent with a larger antecedent, and a negative derived sequent covers
// every succedent.
class SaturationState {
 public:
  using Mask = std::uint32_t;

  struct Just {
    enum Kind { Axiom, Assumption, Cut, Apply } kind = Axiom;
    int formula = -1;               // Axiom: formula id; Cut: cut formula id
    int assumption_index = -1;      // Assumption
    int left_fact = -1, right_fact = -1;  // Cut
    RuleSide side = RuleSide::Right;      // Apply...
    int global_rule = -1;                 // index into right_rules/left_rules
    int target = -1;                      // id of sigma(head)
    Mask context = 0;
    int succ_context = 0;
    std::vector<int> premise_facts;       // hard premises first
  };

  struct Fact {
    Mask ante = 0;
    int succ = 0;  // 0 = empty, k = formula id k-1
    Just just;
  };

  const std::vector<Formula>& domain() const { return domain_; }
  int formula_id(const Formula& f) const;  // -1 when absent
  const std::vector<Sequent>& assumption_list() const { return assumptions_; }
  const Theory& cut_pool() const { return pool_; }
  size_t fact_count() const { return log_.size(); }

  bool covered_ids(Mask ante, int succ) const;
  // Throws when the sequent mentions formulas outside the domain.
  bool covered(const Sequent& s) const;

  // Extracts a checker-valid derivation of a covered sequent, rebuilding the
  // weakening steps that subsumption elided. When several derived sequents
  // cover the goal the one giving the fewest cuts, then the smallest tree,
  // wins.
  Derivation extract(const Sequent& goal) const;

  Sequent sequent_of(Mask ante, int succ) const;

  const std::vector<Fact>& facts() const { return log_; }

 private:
  friend SaturationState saturate_core(const CanonicalSystem&,
                                       const std::set<Sequent>&, const Sequent&,
                                       const Theory&, const Theory&, int,
                                       const SaturationOptions&);
  friend struct ProofExtractor;
  bool insert(Mask ante, int succ, Just just);

  const CanonicalSystem* system_ = nullptr;
  std::vector<Formula> domain_;
  std::vector<Sequent> assumptions_;
  Theory pool_;
  bool definite_only_ = false;
  std::vector<Fact> log_;
  // minimal_[succ]: antichain of (antecedent mask, fact index)
  std::vector<std::vector<std::pair<Mask, int>>> minimal_;
};

// Requires a coherent system (throws IncoherentSystemError otherwise).
SaturationState saturate(const CanonicalSystem& g,
                         const std::set<Sequent>& assumptions,
                         const Sequent& goal,
                         const SaturationOptions& opts = {});

// The same engine without the coherence gate: sound on any system,
// complete only relative to the given cut pool and domain. extra_domain
// formulas are added to the closure seed; max_rounds < 0 runs to fixpoint.
SaturationState saturate_unrestricted(const CanonicalSystem& g,
                                      const std::set<Sequent>& assumptions,
                                      const Sequent& goal,
                                      const Theory& extra_domain,
                                      const Theory& cut_pool, int max_rounds,
                                      const SaturationOptions& opts = {});

struct DecideOptions {
  int max_closure_size = 12;
  bool definite_only = false;
  bool want_countermodel = false;  // build the canonical countermodel
};

struct DecisionOutcome {
  bool provable = false;
  std::optional<Derivation> proof;       // present iff provable
  std::optional<Semiframe> countermodel; // present iff requested & unprovable
};

DecisionOutcome decide(const CanonicalSystem& g,
                       const std::set<Sequent>& assumptions,
                       const Sequent& goal, const DecideOptions& opts = {});

// The consequence relation between formulas, reduced to sequent
// derivability from {=> psi | psi in theory}.
bool entails(const CanonicalSystem& g, const Theory& theory,
             const Succedent& e, const DecideOptions& opts = {});

struct BoundedSearchResult {
  bool found = false;
  std::optional<Derivation> proof;
};

// Sound exploration aid that also works on incoherent systems: saturates
// with the given cut formula pool for at most `depth` rounds. "Not found"
// is relative to the pool and the bound.
BoundedSearchResult bounded_search_unrestricted(
    const CanonicalSystem& g, const std::set<Sequent>& assumptions,
    const Sequent& goal, const Theory& cut_formula_pool, int depth,
    const SaturationOptions& opts = {});

}  // namespace canonseq
