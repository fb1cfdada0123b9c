#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "canonseq/derivation.hpp"
#include "canonseq/rules.hpp"

namespace canonseq {

struct DomainError : std::runtime_error {
  explicit DomainError(const Formula& f)
      : std::runtime_error("formula outside the frame domain: " +
                           to_string(f)) {}
};

// A finite poset of worlds with a persistent two-valued valuation over a
// subformula-closed domain. Worlds are indices 0..n-1; labels are for
// debugging only. `leq` stores the full order (reflexive and transitive);
// `domain` is kept sorted by formula complexity.
struct Semiframe {
  std::vector<std::string> world_labels;
  std::vector<std::vector<bool>> leq;
  std::vector<Formula> domain;
  std::vector<std::vector<bool>> valuation;  // [world][formula], true = t

  int world_count() const { return static_cast<int>(world_labels.size()); }
  int formula_id(const Formula& f) const;
  bool value(int world, const Formula& f) const;  // throws DomainError
};

// Convenience constructor; sorts the domain and checks row shapes.
Semiframe make_semiframe(int worlds, const std::vector<std::pair<int, int>>& below,
                         const Theory& domain,
                         const std::vector<std::vector<std::pair<Formula, bool>>>& rows);

// Poset axioms, subformula closure of the domain, and persistence; one
// diagnostic per violation, empty means ok.
std::vector<std::string> check_semiframe(const Semiframe& f);

bool locally_true(const Semiframe& f, int world, const Sequent& s);
bool true_in(const Semiframe& f, int world, const Sequent& s);

struct LegalityViolation {
  int world;
  std::string rule;  // rule_label form
  Substitution subst;
};

struct LegalityReport {
  bool legal = true;
  std::optional<LegalityViolation> violation;
};

// A frame respects a rule when, at every world and for every substitution
// landing the conclusion formula in the domain, fulfilment of the premises
// (absolute for right-rule premises and hard premises, local for soft
// premises) forces the conclusion to be locally satisfied.
LegalityReport respects(const Semiframe& f, const RightRule& r,
                        const std::string& label = "");
LegalityReport respects(const Semiframe& f, const LeftRule& r,
                        const std::string& label = "");
LegalityReport is_legal(const Semiframe& f, const CanonicalSystem& g);

// True iff every sequent is locally true at every world. (Equivalently:
// absolutely true at every world; both formulations are evaluated and must
// agree.)
bool is_model(const Semiframe& f, const std::set<Sequent>& seqs);

class SaturationState;

// The completeness construction: worlds are the E-maximal theories over the
// saturation domain extending a fixed maximal extension of the goal's
// antecedent, ordered by inclusion. The result is validated (legal, a model
// of the assumptions, not a model of the goal); failure to validate throws.
Semiframe build_canonical_countermodel(const CanonicalSystem& g,
                                       const std::set<Sequent>& assumptions,
                                       const Sequent& goal,
                                       const SaturationState& sat);

struct CountermodelSearchResult {
  std::optional<Semiframe> frame;
  // True when the enumeration exhausted every candidate within the world
  // bound; false when it stopped at the node budget.
  bool exhaustive = true;
};

// Enumerates candidate frames whose worlds are distinct subsets of the
// subformula closure of assumptions+goal, ordered by inclusion, valued by
// membership. Any legal frame can be quotiented into this shape, so with
// max_worlds >= 2^|U| the search is complete for coherent systems.
// max_worlds < 0 selects the default 2^|U| capped at 16.
CountermodelSearchResult countermodel_search(const CanonicalSystem& g,
                                             const std::set<Sequent>& assumptions,
                                             const Sequent& goal,
                                             int max_worlds = -1,
                                             long long node_budget = 1 << 22);

struct NoExtensionError : std::runtime_error {
  NoExtensionError()
      : std::runtime_error(
            "no legal extension exists; this is only possible when the "
            "system is incoherent") {}
};

// Extends a legal semiframe to a larger subformula-closed domain over the
// same worlds and order, assigning new formulas in complexity order with
// backtracking. Guaranteed to succeed for coherent systems.
Semiframe extend_semiframe(const CanonicalSystem& g, const Semiframe& f,
                           const Theory& larger_domain);

// All legal extensions (up to `limit`); used to witness non-determinism.
std::vector<Semiframe> enumerate_extensions(const CanonicalSystem& g,
                                            const Semiframe& f,
                                            const Theory& larger_domain,
                                            size_t limit = 64);

nlohmann::json frame_to_json(const Semiframe& f);
Semiframe frame_from_json(const nlohmann::json& j, const Signature& sig);

}  // namespace canonseq
