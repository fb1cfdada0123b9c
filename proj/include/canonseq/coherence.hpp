#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "canonseq/derivation.hpp"
#include "canonseq/rules.hpp"

namespace canonseq {

// One clause-level cut: resolves `left` (Gamma1 => p) against `right`
// (Gamma2, p => E) into Gamma1, Gamma2 => E. Indices address the combined
// list [initial clauses..., previous steps...].
struct ClauseCut {
  Clause result;
  int left_index;
  int right_index;
  Formula cut_atom;
};

// Ends in the empty clause.
struct CutDerivation {
  std::vector<Clause> initial;
  std::vector<ClauseCut> steps;
};

struct SatisfyingAssignment {
  std::vector<bool> values;  // values[i] is the value of p_{i+1}
};

using InconsistencyWitness = std::variant<CutDerivation, SatisfyingAssignment>;

// CutDerivation iff no Boolean assignment over p1..pn satisfies every
// clause (each clause read as a disjunction), SatisfyingAssignment
// otherwise. Decided twice: by truth table and by cut saturation; the two
// must agree, and the returned cut derivation has a minimal number of cuts.
InconsistencyWitness classically_inconsistent(const std::vector<Clause>& clauses,
                                              int arity);

// Replays a witness against the clause set; used to cross-check outputs.
bool validate_witness(const std::vector<Clause>& clauses, int arity,
                      const InconsistencyWitness& w);

struct RulePairResult {
  std::string connective;
  int left_index;
  int right_index;
  InconsistencyWitness witness;  // assignment => the pair is incoherent
};

struct CoherenceReport {
  bool coherent = true;
  std::vector<RulePairResult> pairs;

  const RulePairResult* first_incoherent() const;
};

// Checks every (left rule, right rule) pair per connective: the union of
// their premise clause sets must be classically inconsistent. Connectives
// with rules on one side only are vacuously coherent.
CoherenceReport is_coherent(const CanonicalSystem& g);

struct StrongConsistencyWitness {
  bool coherent = true;
  // Present iff incoherent: a derivation of "=>" from the assumptions
  // {=> p1, p2 =>} that passes check_derivation.
  std::optional<Derivation> derivation;
};

StrongConsistencyWitness strong_consistency_witness(const CanonicalSystem& g);

// The two assumption sequents {=> p1, p2 =>}.
std::set<Sequent> strong_consistency_assumptions();

}  // namespace canonseq
