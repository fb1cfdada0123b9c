#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "canonseq/rules.hpp"

namespace canonseq {

enum class RuleSide { Left, Right };

struct AxiomJ {};
struct AssumptionJ {};
struct WeakenLeftJ {
  Theory added;
};
struct WeakenRightJ {
  Formula formula;
};
struct CutJ {
  Formula cut_formula;
};
struct RuleAppJ {
  RuleSide side;
  std::string connective;
  int rule_index = 0;  // among that connective's rules of the same side
  Substitution subst;
  Theory context;
  Succedent succ_context;  // used by left rules only
};
// Hyper-cuts take an assumption sequent as nucleus. The side children
// Γi => ψi are matched against the nucleus antecedent in its set order;
// hyper-cut-1 additionally takes a final child Δ,θ => F.
struct HyperCut1J {
  Sequent nucleus;
};
struct HyperCut2J {
  Sequent nucleus;
};

using Justification = std::variant<AxiomJ, AssumptionJ, WeakenLeftJ,
                                   WeakenRightJ, CutJ, RuleAppJ, HyperCut1J,
                                   HyperCut2J>;

struct Derivation {
  Sequent conclusion;
  Justification justification;
  std::vector<Derivation> children;
};

// Constructors that compute the conclusion from the parts.
Derivation d_axiom(const Formula& f);
Derivation d_assume(const Sequent& s);
Derivation d_weaken_left(Derivation child, const Theory& added);
Derivation d_weaken_right(Derivation child, const Formula& f);
Derivation d_cut(Derivation left, Derivation right, const Formula& cut_formula);
Derivation d_apply_right(const CanonicalSystem& g, const std::string& conn,
                         int index, const Substitution& subst,
                         const Theory& context, std::vector<Derivation> children);
Derivation d_apply_left(const CanonicalSystem& g, const std::string& conn,
                        int index, const Substitution& subst,
                        const Theory& context, const Succedent& e,
                        std::vector<Derivation> children);
Derivation d_hyper_cut1(const Sequent& nucleus, std::vector<Derivation> sides,
                        Derivation theta_child);
Derivation d_hyper_cut2(const Sequent& nucleus, std::vector<Derivation> sides);

struct CheckResult {
  bool ok = true;
  std::string node_path;  // child indices from the root, e.g. "0.1"
  std::string message;
  std::optional<Sequent> expected;

  std::string describe() const;
};

// Validates every node of the tree against the system's rule forms, the
// axioms phi => phi, the given assumptions, weakening, cut, and hyper-cuts.
CheckResult check_derivation(const CanonicalSystem& g,
                             const std::set<Sequent>& assumptions,
                             const Derivation& d);

// Node-local shape check for a hyper-cut node (children's subtrees are not
// recursed into).
CheckResult check_hyper_cut(const std::set<Sequent>& assumptions,
                            const Derivation& node);

// True iff every cut formula is an element of some antecedent or succedent
// of a sequent in s_set (membership, not subformula membership).
bool is_S_proof(const Derivation& d, const std::set<Sequent>& s_set);

// True iff every node's conclusion is definite.
bool is_strict_proof(const Derivation& d);

// Pushes right weakenings above the negative-producing steps they cap, so
// that (for definite systems, definite assumptions and a definite goal) the
// result contains only definite sequents. Preserves the conclusion, checker
// validity, and the set of cut formulas.
Derivation strictify(const CanonicalSystem& g, const Derivation& d);

std::set<Formula> cut_formulas(const Derivation& d);
int count_cuts(const Derivation& d);
int tree_size(const Derivation& d);

nlohmann::json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::json& j, const Signature& sig);

}  // namespace canonseq
