#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "canonseq/formula.hpp"

namespace canonseq {

// A premise clause: a sequent over the schematic atoms p1..pn of the rule
// it belongs to. Validity (atoms only, indices within arity) is checked by
// validate_system, not at construction.
using Clause = Sequent;

struct RightRule {
  std::string connective;
  int arity = 0;
  std::vector<Clause> premises;

  // Equality ignores premise declaration order.
  bool operator==(const RightRule& o) const;
};

struct LeftRule {
  std::string connective;
  int arity = 0;
  std::vector<Clause> hard_premises;  // no right context in applications
  std::vector<Clause> soft_premises;  // negative clauses; take the context E

  bool operator==(const LeftRule& o) const;
};

struct CanonicalSystem {
  std::string name;
  Signature signature;
  std::vector<RightRule> right_rules;
  std::vector<LeftRule> left_rules;

  // Rules are addressed by (side, connective, position among that
  // connective's rules of the same side); proofs and reports use this.
  const RightRule* right_rule(const std::string& connective, int index) const;
  const LeftRule* left_rule(const std::string& connective, int index) const;
  std::vector<std::pair<int, const RightRule*>> right_rules_for(
      const std::string& connective) const;
  std::vector<std::pair<int, const LeftRule*>> left_rules_for(
      const std::string& connective) const;
};

std::string rule_label(bool right, const std::string& connective, int index);

struct Diagnostic {
  std::string rule;     // e.g. "right imp #0"
  std::string message;  // e.g. "premise atom out of arity"
};

// Empty result iff every rule invariant holds.
std::vector<Diagnostic> validate_system(const CanonicalSystem& g);

struct RuleInstance {
  std::vector<Sequent> premises;  // for left rules: hard first, then soft
  Sequent conclusion;
};

RuleInstance instantiate_right(const RightRule& r, const Substitution& s,
                               const Theory& context);
RuleInstance instantiate_left(const LeftRule& r, const Substitution& s,
                              const Theory& context, const Succedent& e);

// The conclusion formula of a rule for ⋄/n under a substitution.
Formula rule_head(const std::string& connective, int arity,
                  const Substitution& s);

// True iff every right-rule premise and every left-rule hard premise is
// definite.
bool is_definite_system(const CanonicalSystem& g);

// Named catalog: one single-connective system per connective shipped with
// the library (imp, bot, neg, simp, aff, waff, cni, nand, circ, plus the
// standard and/or rule sets), and the combinations "int" (imp+bot) and
// "definite" (imp+bot+simp+aff).
const std::map<std::string, CanonicalSystem>& builtin_systems();
const CanonicalSystem* find_builtin(const std::string& name);
CanonicalSystem merge_systems(std::string name,
                              const std::vector<const CanonicalSystem*>& parts);

struct SystemParseError : std::runtime_error {
  SystemParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line(line) {}
  int line;
};

// Line-oriented system definition language; '#' starts a comment:
//   system Int
//   connective imp/2
//   connective bot/0
//   rule right imp : (p1 => p2) |- (=> imp)
//   rule left  imp : hard(=> p1) soft(p2 =>) |- (imp =>)
//   rule left  bot : |- (bot =>)
CanonicalSystem parse_system(std::string_view dsl_text);
CanonicalSystem load_system_file(const std::string& path);
std::string print_system(const CanonicalSystem& g);

}  // namespace canonseq
