#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace canonseq {

// Atomic propositions are numbered from 1 and printed p1, p2, ...
struct Atom {
  int index = 1;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Connective {
  std::string name;
  int arity = 0;
  friend auto operator<=>(const Connective&, const Connective&) = default;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Connective> cs);

  // Returns false when a connective with the same name but a different
  // arity is already present; re-adding an identical connective is a no-op.
  bool add(const Connective& c);
  bool merge(const Signature& other);
  const Connective* find(const std::string& name) const;
  const std::set<Connective>& connectives() const { return connectives_; }

 private:
  std::set<Connective> connectives_;
};

// Immutable formula tree: an atom, or a connective applied to arguments.
// Argument vectors are shared, so copies are cheap.
class Formula {
 public:
  static Formula atom(int index);
  static Formula atom(Atom a) { return atom(a.index); }
  static Formula compound(std::string connective, std::vector<Formula> args);

  bool is_atom() const { return atom_ != 0; }
  int atom_index() const { return atom_; }
  const std::string& connective() const { return name_; }
  const std::vector<Formula>& args() const;

  // Node count. Subformulas are strictly smaller, so this doubles as the
  // complexity rank used wherever formulas are processed bottom-up.
  int size() const { return size_; }

  // Total order: by size, then atoms before compounds, then lexicographic.
  std::strong_ordering operator<=>(const Formula& other) const;
  bool operator==(const Formula& other) const;

 private:
  Formula() = default;
  int atom_ = 0;
  int size_ = 1;
  std::string name_;
  std::shared_ptr<const std::vector<Formula>> args_;
};

using Theory = std::set<Formula>;
using Succedent = std::optional<Formula>;

struct Sequent {
  Theory antecedent;
  Succedent succedent;

  bool is_definite() const { return succedent.has_value(); }
  bool is_negative() const { return !succedent.has_value(); }

  friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

enum class SequentKind { Definite, Negative };

SequentKind classify_sequent(const Sequent& s);

// Maps atoms to formulas; unmapped atoms stay themselves.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const int, Formula>> m)
      : map_(m) {}

  void set(int atom_index, Formula f);
  const Formula* mapping(int atom_index) const;
  const std::map<int, Formula>& assignments() const { return map_; }

  Formula apply(const Formula& f) const;
  Theory apply(const Theory& t) const;
  Succedent apply(const Succedent& e) const;
  Sequent apply(const Sequent& s) const;

  // apply(compose(outer, inner), f) == outer.apply(inner.apply(f))
  static Substitution compose(const Substitution& outer,
                              const Substitution& inner);

  friend auto operator<=>(const Substitution&, const Substitution&) = default;

 private:
  std::map<int, Formula> map_;
};

// Smallest set containing every formula of every sequent and closed under
// immediate subformulas.
Theory subformula_closure(const std::set<Sequent>& seqs);
Theory subformula_closure(const Theory& formulas);

std::string to_string(const Formula& f);
std::string to_string(const Theory& t);
std::string to_string(const Succedent& e);
std::string to_string(const Sequent& s);

}  // namespace canonseq
