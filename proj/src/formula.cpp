#include "canonseq/formula.hpp"

#include <sstream>
#include <stdexcept>

namespace canonseq {

namespace {
const std::vector<Formula>& empty_args() {
  static const std::vector<Formula> none;
  return none;
}
}  // namespace

Signature::Signature(std::initializer_list<Connective> cs) {
  for (const auto& c : cs) add(c);
}

bool Signature::add(const Connective& c) {
  const Connective* existing = find(c.name);
  if (existing) return existing->arity == c.arity;
  connectives_.insert(c);
  return true;
}

bool Signature::merge(const Signature& other) {
  bool ok = true;
  for (const auto& c : other.connectives_) ok = add(c) && ok;
  return ok;
}

const Connective* Signature::find(const std::string& name) const {
  for (const auto& c : connectives_)
    if (c.name == name) return &c;
  return nullptr;
}

Formula Formula::atom(int index) {
  if (index < 1) throw std::invalid_argument("atom index must be >= 1");
  Formula f;
  f.atom_ = index;
  f.size_ = 1;
  return f;
}

Formula Formula::compound(std::string connective, std::vector<Formula> args) {
  Formula f;
  f.atom_ = 0;
  f.name_ = std::move(connective);
  f.size_ = 1;
  for (const auto& a : args) f.size_ += a.size();
  f.args_ = std::make_shared<const std::vector<Formula>>(std::move(args));
  return f;
}

const std::vector<Formula>& Formula::args() const {
  return args_ ? *args_ : empty_args();
}

std::strong_ordering Formula::operator<=>(const Formula& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  if (auto c = (atom_ == 0) <=> (other.atom_ == 0); c != 0) return c;
  if (is_atom()) return atom_ <=> other.atom_;
  if (auto c = name_ <=> other.name_; c != 0) return c;
  const auto& a = args();
  const auto& b = other.args();
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool Formula::operator==(const Formula& other) const {
  return (*this <=> other) == 0;
}

SequentKind classify_sequent(const Sequent& s) {
  return s.is_definite() ? SequentKind::Definite : SequentKind::Negative;
}

void Substitution::set(int atom_index, Formula f) {
  if (atom_index < 1) throw std::invalid_argument("atom index must be >= 1");
  map_.insert_or_assign(atom_index, std::move(f));
}

const Formula* Substitution::mapping(int atom_index) const {
  auto it = map_.find(atom_index);
  return it == map_.end() ? nullptr : &it->second;
}

Formula Substitution::apply(const Formula& f) const {
  if (f.is_atom()) {
    const Formula* m = mapping(f.atom_index());
    return m ? *m : f;
  }
  std::vector<Formula> args;
  args.reserve(f.args().size());
  for (const auto& a : f.args()) args.push_back(apply(a));
  return Formula::compound(f.connective(), std::move(args));
}

Theory Substitution::apply(const Theory& t) const {
  Theory out;
  for (const auto& f : t) out.insert(apply(f));
  return out;
}

Succedent Substitution::apply(const Succedent& e) const {
  if (!e) return std::nullopt;
  return apply(*e);
}

Sequent Substitution::apply(const Sequent& s) const {
  return Sequent{apply(s.antecedent), apply(s.succedent)};
}

Substitution Substitution::compose(const Substitution& outer,
                                   const Substitution& inner) {
  Substitution out;
  for (const auto& [k, v] : inner.assignments()) out.set(k, outer.apply(v));
  for (const auto& [k, v] : outer.assignments())
    if (!inner.mapping(k)) out.set(k, v);
  return out;
}

namespace {
void close_formula(const Formula& f, Theory& out) {
  if (!out.insert(f).second) return;
  for (const auto& a : f.args()) close_formula(a, out);
}
}  // namespace

Theory subformula_closure(const std::set<Sequent>& seqs) {
  Theory out;
  for (const auto& s : seqs) {
    for (const auto& f : s.antecedent) close_formula(f, out);
    if (s.succedent) close_formula(*s.succedent, out);
  }
  return out;
}

Theory subformula_closure(const Theory& formulas) {
  Theory out;
  for (const auto& f : formulas) close_formula(f, out);
  return out;
}

std::string to_string(const Formula& f) {
  if (f.is_atom()) return "p" + std::to_string(f.atom_index());
  if (f.args().empty()) return f.connective();
  std::ostringstream os;
  os << f.connective() << '(';
  bool first = true;
  for (const auto& a : f.args()) {
    if (!first) os << ", ";
    first = false;
    os << to_string(a);
  }
  os << ')';
  return os.str();
}

std::string to_string(const Theory& t) {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : t) {
    if (!first) os << ", ";
    first = false;
    os << to_string(f);
  }
  return os.str();
}

std::string to_string(const Succedent& e) {
  return e ? to_string(*e) : std::string{};
}

std::string to_string(const Sequent& s) {
  std::string left = to_string(s.antecedent);
  std::string right = to_string(s.succedent);
  if (left.empty() && right.empty()) return "=>";
  if (left.empty()) return "=> " + right;
  if (right.empty()) return left + " =>";
  return left + " => " + right;
}

}  // namespace canonseq
