#include "canonseq/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "canonseq/parser.hpp"

namespace canonseq {

bool RightRule::operator==(const RightRule& o) const {
  return connective == o.connective && arity == o.arity &&
         std::set<Clause>(premises.begin(), premises.end()) ==
             std::set<Clause>(o.premises.begin(), o.premises.end());
}

bool LeftRule::operator==(const LeftRule& o) const {
  return connective == o.connective && arity == o.arity &&
         std::set<Clause>(hard_premises.begin(), hard_premises.end()) ==
             std::set<Clause>(o.hard_premises.begin(), o.hard_premises.end()) &&
         std::set<Clause>(soft_premises.begin(), soft_premises.end()) ==
             std::set<Clause>(o.soft_premises.begin(), o.soft_premises.end());
}

const RightRule* CanonicalSystem::right_rule(const std::string& connective,
                                             int index) const {
  int seen = 0;
  for (const auto& r : right_rules)
    if (r.connective == connective && seen++ == index) return &r;
  return nullptr;
}

const LeftRule* CanonicalSystem::left_rule(const std::string& connective,
                                           int index) const {
  int seen = 0;
  for (const auto& r : left_rules)
    if (r.connective == connective && seen++ == index) return &r;
  return nullptr;
}

std::vector<std::pair<int, const RightRule*>> CanonicalSystem::right_rules_for(
    const std::string& connective) const {
  std::vector<std::pair<int, const RightRule*>> out;
  int seen = 0;
  for (const auto& r : right_rules)
    if (r.connective == connective) out.emplace_back(seen++, &r);
  return out;
}

std::vector<std::pair<int, const LeftRule*>> CanonicalSystem::left_rules_for(
    const std::string& connective) const {
  std::vector<std::pair<int, const LeftRule*>> out;
  int seen = 0;
  for (const auto& r : left_rules)
    if (r.connective == connective) out.emplace_back(seen++, &r);
  return out;
}

std::string rule_label(bool right, const std::string& connective, int index) {
  return std::string(right ? "right " : "left ") + connective + " #" +
         std::to_string(index);
}

namespace {

void check_clause(const Clause& c, int arity, bool must_be_negative,
                  const std::string& label, std::vector<Diagnostic>& out) {
  auto check_formula = [&](const Formula& f) {
    if (!f.is_atom()) {
      out.push_back({label, "premise formula must be atomic: " + to_string(f)});
      return;
    }
    if (f.atom_index() > arity)
      out.push_back({label, "premise atom out of arity: " + to_string(f)});
  };
  for (const auto& f : c.antecedent) check_formula(f);
  if (c.succedent) {
    if (must_be_negative)
      out.push_back({label, "soft premise must be negative"});
    else
      check_formula(*c.succedent);
  }
}

}  // namespace

std::vector<Diagnostic> validate_system(const CanonicalSystem& g) {
  std::vector<Diagnostic> out;
  std::map<std::string, int> right_seen, left_seen;
  for (const auto& r : g.right_rules) {
    std::string label = rule_label(true, r.connective, right_seen[r.connective]++);
    const Connective* c = g.signature.find(r.connective);
    if (!c)
      out.push_back({label, "connective not in signature"});
    else if (c->arity != r.arity)
      out.push_back({label, "rule arity differs from signature"});
    for (const auto& p : r.premises) check_clause(p, r.arity, false, label, out);
  }
  for (const auto& r : g.left_rules) {
    std::string label = rule_label(false, r.connective, left_seen[r.connective]++);
    const Connective* c = g.signature.find(r.connective);
    if (!c)
      out.push_back({label, "connective not in signature"});
    else if (c->arity != r.arity)
      out.push_back({label, "rule arity differs from signature"});
    for (const auto& p : r.hard_premises)
      check_clause(p, r.arity, false, label, out);
    for (const auto& p : r.soft_premises)
      check_clause(p, r.arity, true, label, out);
  }
  return out;
}

Formula rule_head(const std::string& connective, int arity,
                  const Substitution& s) {
  std::vector<Formula> args;
  args.reserve(arity);
  for (int i = 1; i <= arity; ++i) args.push_back(s.apply(Formula::atom(i)));
  return Formula::compound(connective, std::move(args));
}

RuleInstance instantiate_right(const RightRule& r, const Substitution& s,
                               const Theory& context) {
  RuleInstance out;
  for (const auto& p : r.premises) {
    Sequent prem;
    prem.antecedent = context;
    for (const auto& f : s.apply(p.antecedent)) prem.antecedent.insert(f);
    prem.succedent = s.apply(p.succedent);
    out.premises.push_back(std::move(prem));
  }
  out.conclusion.antecedent = context;
  out.conclusion.succedent = rule_head(r.connective, r.arity, s);
  return out;
}

RuleInstance instantiate_left(const LeftRule& r, const Substitution& s,
                              const Theory& context, const Succedent& e) {
  RuleInstance out;
  for (const auto& p : r.hard_premises) {
    Sequent prem;
    prem.antecedent = context;
    for (const auto& f : s.apply(p.antecedent)) prem.antecedent.insert(f);
    prem.succedent = s.apply(p.succedent);  // no right context here
    out.premises.push_back(std::move(prem));
  }
  for (const auto& p : r.soft_premises) {
    Sequent prem;
    prem.antecedent = context;
    for (const auto& f : s.apply(p.antecedent)) prem.antecedent.insert(f);
    prem.succedent = e;
    out.premises.push_back(std::move(prem));
  }
  out.conclusion.antecedent = context;
  out.conclusion.antecedent.insert(rule_head(r.connective, r.arity, s));
  out.conclusion.succedent = e;
  return out;
}

bool is_definite_system(const CanonicalSystem& g) {
  for (const auto& r : g.right_rules)
    for (const auto& p : r.premises)
      if (p.is_negative()) return false;
  for (const auto& r : g.left_rules)
    for (const auto& p : r.hard_premises)
      if (p.is_negative()) return false;
  return true;
}

namespace {

Clause cl(std::vector<int> ante, int succ = 0) {
  Clause c;
  for (int i : ante) c.antecedent.insert(Formula::atom(i));
  if (succ > 0) c.succedent = Formula::atom(succ);
  return c;
}

CanonicalSystem single(const std::string& name, int arity,
                       std::vector<LeftRule> lefts,
                       std::vector<RightRule> rights) {
  CanonicalSystem g;
  g.name = name;
  g.signature.add({name, arity});
  g.left_rules = std::move(lefts);
  g.right_rules = std::move(rights);
  return g;
}

std::map<std::string, CanonicalSystem> make_catalog() {
  std::map<std::string, CanonicalSystem> cat;

  cat["imp"] = single("imp", 2,
                      {{"imp", 2, {cl({}, 1)}, {cl({2})}}},
                      {{"imp", 2, {cl({1}, 2)}}});
  cat["bot"] = single("bot", 0, {{"bot", 0, {}, {}}}, {});
  cat["neg"] = single("neg", 1,
                      {{"neg", 1, {cl({}, 1)}, {}}},
                      {{"neg", 1, {cl({1})}}});
  cat["simp"] = single("simp", 2,
                       {{"simp", 2, {cl({}, 1)}, {cl({2})}}},
                       {{"simp", 2, {cl({}, 2)}}});
  cat["aff"] = single("aff", 1,
                      {{"aff", 1, {}, {cl({1})}}},
                      {{"aff", 1, {cl({}, 1)}}});
  cat["waff"] = single("waff", 1,
                       {{"waff", 1, {cl({1})}, {}}},
                       {{"waff", 1, {cl({}, 1)}}});
  cat["cni"] = single("cni", 2,
                      {{"cni", 2, {cl({2}, 1)}, {}}},
                      {{"cni", 2, {cl({1}), cl({}, 2)}}});
  cat["nand"] = single("nand", 2,
                       {{"nand", 2, {cl({}, 1), cl({}, 2)}, {}}},
                       {{"nand", 2, {cl({1})}}, {"nand", 2, {cl({2})}}});
  cat["circ"] = single("circ", 1,
                       {{"circ", 1, {}, {cl({1})}}},
                       {{"circ", 1, {cl({1})}}});

  // Standard conjunction/disjunction rule sets. Not part of the shipped
  // connective catalog proper; kept for conservativity experiments.
  cat["and"] = single("and", 2,
                      {{"and", 2, {}, {cl({1, 2})}}},
                      {{"and", 2, {cl({}, 1), cl({}, 2)}}});
  cat["or"] = single("or", 2,
                     {{"or", 2, {}, {cl({1}), cl({2})}}},
                     {{"or", 2, {cl({}, 1)}}, {"or", 2, {cl({}, 2)}}});

  cat["int"] = merge_systems("int", {&cat["imp"], &cat["bot"]});
  cat["definite"] = merge_systems(
      "definite", {&cat["imp"], &cat["bot"], &cat["simp"], &cat["aff"]});
  return cat;
}

}  // namespace

const std::map<std::string, CanonicalSystem>& builtin_systems() {
  static const std::map<std::string, CanonicalSystem> cat = make_catalog();
  return cat;
}

const CanonicalSystem* find_builtin(const std::string& name) {
  const auto& cat = builtin_systems();
  auto it = cat.find(name);
  return it == cat.end() ? nullptr : &it->second;
}

CanonicalSystem merge_systems(
    std::string name, const std::vector<const CanonicalSystem*>& parts) {
  CanonicalSystem g;
  g.name = std::move(name);
  for (const CanonicalSystem* p : parts) {
    if (!g.signature.merge(p->signature))
      throw std::invalid_argument("arity clash while merging systems");
    for (const auto& r : p->right_rules) {
      bool dup = false;
      for (const auto& existing : g.right_rules)
        if (existing == r) dup = true;
      if (!dup) g.right_rules.push_back(r);
    }
    for (const auto& r : p->left_rules) {
      bool dup = false;
      for (const auto& existing : g.left_rules)
        if (existing == r) dup = true;
      if (!dup) g.left_rules.push_back(r);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// System definition language

namespace {

struct DslToken {
  std::string text;
  size_t pos;
};

std::vector<DslToken> dsl_tokens(const std::string& line) {
  std::vector<DslToken> out;
  size_t i = 0;
  auto word_char = [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
  };
  while (i < line.size()) {
    unsigned char c = line[i];
    if (std::isspace(c)) { ++i; continue; }
    if (c == '#') break;
    size_t start = i;
    if (line.compare(i, 2, "|-") == 0) {
      out.push_back({"|-", start});
      i += 2;
    } else if (line.compare(i, 2, "=>") == 0) {
      out.push_back({"=>", start});
      i += 2;
    } else if (c == '(' || c == ')' || c == ':' || c == '/' || c == ',' ||
               c == '|') {
      out.push_back({std::string(1, static_cast<char>(c)), start});
      ++i;
    } else if (word_char(c)) {
      while (i < line.size() && word_char(static_cast<unsigned char>(line[i])))
        ++i;
      out.push_back({line.substr(start, i - start), start});
    } else {
      out.push_back({std::string(1, static_cast<char>(c)), start});
      ++i;
    }
  }
  return out;
}

struct DslCursor {
  const std::vector<DslToken>& toks;
  size_t i = 0;
  int line;

  bool done() const { return i >= toks.size(); }
  const std::string& peek() const {
    static const std::string kEnd = "<end of line>";
    return done() ? kEnd : toks[i].text;
  }
  std::string take() {
    if (done()) throw SystemParseError("unexpected end of line", line);
    return toks[i++].text;
  }
  void expect(const std::string& t) {
    if (peek() != t)
      throw SystemParseError("expected '" + t + "', got '" + peek() + "'",
                             line);
    ++i;
  }
};

int parse_atom_index(const std::string& tok, int line) {
  if (tok.size() >= 2 && tok[0] == 'p') {
    bool digits = true;
    for (size_t k = 1; k < tok.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(tok[k]))) digits = false;
    if (digits) return std::stoi(tok.substr(1));
  }
  throw SystemParseError("expected a schematic atom p1..pn, got '" + tok + "'",
                         line);
}

// clause ::= [atom ("," atom)*] "=>" [atom]   (inside parentheses)
Clause parse_clause(DslCursor& cur) {
  Clause c;
  cur.expect("(");
  if (cur.peek() != "=>" && cur.peek() != ")") {
    c.antecedent.insert(
        Formula::atom(parse_atom_index(cur.take(), cur.line)));
    while (cur.peek() == ",") {
      cur.take();
      c.antecedent.insert(
          Formula::atom(parse_atom_index(cur.take(), cur.line)));
    }
  }
  cur.expect("=>");
  if (cur.peek() != ")")
    c.succedent = Formula::atom(parse_atom_index(cur.take(), cur.line));
  cur.expect(")");
  return c;
}

}  // namespace

CanonicalSystem parse_system(std::string_view dsl_text) {
  CanonicalSystem g;
  bool named = false;
  std::istringstream in{std::string(dsl_text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = dsl_tokens(raw);
    if (toks.empty()) continue;
    DslCursor cur{toks, 0, lineno};
    std::string head = cur.take();
    if (head == "system") {
      g.name = cur.take();
      named = true;
      if (!cur.done()) throw SystemParseError("trailing tokens", lineno);
    } else if (head == "connective") {
      std::string name = normalize_connective_name(cur.take());
      cur.expect("/");
      std::string ar = cur.take();
      for (char c : ar)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw SystemParseError("arity must be a number", lineno);
      if (!g.signature.add({name, std::stoi(ar)}))
        throw SystemParseError("connective '" + name +
                                   "' redeclared with a different arity",
                               lineno);
      if (!cur.done()) throw SystemParseError("trailing tokens", lineno);
    } else if (head == "rule") {
      std::string side = cur.take();
      if (side != "right" && side != "left")
        throw SystemParseError("rule side must be 'right' or 'left'", lineno);
      std::string conn = normalize_connective_name(cur.take());
      const Connective* c = g.signature.find(conn);
      if (!c)
        throw SystemParseError("rule for undeclared connective '" + conn + "'",
                               lineno);
      cur.expect(":");
      if (side == "right") {
        RightRule r{conn, c->arity, {}};
        while (cur.peek() == "(") r.premises.push_back(parse_clause(cur));
        cur.expect("|-");
        cur.expect("(");
        cur.expect("=>");
        if (normalize_connective_name(cur.take()) != conn)
          throw SystemParseError("conclusion must name the rule's connective",
                                 lineno);
        cur.expect(")");
        if (!cur.done()) throw SystemParseError("trailing tokens", lineno);
        g.right_rules.push_back(std::move(r));
      } else {
        LeftRule r{conn, c->arity, {}, {}};
        while (cur.peek() == "hard" || cur.peek() == "soft") {
          std::string kind = cur.take();
          Clause clause = parse_clause(cur);
          if (kind == "soft") {
            if (clause.is_definite())
              throw SystemParseError(
                  "soft premise must be negative (definite premises are hard)",
                  lineno);
            r.soft_premises.push_back(std::move(clause));
          } else {
            r.hard_premises.push_back(std::move(clause));
          }
        }
        cur.expect("|-");
        cur.expect("(");
        if (normalize_connective_name(cur.take()) != conn)
          throw SystemParseError("conclusion must name the rule's connective",
                                 lineno);
        cur.expect("=>");
        cur.expect(")");
        if (!cur.done()) throw SystemParseError("trailing tokens", lineno);
        g.left_rules.push_back(std::move(r));
      }
    } else {
      throw SystemParseError("unknown declaration '" + head + "'", lineno);
    }
  }
  if (!named) g.name = "unnamed";
  return g;
}

CanonicalSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

std::string print_system(const CanonicalSystem& g) {
  std::ostringstream os;
  os << "system " << g.name << "\n";
  for (const auto& c : g.signature.connectives())
    os << "connective " << c.name << "/" << c.arity << "\n";
  auto clause_text = [](const Clause& c) {
    return "(" + to_string(c) + ")";
  };
  for (const auto& r : g.right_rules) {
    os << "rule right " << r.connective << " :";
    for (const auto& p : r.premises) os << " " << clause_text(p);
    os << " |- (=> " << r.connective << ")\n";
  }
  for (const auto& r : g.left_rules) {
    os << "rule left " << r.connective << " :";
    for (const auto& p : r.hard_premises) os << " hard" << clause_text(p);
    for (const auto& p : r.soft_premises) os << " soft" << clause_text(p);
    os << " |- (" << r.connective << " =>)\n";
  }
  return os.str();
}

}  // namespace canonseq
