#include "canonseq/derivation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "canonseq/parser.hpp"

namespace canonseq {

namespace {

Theory theory_union(const Theory& a, const Theory& b) {
  Theory out = a;
  out.insert(b.begin(), b.end());
  return out;
}

Theory theory_minus(const Theory& a, const Formula& f) {
  Theory out = a;
  out.erase(f);
  return out;
}

}  // namespace

Derivation d_axiom(const Formula& f) {
  return {Sequent{{f}, f}, AxiomJ{}, {}};
}

Derivation d_assume(const Sequent& s) { return {s, AssumptionJ{}, {}}; }

Derivation d_weaken_left(Derivation child, const Theory& added) {
  Sequent conc{theory_union(child.conclusion.antecedent, added),
               child.conclusion.succedent};
  Derivation d{std::move(conc), WeakenLeftJ{added}, {}};
  d.children.push_back(std::move(child));
  return d;
}

Derivation d_weaken_right(Derivation child, const Formula& f) {
  Sequent conc{child.conclusion.antecedent, f};
  Derivation d{std::move(conc), WeakenRightJ{f}, {}};
  d.children.push_back(std::move(child));
  return d;
}

Derivation d_cut(Derivation left, Derivation right, const Formula& cut_formula) {
  Sequent conc{theory_union(left.conclusion.antecedent,
                            theory_minus(right.conclusion.antecedent,
                                         cut_formula)),
               right.conclusion.succedent};
  Derivation d{std::move(conc), CutJ{cut_formula}, {}};
  d.children.push_back(std::move(left));
  d.children.push_back(std::move(right));
  return d;
}

Derivation d_apply_right(const CanonicalSystem& g, const std::string& conn,
                         int index, const Substitution& subst,
                         const Theory& context,
                         std::vector<Derivation> children) {
  const RightRule* r = g.right_rule(conn, index);
  if (!r) throw std::invalid_argument("no such right rule: " + conn);
  RuleInstance inst = instantiate_right(*r, subst, context);
  return {inst.conclusion,
          RuleAppJ{RuleSide::Right, conn, index, subst, context, std::nullopt},
          std::move(children)};
}

Derivation d_apply_left(const CanonicalSystem& g, const std::string& conn,
                        int index, const Substitution& subst,
                        const Theory& context, const Succedent& e,
                        std::vector<Derivation> children) {
  const LeftRule* r = g.left_rule(conn, index);
  if (!r) throw std::invalid_argument("no such left rule: " + conn);
  RuleInstance inst = instantiate_left(*r, subst, context, e);
  return {inst.conclusion,
          RuleAppJ{RuleSide::Left, conn, index, subst, context, e},
          std::move(children)};
}

Derivation d_hyper_cut1(const Sequent& nucleus, std::vector<Derivation> sides,
                        Derivation theta_child) {
  if (!nucleus.succedent)
    throw std::invalid_argument("hyper-cut-1 nucleus must be definite");
  Theory ante;
  for (const auto& s : sides)
    ante = theory_union(ante, s.conclusion.antecedent);
  ante = theory_union(
      ante, theory_minus(theta_child.conclusion.antecedent, *nucleus.succedent));
  Sequent conc{std::move(ante), theta_child.conclusion.succedent};
  Derivation d{std::move(conc), HyperCut1J{nucleus}, std::move(sides)};
  d.children.push_back(std::move(theta_child));
  return d;
}

Derivation d_hyper_cut2(const Sequent& nucleus, std::vector<Derivation> sides) {
  Theory ante;
  for (const auto& s : sides)
    ante = theory_union(ante, s.conclusion.antecedent);
  Sequent conc{std::move(ante), std::nullopt};
  return {std::move(conc), HyperCut2J{nucleus}, std::move(sides)};
}

std::string CheckResult::describe() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << "node " << (node_path.empty() ? "<root>" : node_path) << ": "
     << message;
  if (expected) os << " (expected: " << to_string(*expected) << ")";
  return os.str();
}

namespace {

struct Checker {
  const CanonicalSystem& g;
  const std::set<Sequent>& assumptions;

  CheckResult fail(const std::string& path, const std::string& msg,
                   std::optional<Sequent> expected = std::nullopt) const {
    return {false, path, msg, std::move(expected)};
  }

  CheckResult check_node(const Derivation& d, const std::string& path) const;
  CheckResult check(const Derivation& d, const std::string& path) const;
  CheckResult check_hyper1(const Derivation& d, const std::string& path) const;
  CheckResult check_hyper2(const Derivation& d, const std::string& path) const;
};

CheckResult Checker::check_hyper1(const Derivation& d,
                                  const std::string& path) const {
  const auto& j = std::get<HyperCut1J>(d.justification);
  if (!j.nucleus.succedent)
    return fail(path, "hyper-cut-1 nucleus must be definite");
  if (!assumptions.count(j.nucleus))
    return fail(path, "hyper-cut nucleus is not an assumption: " +
                          to_string(j.nucleus));
  size_t n = j.nucleus.antecedent.size();
  if (d.children.size() != n + 1)
    return fail(path, "hyper-cut-1 expects " + std::to_string(n + 1) +
                          " children, got " + std::to_string(d.children.size()));
  Theory ante;
  size_t i = 0;
  for (const auto& psi : j.nucleus.antecedent) {
    const Sequent& side = d.children[i].conclusion;
    if (!side.succedent || !(*side.succedent == psi))
      return fail(path + (path.empty() ? "" : ".") + std::to_string(i),
                  "side child must conclude with succedent " + to_string(psi));
    ante = theory_union(ante, side.antecedent);
    ++i;
  }
  const Sequent& theta_child = d.children.back().conclusion;
  const Formula& theta = *j.nucleus.succedent;
  if (!theta_child.antecedent.count(theta))
    return fail(path + (path.empty() ? "" : ".") + std::to_string(n),
                "last child must contain the nucleus succedent " +
                    to_string(theta) + " in its antecedent");
  Sequent want_dropped{theory_union(ante, theory_minus(theta_child.antecedent,
                                                       theta)),
                       theta_child.succedent};
  Sequent want_kept{theory_union(ante, theta_child.antecedent),
                    theta_child.succedent};
  if (!(d.conclusion == want_dropped) && !(d.conclusion == want_kept))
    return fail(path, "hyper-cut-1 conclusion does not match its children",
                want_dropped);
  return {};
}

CheckResult Checker::check_hyper2(const Derivation& d,
                                  const std::string& path) const {
  const auto& j = std::get<HyperCut2J>(d.justification);
  if (j.nucleus.succedent)
    return fail(path, "hyper-cut-2 nucleus must be negative");
  if (!assumptions.count(j.nucleus))
    return fail(path, "hyper-cut nucleus is not an assumption: " +
                          to_string(j.nucleus));
  size_t n = j.nucleus.antecedent.size();
  if (d.children.size() != n)
    return fail(path, "hyper-cut-2 expects " + std::to_string(n) +
                          " children, got " + std::to_string(d.children.size()));
  Theory ante;
  size_t i = 0;
  for (const auto& psi : j.nucleus.antecedent) {
    const Sequent& side = d.children[i].conclusion;
    if (!side.succedent || !(*side.succedent == psi))
      return fail(path + (path.empty() ? "" : ".") + std::to_string(i),
                  "side child must conclude with succedent " + to_string(psi));
    ante = theory_union(ante, side.antecedent);
    ++i;
  }
  Sequent want{ante, std::nullopt};
  if (!(d.conclusion == want))
    return fail(path, "hyper-cut-2 conclusion does not match its children",
                want);
  return {};
}

CheckResult Checker::check_node(const Derivation& d,
                                const std::string& path) const {
  return std::visit(
      [&](const auto& j) -> CheckResult {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, AxiomJ>) {
          if (!d.children.empty())
            return fail(path, "axiom takes no children");
          if (!d.conclusion.succedent ||
              d.conclusion.antecedent.size() != 1 ||
              !(*d.conclusion.antecedent.begin() == *d.conclusion.succedent))
            return fail(path, "axiom must have the form phi => phi");
          return {};
        } else if constexpr (std::is_same_v<T, AssumptionJ>) {
          if (!d.children.empty())
            return fail(path, "assumption takes no children");
          if (!assumptions.count(d.conclusion))
            return fail(path, "sequent is not among the assumptions: " +
                                  to_string(d.conclusion));
          return {};
        } else if constexpr (std::is_same_v<T, WeakenLeftJ>) {
          if (d.children.size() != 1)
            return fail(path, "left weakening takes one child");
          const Sequent& c = d.children[0].conclusion;
          Sequent want{theory_union(c.antecedent, j.added), c.succedent};
          if (!(d.conclusion == want))
            return fail(path, "left weakening conclusion mismatch", want);
          return {};
        } else if constexpr (std::is_same_v<T, WeakenRightJ>) {
          if (d.children.size() != 1)
            return fail(path, "right weakening takes one child");
          const Sequent& c = d.children[0].conclusion;
          bool noop = c.succedent && *c.succedent == j.formula;
          if (!noop && c.succedent)
            return fail(path, "right weakening child must be negative");
          Sequent want{c.antecedent, j.formula};
          if (!(d.conclusion == want))
            return fail(path, "right weakening conclusion mismatch", want);
          return {};
        } else if constexpr (std::is_same_v<T, CutJ>) {
          if (d.children.size() != 2) return fail(path, "cut takes two children");
          const Sequent& l = d.children[0].conclusion;
          const Sequent& r = d.children[1].conclusion;
          if (!l.succedent || !(*l.succedent == j.cut_formula))
            return fail(path, "left child of cut must conclude => " +
                                  to_string(j.cut_formula));
          if (!r.antecedent.count(j.cut_formula))
            return fail(path, "right child of cut must contain " +
                                  to_string(j.cut_formula) +
                                  " in its antecedent");
          Sequent want_dropped{
              theory_union(l.antecedent, theory_minus(r.antecedent,
                                                      j.cut_formula)),
              r.succedent};
          Sequent want_kept{theory_union(l.antecedent, r.antecedent),
                            r.succedent};
          if (!(d.conclusion == want_dropped) && !(d.conclusion == want_kept))
            return fail(path, "cut conclusion does not match its children",
                        want_dropped);
          return {};
        } else if constexpr (std::is_same_v<T, RuleAppJ>) {
          RuleInstance inst;
          if (j.side == RuleSide::Right) {
            const RightRule* r = g.right_rule(j.connective, j.rule_index);
            if (!r)
              return fail(path, "no right rule " + j.connective + " #" +
                                    std::to_string(j.rule_index) +
                                    " in the system");
            inst = instantiate_right(*r, j.subst, j.context);
          } else {
            const LeftRule* r = g.left_rule(j.connective, j.rule_index);
            if (!r)
              return fail(path, "no left rule " + j.connective + " #" +
                                    std::to_string(j.rule_index) +
                                    " in the system");
            inst = instantiate_left(*r, j.subst, j.context, j.succ_context);
          }
          if (d.children.size() != inst.premises.size())
            return fail(path, "rule application expects " +
                                  std::to_string(inst.premises.size()) +
                                  " premises, got " +
                                  std::to_string(d.children.size()));
          for (size_t i = 0; i < inst.premises.size(); ++i)
            if (!(d.children[i].conclusion == inst.premises[i]))
              return fail(path + (path.empty() ? "" : ".") + std::to_string(i),
                          "premise does not match the rule instance",
                          inst.premises[i]);
          if (!(d.conclusion == inst.conclusion))
            return fail(path, "rule application conclusion mismatch",
                        inst.conclusion);
          return {};
        } else if constexpr (std::is_same_v<T, HyperCut1J>) {
          return check_hyper1(d, path);
        } else {
          return check_hyper2(d, path);
        }
      },
      d.justification);
}

CheckResult Checker::check(const Derivation& d, const std::string& path) const {
  CheckResult res = check_node(d, path);
  if (!res.ok) return res;
  for (size_t i = 0; i < d.children.size(); ++i) {
    std::string child_path =
        path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
    res = check(d.children[i], child_path);
    if (!res.ok) return res;
  }
  return {};
}

}  // namespace

CheckResult check_derivation(const CanonicalSystem& g,
                             const std::set<Sequent>& assumptions,
                             const Derivation& d) {
  return Checker{g, assumptions}.check(d, "");
}

CheckResult check_hyper_cut(const std::set<Sequent>& assumptions,
                            const Derivation& node) {
  static const CanonicalSystem empty_system{};
  Checker ch{empty_system, assumptions};
  if (std::holds_alternative<HyperCut1J>(node.justification))
    return ch.check_hyper1(node, "");
  if (std::holds_alternative<HyperCut2J>(node.justification))
    return ch.check_hyper2(node, "");
  return {false, "", "node is not a hyper-cut", std::nullopt};
}

namespace {
void collect_occurring(const std::set<Sequent>& s_set, Theory& out) {
  for (const auto& s : s_set) {
    out.insert(s.antecedent.begin(), s.antecedent.end());
    if (s.succedent) out.insert(*s.succedent);
  }
}
}  // namespace

bool is_S_proof(const Derivation& d, const std::set<Sequent>& s_set) {
  Theory occurring;
  collect_occurring(s_set, occurring);
  bool ok = true;
  auto walk = [&](auto&& self, const Derivation& node) -> void {
    if (const auto* c = std::get_if<CutJ>(&node.justification))
      if (!occurring.count(c->cut_formula)) ok = false;
    for (const auto& ch : node.children) self(self, ch);
  };
  walk(walk, d);
  return ok;
}

bool is_strict_proof(const Derivation& d) {
  if (!d.conclusion.is_definite()) return false;
  for (const auto& c : d.children)
    if (!is_strict_proof(c)) return false;
  return true;
}

namespace {

// Rewrites right weakenings over negative subtrees by re-running the
// negative spine with the weakening formula as right context. Conclusions
// of untouched nodes are preserved exactly; spine nodes keep their
// antecedents and gain the succedent.
struct Strictifier {
  const CanonicalSystem& g;

  Derivation rewrite(const Derivation& d) const {
    if (const auto* w = std::get_if<WeakenRightJ>(&d.justification)) {
      const Derivation& child = d.children[0];
      if (child.conclusion.is_negative()) return push(child, w->formula);
    }
    Derivation out{d.conclusion, d.justification, {}};
    out.children.reserve(d.children.size());
    for (const auto& c : d.children) out.children.push_back(rewrite(c));
    return out;
  }

  // d concludes Gamma => ; the result concludes Gamma => psi.
  Derivation push(const Derivation& d, const Formula& psi) const {
    Sequent target{d.conclusion.antecedent, psi};
    if (const auto* app = std::get_if<RuleAppJ>(&d.justification);
        app && app->side == RuleSide::Left && !app->succ_context) {
      if (const LeftRule* rule =
              g.left_rule(app->connective, app->rule_index)) {
        size_t hard = rule->hard_premises.size();
        RuleAppJ j = *app;
        j.succ_context = psi;
        std::vector<Derivation> children;
        children.reserve(d.children.size());
        for (size_t i = 0; i < d.children.size(); ++i)
          children.push_back(i < hard ? rewrite(d.children[i])
                                      : push(d.children[i], psi));
        return {std::move(target), std::move(j), std::move(children)};
      }
    }
    if (const auto* w = std::get_if<WeakenLeftJ>(&d.justification)) {
      Derivation out{std::move(target), *w, {}};
      out.children.push_back(push(d.children[0], psi));
      return out;
    }
    if (const auto* c = std::get_if<CutJ>(&d.justification)) {
      Derivation out{std::move(target), *c, {}};
      out.children.push_back(rewrite(d.children[0]));
      out.children.push_back(push(d.children[1], psi));
      return out;
    }
    if (const auto* h = std::get_if<HyperCut1J>(&d.justification)) {
      Derivation out{std::move(target), *h, {}};
      for (size_t i = 0; i + 1 < d.children.size(); ++i)
        out.children.push_back(rewrite(d.children[i]));
      out.children.push_back(push(d.children.back(), psi));
      return out;
    }
    // assumptions, hyper-cut-2: nothing to re-run; keep the weakening here
    return d_weaken_right(rewrite(d), psi);
  }
};

}  // namespace

Derivation strictify(const CanonicalSystem& g, const Derivation& d) {
  return Strictifier{g}.rewrite(d);
}

std::set<Formula> cut_formulas(const Derivation& d) {
  std::set<Formula> out;
  auto walk = [&](auto&& self, const Derivation& node) -> void {
    if (const auto* c = std::get_if<CutJ>(&node.justification))
      out.insert(c->cut_formula);
    for (const auto& ch : node.children) self(self, ch);
  };
  walk(walk, d);
  return out;
}

int count_cuts(const Derivation& d) {
  int n = std::holds_alternative<CutJ>(d.justification) ? 1 : 0;
  for (const auto& c : d.children) n += count_cuts(c);
  return n;
}

int tree_size(const Derivation& d) {
  int n = 1;
  for (const auto& c : d.children) n += tree_size(c);
  return n;
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

nlohmann::json theory_to_json(const Theory& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : t) arr.push_back(to_string(f));
  return arr;
}

}  // namespace

nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json j;
  j["conclusion"] = to_string(d.conclusion);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AxiomJ>) {
          j["rule"] = "axiom";
        } else if constexpr (std::is_same_v<T, AssumptionJ>) {
          j["rule"] = "assumption";
        } else if constexpr (std::is_same_v<T, WeakenLeftJ>) {
          j["rule"] = "weaken-left";
          j["added"] = theory_to_json(x.added);
        } else if constexpr (std::is_same_v<T, WeakenRightJ>) {
          j["rule"] = "weaken-right";
          j["formula"] = to_string(x.formula);
        } else if constexpr (std::is_same_v<T, CutJ>) {
          j["rule"] = "cut";
          j["formula"] = to_string(x.cut_formula);
        } else if constexpr (std::is_same_v<T, RuleAppJ>) {
          j["rule"] = "apply";
          j["side"] = x.side == RuleSide::Right ? "right" : "left";
          j["connective"] = x.connective;
          j["index"] = x.rule_index;
          nlohmann::json subst = nlohmann::json::object();
          for (const auto& [k, v] : x.subst.assignments())
            subst["p" + std::to_string(k)] = to_string(v);
          j["subst"] = subst;
          j["context"] = theory_to_json(x.context);
          if (x.side == RuleSide::Left && x.succ_context)
            j["succedent"] = to_string(*x.succ_context);
        } else if constexpr (std::is_same_v<T, HyperCut1J>) {
          j["rule"] = "hyper-cut-1";
          j["nucleus"] = to_string(x.nucleus);
        } else {
          j["rule"] = "hyper-cut-2";
          j["nucleus"] = to_string(x.nucleus);
        }
      },
      d.justification);
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : d.children) children.push_back(derivation_to_json(c));
  j["children"] = children;
  return j;
}

Derivation derivation_from_json(const nlohmann::json& j, const Signature& sig) {
  Derivation d;
  d.conclusion = parse_sequent(j.at("conclusion").get<std::string>(), sig);
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "axiom") {
    d.justification = AxiomJ{};
  } else if (rule == "assumption") {
    d.justification = AssumptionJ{};
  } else if (rule == "weaken-left") {
    Theory added;
    for (const auto& f : j.at("added"))
      added.insert(parse_formula(f.get<std::string>(), sig));
    d.justification = WeakenLeftJ{std::move(added)};
  } else if (rule == "weaken-right") {
    d.justification =
        WeakenRightJ{parse_formula(j.at("formula").get<std::string>(), sig)};
  } else if (rule == "cut") {
    d.justification =
        CutJ{parse_formula(j.at("formula").get<std::string>(), sig)};
  } else if (rule == "apply") {
    RuleAppJ app;
    app.side = j.at("side").get<std::string>() == "right" ? RuleSide::Right
                                                          : RuleSide::Left;
    app.connective = j.at("connective").get<std::string>();
    app.rule_index = j.at("index").get<int>();
    for (const auto& [k, v] : j.at("subst").items()) {
      if (k.size() < 2 || k[0] != 'p')
        throw std::runtime_error("bad substitution key: " + k);
      app.subst.set(std::stoi(k.substr(1)),
                    parse_formula(v.get<std::string>(), sig));
    }
    for (const auto& f : j.at("context"))
      app.context.insert(parse_formula(f.get<std::string>(), sig));
    if (j.contains("succedent"))
      app.succ_context =
          parse_formula(j.at("succedent").get<std::string>(), sig);
    d.justification = std::move(app);
  } else if (rule == "hyper-cut-1") {
    d.justification =
        HyperCut1J{parse_sequent(j.at("nucleus").get<std::string>(), sig)};
  } else if (rule == "hyper-cut-2") {
    d.justification =
        HyperCut2J{parse_sequent(j.at("nucleus").get<std::string>(), sig)};
  } else {
    throw std::runtime_error("unknown proof rule: " + rule);
  }
  if (j.contains("children"))
    for (const auto& c : j.at("children"))
      d.children.push_back(derivation_from_json(c, sig));
  return d;
}

}  // namespace canonseq
