#include <doctest.h>

#include "helpers.hpp"

using namespace ct;

TEST_CASE("formula parsing and printing") {
  Signature sig{{"imp", 2}, {"bot", 0}};

  Formula f = parse_formula("imp(p1, p2)", sig);
  CHECK(!f.is_atom());
  CHECK(f.connective() == "imp");
  REQUIRE(f.args().size() == 2);
  CHECK(f.args()[0] == Formula::atom(1));
  CHECK(f.args()[1] == Formula::atom(2));

  CHECK(parse_formula("bot", sig) == Formula::compound("bot", {}));
  CHECK(parse_formula("  imp ( p1 ,p2 ) ", sig) == f);
  CHECK(to_string(f) == "imp(p1, p2)");

  CHECK_THROWS_AS(parse_formula("imp(p1)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("wedge(p1, p2)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("imp(p1, p2", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("imp(p1, p2)) ", sig), ParseError);

  // error positions point at the offending token
  try {
    parse_formula("imp(p1, wedge)", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 8);
  }
}

TEST_CASE("unicode aliases accepted, never printed") {
  Signature sig{{"imp", 2}, {"neg", 1}, {"nand", 2}};
  CHECK(parse_formula("⊃(p1, p2)", sig) == F("imp(p1, p2)"));
  CHECK(parse_formula("¬(p1)", sig) == F("neg(p1)"));
  CHECK(parse_formula("|(p1, p2)", sig) == F("nand(p1, p2)"));
  CHECK(to_string(F("imp(p1, p2)")).find("⊃") == std::string::npos);
}

TEST_CASE("sequent parsing") {
  const Signature& sig = all_sys().signature;
  Sequent s = parse_sequent("p1, imp(p1, p2) => p2", sig);
  CHECK(s.antecedent.size() == 2);
  CHECK(s.succedent == F("p2"));
  CHECK(parse_sequent("=>", sig) == Sequent{});
  CHECK(parse_sequent("p1 =>", sig).is_negative());
  CHECK(parse_sequent("=> p1", sig).is_definite());
  CHECK(parse_sequent("p1 ⇒ p2", sig) == S("p1 => p2"));

  // set semantics: duplicates collapse, order is irrelevant
  CHECK(S("p1, p2, p1 => ") == S("p2, p1 =>"));
}

TEST_CASE("print/parse round-trips on generated formulas up to depth 4") {
  const Signature& sig = all_sys().signature;
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, sig, 4);
    CHECK(parse_formula(to_string(f), sig) == f);
  }
  for (int i = 0; i < 200; ++i) {
    Sequent s{{random_formula(rng, sig, 3), random_formula(rng, sig, 3)},
              random_formula(rng, sig, 3)};
    CHECK(parse_sequent(to_string(s), sig) == s);
  }
}

TEST_CASE("substitution is a homomorphism") {
  Substitution s{{1, F("p3")}};
  CHECK(s.apply(F("neg(p1)")) == F("neg(p3)"));

  SUBCASE("empty succedent maps to empty succedent") {
    Succedent none;
    CHECK(s.apply(none) == Succedent{});
  }
  SUBCASE("identity substitution") {
    Substitution id;
    Formula f = F("imp(neg(p1), p2)");
    CHECK(id.apply(f) == f);
  }
  SUBCASE("pointwise on theories and sequents") {
    CHECK(s.apply(TT({"p1", "p2"})) == TT({"p3", "p2"}));
    CHECK(s.apply(S("p1 => p1")) == S("p3 => p3"));
  }
}

TEST_CASE("substitution composition") {
  const Signature& sig = all_sys().signature;
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Substitution s1, s2;
    for (int a = 1; a <= 3; ++a) {
      if (rng() % 2) s1.set(a, random_formula(rng, sig, 2, 3));
      if (rng() % 2) s2.set(a, random_formula(rng, sig, 2, 3));
    }
    Formula f = random_formula(rng, sig, 3, 3);
    CHECK(s2.apply(s1.apply(f)) == Substitution::compose(s2, s1).apply(f));
  }
}

TEST_CASE("subformula closure") {
  CHECK(subformula_closure(SS({"=> imp(p1, p2)"})) ==
        TT({"imp(p1, p2)", "p1", "p2"}));
  CHECK(subformula_closure(SS({"p1 =>"})) == TT({"p1"}));
  CHECK(subformula_closure(SS({"=> imp(imp(p1, p2), p1)"})) ==
        TT({"imp(imp(p1, p2), p1)", "imp(p1, p2)", "p1", "p2"}));
}

TEST_CASE("closure contains substitution images of closure members") {
  const Signature& sig = all_sys().signature;
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    Sequent s{{random_formula(rng, sig, 3)}, random_formula(rng, sig, 2)};
    Substitution sub{{1, random_formula(rng, sig, 2)},
                     {2, random_formula(rng, sig, 2)}};
    Theory closed_image = subformula_closure(std::set<Sequent>{sub.apply(s)});
    for (const Formula& f : subformula_closure(std::set<Sequent>{s}))
      CHECK(closed_image.count(sub.apply(f)) == 1);
  }
}

TEST_CASE("sequent classification") {
  CHECK(classify_sequent(S("p1 => p2")) == SequentKind::Definite);
  CHECK(classify_sequent(S("p1 =>")) == SequentKind::Negative);
  CHECK(classify_sequent(S("=> p1")) == SequentKind::Definite);
}
