#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polykernel/syntax.hpp"

using namespace polykernel;

TEST_CASE("church nat parses to a pi chain") {
  DeclarationFile f = parse("nat := Πα:*. α → (α → α) → α\n");
  REQUIRE(f.decls.size() == 1);
  const Declaration& d = f.decls[0];
  CHECK(d.name == "nat");
  CHECK(d.kind == DeclKind::Definition);
  REQUIRE(d.body);
  auto pi = d.body->as<PiNode>();
  REQUIRE(pi);
  CHECK(pi->hint == "α");
  CHECK(pi->domain.as<SortNode>()->kind == SortKind::Star);
  auto a1 = pi->codomain.as<PiNode>();
  REQUIRE(a1);
  CHECK(a1->domain == Term::var(0));
  auto step = a1->codomain.as<PiNode>();
  REQUIRE(step);
  // α → α under the two binders before it
  CHECK(step->domain == Term::arrow(Term::var(1), Term::var(1)));
  CHECK(step->codomain == Term::var(2));
}

TEST_CASE("polymorphic identity is two lambdas") {
  DeclarationFile f = parse("id := λα:*. λx:α. x");
  REQUIRE(f.decls.size() == 1);
  Term expect = Term::lam("α", Term::star(), Term::lam("x", Term::var(0), Term::var(0)));
  CHECK(*f.decls[0].body == expect);
}

TEST_CASE("missing domain is a parse error with a location") {
  try {
    parse_term("Πx:. x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().line == 1);
    CHECK(e.where().column == 4);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("x : * := "), ParseError);
  CHECK_THROWS_AS(parse_term("λx. x"), ParseError);
}

TEST_CASE("printing") {
  CHECK(print(Term::pi("α", Term::star(), Term::arrow(Term::var(0), Term::var(0)))) ==
        "Πα:*. α → α");
  CHECK(print(Term::refl()) == "refl");
  Term fab = Term::app(Term::app(Term::constant("f"), Term::constant("a")),
                       Term::constant("b"));
  CHECK(print(fab) == "f a b");
  Term fba = Term::app(Term::constant("f"),
                       Term::app(Term::constant("a"), Term::constant("b")));
  CHECK(print(fba) == "f (a b)");
  CHECK(print(Term::arrow(Term::arrow(Term::constant("a"), Term::constant("b")),
                          Term::constant("c"))) == "(a → b) → c");
}

TEST_CASE("substitution") {
  // (P x)[x := O]
  Term px = Term::app(Term::constant("P"), Term::var(0, "x"));
  CHECK(subst(px, 0, Term::constant("O")) ==
        Term::app(Term::constant("P"), Term::constant("O")));

  // bound occurrence untouched
  Term id = Term::lam("x", Term::constant("σ"), Term::var(0, "x"));
  CHECK(instantiate(Term::app(Term::constant("g"), id), Term::constant("q")) ==
        Term::app(Term::constant("g"), id));

  // (λy. x)[x := y] with y free outside: the binder must not capture it
  Term under = Term::lam("y", Term::constant("σ"), Term::var(1, "x"));
  Term r = subst(under, 0, Term::var(0, "y"));
  auto lam = r.as<LamNode>();
  REQUIRE(lam);
  CHECK(lam->body == Term::var(1));
  std::string shown = print(r, {"y"});
  CHECK(shown != "λy:σ. y");
  CHECK(parse_term(shown, {"y"}) == r);
}

TEST_CASE("shift and free indices") {
  Term t = Term::app(Term::var(0), Term::lam("z", Term::star(), Term::var(1)));
  CHECK(shift(t, 2) == Term::app(Term::var(2), Term::lam("z", Term::star(), Term::var(3))));
  CHECK(free_indices(t) == std::vector<std::size_t>{0});
  CHECK(occurs_free(t, 0));
  CHECK_FALSE(occurs_free(t, 1));
}

TEST_CASE("extension syntax") {
  DeclarationFile f = parse("#ext sigma id\np : Σx:nat. Id(nat, x, x) := ⟨O, refl⟩\n");
  CHECK(f.flags.sigma);
  CHECK(f.flags.identity);
  CHECK_FALSE(f.flags.uip_postulate);
  REQUIRE(f.decls.size() == 1);
  CHECK(f.decls[0].type->as<SigmaNode>());
  CHECK(f.decls[0].body->as<PairNode>());
  CHECK(uses_extensions(*f.decls[0].body));
  CHECK_FALSE(uses_extensions(parse_term("λx:nat. x")));

  Term j = parse_term("J(a b p. Id(nat, a, b), λz:nat. refl, x, y, q)", {"x", "y", "q"});
  auto jn = j.as<JNode>();
  REQUIRE(jn);
  CHECK(jn->hx == "a");
  CHECK(jn->motive.as<IdNode>());
  CHECK(jn->q == Term::var(0));
}

TEST_CASE("extension flags") {
  CHECK(ExtensionFlags::from_words({"sigma"}).sigma);
  CHECK_THROWS_AS(ExtensionFlags::from_words({"uip"}), std::invalid_argument);
  CHECK_THROWS_AS(ExtensionFlags::from_words({"bogus"}), std::invalid_argument);
  ExtensionFlags all = ExtensionFlags::all();
  CHECK(all.covers(ExtensionFlags::from_words({"id", "funext"})));
  CHECK_FALSE(ExtensionFlags{}.covers(all));
  CHECK(ExtensionFlags::from_words(all.words()) == all);
}

TEST_CASE("postulates") {
  DeclarationFile f = parse("postulate ax : Πα:*. α\n");
  REQUIRE(f.decls.size() == 1);
  CHECK(f.decls[0].kind == DeclKind::Postulate);
  CHECK_FALSE(f.decls[0].body);
}

namespace {

// Random well-scoped pseudo-terms over `depth` free variables.
Term random_term(std::mt19937_64& rng, std::size_t depth, int budget) {
  std::uniform_int_distribution<int> pick(0, budget <= 0 ? 2 : 8);
  static const char* hints[] = {"x", "y", "x", "α", "f"};
  auto hint = [&] { return std::string(hints[rng() % 5]); };
  switch (pick(rng)) {
    case 0: return Term::star();
    case 1:
      if (depth) return Term::var(rng() % depth);
      return Term::constant("c");
    case 2: return Term::constant(rng() % 2 ? "nat" : "O");
    case 3:
    case 4:
      return Term::app(random_term(rng, depth, budget - 1),
                       random_term(rng, depth, budget - 1));
    case 5:
      return Term::lam(hint(), random_term(rng, depth, budget - 1),
                       random_term(rng, depth + 1, budget - 1));
    case 6:
      return Term::pi(hint(), random_term(rng, depth, budget - 1),
                      random_term(rng, depth + 1, budget - 1));
    case 7:
      return Term::arrow(random_term(rng, depth, budget - 1),
                         random_term(rng, depth, budget - 1));
    default:
      return Term::id(random_term(rng, depth, budget - 2),
                      random_term(rng, depth, budget - 2),
                      random_term(rng, depth, budget - 2));
  }
}

}  // namespace

TEST_CASE("print then parse is the identity up to alpha") {
  std::mt19937_64 rng(7);
  std::vector<std::string> scope = {"x", "y"};
  for (int i = 0; i < 2000; ++i) {
    Term t = random_term(rng, scope.size(), 6);
    std::string s = print(t, scope);
    Term back = parse_term(s, scope);
    INFO(s);
    REQUIRE(back == t);
  }
}

TEST_CASE("file round trip") {
  std::string src =
      "#ext id\n"
      "bool := Πα:*. α → α → α\n"
      "true : bool := λα:*. λx y:α. x\n"
      "refl_true : Id(bool, true, true) := refl\n";
  DeclarationFile f = parse(src);
  DeclarationFile g = parse(print(f));
  REQUIRE(g.decls.size() == f.decls.size());
  CHECK(g.flags == f.flags);
  for (std::size_t i = 0; i < f.decls.size(); ++i) {
    CHECK(g.decls[i].name == f.decls[i].name);
    CHECK(g.decls[i].body.has_value() == f.decls[i].body.has_value());
    if (f.decls[i].body) CHECK(*g.decls[i].body == *f.decls[i].body);
    if (f.decls[i].type) CHECK(*g.decls[i].type == *f.decls[i].type);
  }
}
