#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polykernel/stdlib.hpp"
#include "polykernel/weca.hpp"

using namespace polykernel;

namespace {

UTerm U(const std::string& s) { return parse_untyped(s); }

const UTerm K = UTerm::lam("x", UTerm::lam("y", UTerm::var(1)));
const UTerm Ks = UTerm::lam("x", UTerm::lam("y", UTerm::var(0)));
const UTerm I = UTerm::lam("b", UTerm::var(0));
// λb. b K* K
const UTerm N = UTerm::lam("b", UTerm::app(UTerm::var(0), {Ks, K}));

// λk. k a b c
UTerm triple(const UTerm& a, const UTerm& b, const UTerm& c) {
  return UTerm::lam("k", UTerm::app(UTerm::var(0), {ushift(a, 1), ushift(b, 1),
                                                    ushift(c, 1)}));
}

UTerm erased(const std::string& term) {
  return erase(Corpus::standard().env(), {}, parse_term(term));
}

UTerm nf(const UTerm& t, const WecaConfig& cfg) {
  auto n = normalize(t, cfg);
  REQUIRE(n);
  return n->term;
}

}  // namespace

TEST_CASE("untyped syntax") {
  CHECK(U("λx y. x") == K);
  CHECK(U("λa b. a") == K);
  CHECK(print(Ks) == "λx y. y");
  CHECK(U("x").as<UFree>());
  CHECK(U("refl").as<UConst>());
  CHECK(U("λx. x y").closed());
  CHECK(free_names(U("λx. x y z")) == std::set<std::string>{"y", "z"});
  CHECK(U(print(N)) == N);
  CHECK(K.size() == 3);
}

TEST_CASE("erasure") {
  const Environment& env = Corpus::standard().env();
  CHECK(erase(env, {}, parse_term("λα:*. λx:α. x")) == U("λx. x"));
  CHECK(nf(erased("s1"), WecaConfig::betaeta()) == triple(K, N, N));
  CHECK(nf(erased("s2"), WecaConfig::betaeta()) == triple(Ks, I, N));
  CHECK(nf(erased("succ O"), WecaConfig::beta()) == U("λx f. f x"));
  // context variables become free names unless valued
  auto ctx = make_context({{"n", "nat"}});
  CHECK(erase(env, ctx, parse_term("n", {"n"})) == UTerm::free("n"));
  CHECK(erase(env, ctx, parse_term("n", {"n"}), {{"n", K}}) == K);
  // identity formers become constants
  CHECK(nf(erased("J_on_refl"), WecaConfig::lambda_id()) == U("refl"));
  CHECK(nf(erased("sig_fst"), WecaConfig::lambda_id()) == nf(erased("O"), WecaConfig::beta()));
}

TEST_CASE("rules") {
  WecaConfig id = WecaConfig::lambda_id();
  CHECK(*step(U("J c a a refl"), id) == U("c a"));
  CHECK(*step(U("refl q"), id) == U("refl"));
  CHECK(*step(U("π1 (pair a b)"), id) == U("a"));
  CHECK(*step(U("π2 (pair a b)"), id) == U("b"));
  CHECK(*step(U("π1 refl"), id) == U("refl"));
  CHECK_FALSE(step(U("J c a b q"), id));

  std::set<std::string> consts = default_constants();
  consts.insert("c");
  WecaConfig lc = WecaConfig::lambda_c({"c"});
  CHECK(*step(parse_untyped("c (λx. x x)", consts), lc) == parse_untyped("c", consts));
  CHECK_FALSE(step(U("refl q"), WecaConfig::beta()));
  CHECK(*step(U("λx. f x"), WecaConfig::betaeta()) == U("f"));
  CHECK_FALSE(step(U("λx. f x"), WecaConfig::beta()));
  CHECK_FALSE(step(U("λx. x x"), WecaConfig::betaeta()));
}

TEST_CASE("normalization") {
  WecaConfig b = WecaConfig::beta();
  CHECK(nf(UTerm::app(N, UTerm::app(N, K)), b) == K);
  CHECK(nf(UTerm::app(N, K), b) == Ks);
  UTerm omega = U("(λx. x x) (λx. x x)");
  CHECK_FALSE(normalize(omega, b.with_fuel(500)));
  // leftmost-outermost finds the normal form past a diverging argument
  CHECK(nf(UTerm::app(K, {I, omega}), b) == I);
  auto n = normalize(U("(λx. x) ((λx. x) y)"), b);
  REQUIRE(n);
  CHECK(n->steps == 2);
  CHECK(is_normal(n->term, b));
  CHECK(count_redexes(U("(λx. x) ((λx. x) y)"), b) == 2);
  // the one-point carrier
  WecaConfig one = WecaConfig::one();
  CHECK(weca_eq(K, Ks, one) == Verdict::Yes);
  CHECK(is_normal(omega, one));
}

TEST_CASE("head normal forms") {
  WecaConfig b = WecaConfig::beta();
  UTerm omega = U("(λx. x x) (λx. x x)");
  auto h = head_normalize(UTerm::app(U("λx. y x"), omega), b);
  REQUIRE(h);
  CHECK(uspine(*h).first == UTerm::free("y"));
  CHECK_FALSE(head_normalize(omega, b.with_fuel(200)));
}

TEST_CASE("equality") {
  WecaConfig b = WecaConfig::beta(), be = WecaConfig::betaeta();
  CHECK(weca_eq(erased("s1"), erased("s2"), be) == Verdict::No);
  CHECK(weca_eq(erased("tl (tl s1)"), erased("s1"), b) == Verdict::Yes);
  CHECK(weca_eq(erased("tl s1"), erased("s1"), b) == Verdict::No);
  CHECK(weca_eq(U("x"), U("y"), b) == Verdict::No);
  CHECK(weca_eq(K, Ks, b) == Verdict::No);
  CHECK(weca_eq(U("λx. f x"), U("f"), be) == Verdict::Yes);
  CHECK(weca_eq(U("λx. f x"), U("f"), b) == Verdict::No);
  UTerm omega = U("(λx. x x) (λx. x x)");
  CHECK(weca_eq(omega, K, b.with_fuel(300)) == Verdict::Unknown);
}

TEST_CASE("config names") {
  for (std::string n : {"beta", "betaeta", "lambda-c", "lambda-id", "one"})
    CHECK(WecaConfig::from_name(n).name == n);
  CHECK_THROWS_AS(WecaConfig::from_name("sk"), std::invalid_argument);
}

namespace {

UTerm random_uterm(std::mt19937_64& rng, std::size_t depth, int budget,
                   const std::vector<std::string>& consts) {
  int top = budget <= 0 ? 2 : 6;
  switch (std::uniform_int_distribution<int>(0, top)(rng)) {
    case 0:
    case 1:
      if (depth && rng() % 4) return UTerm::var(rng() % depth);
      if (!consts.empty() && rng() % 2) return UTerm::constant(consts[rng() % consts.size()]);
      return UTerm::free(rng() % 2 ? "a" : "b");
    case 2:
    case 3:
      return UTerm::lam("x", random_uterm(rng, depth + 1, budget - 1, consts));
    default:
      return UTerm::app(random_uterm(rng, depth, budget - 1, consts),
                        random_uterm(rng, depth, budget - 1, consts));
  }
}

struct Fuzz {
  std::size_t terms = 0;
  std::size_t compared = 0;
  std::size_t violations = 0;
  std::size_t branching = 0;  // terms offering a choice of redex
};

Fuzz confluence_fuzz(const WecaConfig& cfg, std::vector<std::string> consts,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::mt19937_64 s1(seed + 1), s2(seed + 2);
  WecaConfig c = cfg.with_fuel(2000);
  c.size_cap = 20000;
  Fuzz f;
  while (f.terms < 1200) {
    UTerm t = random_uterm(rng, 0, 7, consts);
    if (t.size() > 30) continue;
    ++f.terms;
    if (count_redexes(t, c) >= 2) ++f.branching;
    auto a = normalize_random(t, c, s1);
    auto b = normalize_random(t, c, s2);
    if (!a || !b) continue;
    ++f.compared;
    if (!(a->term == b->term)) ++f.violations;
  }
  return f;
}

}  // namespace

TEST_CASE("random strategies agree") {
  struct Case {
    WecaConfig cfg;
    std::vector<std::string> consts;
  };
  std::vector<Case> cases = {
      {WecaConfig::beta(), {}},
      {WecaConfig::betaeta(), {}},
      {WecaConfig::lambda_c({"c"}), {"c"}},
      {WecaConfig::lambda_id(), {"J", "refl", "pair", "π1", "π2"}},
      {WecaConfig::one(), {}},
  };
  std::uint64_t seed = 11;
  for (const auto& c : cases) {
    Fuzz f = confluence_fuzz(c.cfg, c.consts, seed += 10);
    INFO(c.cfg.name);
    CHECK(f.terms >= 1000);
    CHECK(f.compared > 500);
    CHECK(f.violations == 0);
    if (!c.cfg.degenerate) CHECK(f.branching > 100);
  }
}
