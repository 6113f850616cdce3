// Runs the acceptance criteria end to end, one line per criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "polykernel/countermodel.hpp"
#include "polykernel/model.hpp"
#include "polykernel/stdlib.hpp"
#include "polykernel/weca.hpp"

using namespace polykernel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Each criterion returns an empty string on success, else what went wrong.
struct Criterion {
  std::string title;
  std::function<std::string()> run;
};

UTerm U(const std::string& s) { return parse_untyped(s); }

const UTerm K = UTerm::lam("x", UTerm::lam("y", UTerm::var(1)));
const UTerm Ks = UTerm::lam("x", UTerm::lam("y", UTerm::var(0)));
const UTerm I = UTerm::lam("b", UTerm::var(0));
const UTerm N = UTerm::lam("b", UTerm::app(UTerm::var(0), {Ks, K}));

UTerm triple(const UTerm& a, const UTerm& b, const UTerm& c) {
  return UTerm::lam("k", UTerm::app(UTerm::var(0), {ushift(a, 1), ushift(b, 1),
                                                    ushift(c, 1)}));
}

const Environment& env() { return Corpus::standard().env(); }

std::optional<UTerm> nf_of(const std::string& term, const WecaConfig& cfg) {
  auto n = normalize(erase(env(), {}, parse_term(term)), cfg);
  if (!n) return std::nullopt;
  return n->term;
}

std::string expect_status(const Report& r, Status s) {
  if (r.status == s) return {};
  return r.id + " reported " + to_string(r.status) + ", wanted " + to_string(s);
}

// 1 -------------------------------------------------------------------------

std::string corpus_soundness() {
  auto start = Clock::now();
  Corpus c = Corpus::with_overrides({});
  for (const auto& name : c.names()) {
    CorpusEntry e = c.get(name);
    TypeChecker k(c.env(), e.flags);
    try {
      k.check({}, e.body, e.type);
    } catch (const TypeError& err) {
      return name + ": " + err.what();
    }
  }
  double s = seconds_since(start);
  if (s >= 5) return "took " + std::to_string(s) + " s";
  return {};
}

// 2 -------------------------------------------------------------------------

std::string computation_laws() {
  TypeChecker k(env(), ExtensionFlags::all());
  auto ctx = make_context({{"τ", "*"}, {"h", "τ → bool"}, {"t", "τ → τ"}, {"x", "τ"}});
  auto sc = ctx.names();
  struct Law {
    Context ctx;
    std::string lhs, rhs;
    std::vector<std::string> scope;
  };
  std::vector<Law> laws = {
      {ctx, "hd (corec_s τ h t x)", "h x", sc},
      {ctx, "tl (corec_s τ h t x)", "corec_s τ h t (t x)", sc},
      {make_context({{"x", "bool"}}), "fhat (cls x)", "quot_f x", {"x"}},
  };
  for (const auto& l : laws) {
    Term a = parse_term(l.lhs, l.scope), b = parse_term(l.rhs, l.scope);
    if (!k.convertible(l.ctx, a, b)) return l.lhs + " is not convertible to " + l.rhs;
    // exact: the two sides share one normal form
    if (k.normalize(a) != k.normalize(b)) return l.lhs + ": normal forms differ";
  }
  return {};
}

// 3 -------------------------------------------------------------------------

std::string stream_coinduction() {
  WecaConfig be = WecaConfig::betaeta();
  auto a = nf_of("s1", be), b = nf_of("s2", be);
  if (!a || !b) return "no normal form";
  if (*a != triple(K, N, N)) return "erase(s1) ↦ " + print(*a);
  if (*b != triple(Ks, I, N)) return "erase(s2) ↦ " + print(*b);
  TypeChecker k(env(), {});
  for (auto [l, r] : std::vector<std::pair<const char*, const char*>>{
           {"hd s1", "hd s2"},
           {"hd (tl s1)", "hd (tl s2)"},
           {"tl (tl s1)", "s1"},
           {"tl (tl s2)", "s2"}})
    if (!k.convertible({}, parse_term(l), parse_term(r)))
      return std::string(l) + " ≠β " + r;
  return expect_status(check_stream_coinduction(), Status::Reproduced);
}

// 4 -------------------------------------------------------------------------

std::string parametric_quotient() {
  WecaConfig be = WecaConfig::betaeta();
  auto t = nf_of("fhat (cls true)", be), f = nf_of("fhat (cls false)", be);
  if (!t || *t != K) return "fhat (cls true) does not normalize to K";
  if (!f || *f != Ks) return "fhat (cls false) does not normalize to K*";
  if (weca_eq(K, Ks, be) != Verdict::No) return "K = K* not refuted";
  return expect_status(check_parametric_quotient(), Status::Reproduced);
}

// 5 -------------------------------------------------------------------------

std::string pi_exactness() {
  auto decide = [](const Term& t) { return pi_model_decide(env(), {}, t); };
  if (decide(parse_term("Πα:*. α")) != PIVerdict::Empty) return "Πα:*. α not Empty";
  for (auto name : {"nat", "bool", "ind_nat"})
    if (decide(parse_term(name)) != PIVerdict::Inhabited)
      return std::string(name) + " not Inhabited";
  TypeChecker k(env(), ExtensionFlags::all());
  std::size_t judged = 0;
  for (const auto& name : Corpus::standard().names()) {
    CorpusEntry e = Corpus::standard().get(name);
    if (k.classify({}, e.type) != SortClass::ConstructorExpr) continue;
    if (decide(e.type) != PIVerdict::Inhabited) return "type of " + name + " is Empty";
    ++judged;
  }
  if (judged == 0) return "no judgments";
  return expect_status(check_soundness_spot(), Status::Reproduced);
}

// 6 -------------------------------------------------------------------------

std::string identity_model_checks() {
  if (auto e = expect_status(check_uip(), Status::Reproduced); !e.empty()) return e;

  Semantics s(env(), PolysetStructure::generated_refl());
  Polyset oo = s.interp_type({}, parse_term("Id(nat, O, O)"));
  Enumeration en = enumerate_members(s, oo, 9);
  if (en.members != std::vector<UTerm>{U("refl")})
    return "closed members of ⟦Id(nat, O, O)⟧ are not just refl";

  // part (1): refl ∈ ⟦f b = g b⟧ for each of the five elements
  auto ctx = make_context({{"b", "bool"}});
  Term pointwise = parse_term("Id(bool, f_pt b, g_pt b)", {"b"});
  for (auto e : {"λx y. x", "λx y. y", "refl", "λx. refl", "λx y. refl"}) {
    Valuation v;
    v.rho["b"] = U(e);
    Polyset X = s.interp_type(ctx, pointwise, v);
    if (s.member(U("refl"), X) != Verdict::Yes)
      return std::string("refl ∉ ⟦f b = g b⟧ at b = ") + e;
  }
  // part (2)
  if (s.is_empty(s.interp_type({}, parse_term("funext_fg"))).empty != Verdict::Yes)
    return "⟦f = g⟧ not shown empty";
  if (auto e = expect_status(check_funext_fails(), Status::Reproduced); !e.empty()) return e;

  if (s.member(U("refl"), s.interp_type({}, parse_term("nat"))) != Verdict::Yes)
    return "refl ∉ ⟦nat⟧";
  return expect_status(check_no_induction(default_induction_certificate()),
                       Status::Reproduced);
}

// 7 -------------------------------------------------------------------------

std::string bool_enumeration() {
  auto start = Clock::now();
  Semantics s(env(), PolysetStructure::generated_refl());
  Enumeration e = enumerate_members(s, s.interp_type({}, parse_term("bool")), 9);
  std::set<UTerm> got(e.members.begin(), e.members.end());
  std::set<UTerm> five = {K, Ks, U("refl"), U("λx. refl"), U("λx y. refl")};
  if (got != five) {
    std::string list;
    for (const auto& t : got) list += " " + print(t);
    return "members:" + list;
  }
  if (!e.unknown.empty())
    return std::to_string(e.unknown.size()) + " undecided, first " + print(e.unknown[0]);
  double secs = seconds_since(start);
  if (secs >= 60) return "took " + std::to_string(secs) + " s";
  return {};
}

// 8 -------------------------------------------------------------------------

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

std::string confluence() {
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
  std::uint64_t seed = 2024;
  for (const auto& c : cases) {
    std::mt19937_64 gen(++seed), s1(seed * 31), s2(seed * 37);
    WecaConfig cfg = c.cfg.with_fuel(2000);
    cfg.size_cap = 20000;
    std::size_t both = 0;
    for (int i = 0; i < 1500;) {
      UTerm t = random_uterm(gen, 0, 7, c.consts);
      if (t.size() > 30) continue;
      ++i;
      auto a = normalize_random(t, cfg, s1), b = normalize_random(t, cfg, s2);
      if (!a || !b) continue;
      ++both;
      if (a->term != b->term)
        return c.cfg.name + ": " + print(t) + " ↦ " + print(a->term) + " and " +
               print(b->term);
    }
    if (both < 750) return c.cfg.name + ": only " + std::to_string(both) + " terms normalized";
  }
  return {};
}

// 9 -------------------------------------------------------------------------

std::string subject_reduction() {
  TypeChecker k(env(), ExtensionFlags::all());
  std::size_t n = 0;
  for (const auto& name : Corpus::standard().names()) {
    CorpusEntry e = Corpus::standard().get(name);
    std::vector<Term> terms = {e.body};
    for (const Term& r : k.one_step_reducts(e.body)) terms.push_back(r);
    for (const Term& t : terms) {
      try {
        k.check({}, t, e.type);
        ++n;
      } catch (const TypeError& err) {
        return name + ": " + print(t) + ": " + err.what();
      }
    }
  }
  if (n == 0) return "nothing checked";
  return {};
}

// 10 ------------------------------------------------------------------------

std::string mutation_guard() {
  auto with = [](Overrides o) {
    CheckOptions c;
    c.overrides = std::move(o);
    return c;
  };
  std::vector<Report> reports = {
      check_stream_coinduction(with({{"s2", "s1"}})),
      check_parametric_quotient(with({{"quot_f", "λb:bool. true"}})),
      check_uip(with({{"Eq_nat", "λx y:nat. leib_nat x y"}})),
      check_funext_fails(with({{"g_pt", "f_pt"}})),
      check_no_induction(default_induction_certificate(),
                         with({{"ind_nat",
                                "ΠP:nat → *. P O → (Πy:nat. P y → P (succ y)) → P O"}})),
  };
  for (const auto& r : reports)
    if (auto e = expect_status(r, Status::Failed); !e.empty()) return e;
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"corpus typechecks under its flags in under 5 s", corpus_soundness},
      {"stream and quotient computation laws hold by conversion", computation_laws},
      {"s1 and s2 are bisimilar but not equal", stream_coinduction},
      {"the parametric quotient separates K and K*", parametric_quotient},
      {"the proof-irrelevance model decides exactly", pi_exactness},
      {"UIP holds, FunExt and induction fail in Generated({refl})", identity_model_checks},
      {"closed members of bool are the five expected terms", bool_enumeration},
      {"random reduction strategies reach the same normal form", confluence},
      {"one-step reducts of corpus terms keep their types", subject_reduction},
      {"every check fails under its corpus mutation", mutation_guard},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    std::string problem;
    try {
      problem = criteria[i].run();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    std::ostringstream line;
    line << (problem.empty() ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].title;
    line.precision(2);
    line << std::fixed << " (" << seconds_since(start) << " s)";
    if (!problem.empty()) line << ": " << problem;
    std::cout << line.str() << std::endl;
    if (!problem.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
