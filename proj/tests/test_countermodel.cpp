#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "polykernel/countermodel.hpp"

using namespace polykernel;
using nlohmann::json;

namespace {

UTerm U(const std::string& s) { return parse_untyped(s); }

CheckOptions with(Overrides o) {
  CheckOptions c;
  c.overrides = std::move(o);
  return c;
}

bool mentions(const Report& r, const std::string& text) {
  for (const auto& t : r.transcript)
    if (t.find(text) != std::string::npos) return true;
  for (const auto& o : r.obligations)
    if (o.actual.find(text) != std::string::npos) return true;
  return false;
}

std::set<UTerm> as_set(const std::vector<UTerm>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("stream coinduction") {
  Report r = check_stream_coinduction();
  CHECK(r.status == Status::Reproduced);
  CHECK(mentions(r, "λk. k K N N"));
  CHECK(mentions(r, "λk. k K* I N"));

  Report same = check_stream_coinduction(with({{"s2", "s1"}}));
  CHECK(same.status == Status::Failed);

  CheckOptions dry;
  dry.fuel = 1;
  CHECK(check_stream_coinduction(dry).status == Status::Unknown);

  CheckOptions syn;
  syn.syntactic = true;
  CHECK(check_stream_coinduction(syn).status == Status::Reproduced);
}

TEST_CASE("parametric quotient") {
  CHECK(check_parametric_quotient().status == Status::Reproduced);
  CheckOptions beta;
  beta.weca = "beta";
  CHECK(check_parametric_quotient(beta).status == Status::Reproduced);
  CHECK(check_parametric_quotient(with({{"quot_f", "λb:bool. true"}})).status ==
        Status::Failed);
}

TEST_CASE("uniqueness of identity proofs") {
  Report r = check_uip();
  CHECK(r.status == Status::Reproduced);
  // O = O, true = false and x = x
  CHECK(mentions(r, "{refl}"));
  CHECK(mentions(r, "distinct normal forms"));
  CHECK(check_uip(with({{"Eq_nat", "λx y:nat. leib_nat x y"}})).status == Status::Failed);
}

TEST_CASE("function extensionality fails") {
  Report r = check_funext_fails();
  CHECK(r.status == Status::Reproduced);
  CHECK(check_funext_fails(with({{"g_pt", "f_pt"}})).status == Status::Failed);
  CHECK(check_funext_fails(with({{"g_pt", "λb:bool. b bool true false"}})).status ==
        Status::Failed);
}

TEST_CASE("no induction") {
  Certificate cert = default_induction_certificate();
  Report r = check_no_induction(cert);
  CHECK(r.status == Status::Reproduced);
  bool refl_in_nat = false;
  for (const auto& o : r.obligations)
    if (o.what == "refl ∈ ⟦nat⟧" && o.actual == "Yes") refl_in_nat = true;
  CHECK(refl_in_nat);
  CHECK(std::any_of(r.obligations.begin(), r.obligations.end(),
                    [](const Obligation& o) { return o.sampled; }));

  Certificate pi = cert;
  pi.model = "pi";
  CHECK(run_certificate(pi).status == Status::Failed);

  Certificate full = cert;
  for (auto& w : full.witnesses) w.family = "FullSet";
  CHECK_THROWS_AS(run_certificate(full), ImproperCertificate);

  Certificate weird = cert;
  weird.witnesses[0].family = "AnyCode";
  CHECK_THROWS_AS(run_certificate(weird), ImproperCertificate);

  Overrides mutated = {{"ind_nat", "ΠP:nat → *. P O → (Πy:nat. P y → P (succ y)) → P O"}};
  CHECK(check_no_induction(cert, with(mutated)).status == Status::Failed);

  CHECK_THROWS_AS(parse_certificate(json{{"model", "generated"}}), ImproperCertificate);
  CHECK_THROWS_AS(load_certificate("/nonexistent.json"), ImproperCertificate);
}

TEST_CASE("consistency and soundness spot checks") {
  CHECK(check_pi_consistency().status == Status::Reproduced);
  Report s = check_soundness_spot();
  CHECK(s.status == Status::Reproduced);
  CHECK_FALSE(s.obligations.empty());
}

TEST_CASE("enumeration") {
  Semantics s(Corpus::standard().env(), PolysetStructure::generated_refl());
  Polyset b = s.interp_type({}, parse_term("bool"));
  Enumeration e = enumerate_members(s, b, 9);
  std::set<UTerm> five = {U("λx y. x"), U("λx y. y"), U("refl"), U("λx. refl"),
                          U("λx y. refl")};
  CHECK(as_set(e.members) == five);
  CHECK(e.unknown.empty());
  CHECK(enumerate_members(s, Polyset::empty(), 9).members.empty());

  Polyset nat = s.interp_type({}, parse_term("nat"));
  Enumeration n = enumerate_members(s, nat, 9);
  std::set<UTerm> got = as_set(n.members);
  std::set<UTerm> numerals = {U("λx f. x"), U("λx f. f x"), U("λx f. f (f x)"),
                              U("λx f. f (f (f x))")};
  for (const auto& k : numerals) CHECK(got.count(k) == 1);
  CHECK(got.count(U("refl")) == 1);
  // everything else is a refl variant
  for (const auto& m : n.members)
    if (!numerals.count(m)) CHECK(print(m).find("refl") != std::string::npos);

  Enumeration small = enumerate_members(s, nat, 7);
  for (const auto& m : small.members) CHECK(got.count(m) == 1);
}

TEST_CASE("normal terms are enumerated once each") {
  auto terms = enumerate_normal_terms(5, WecaConfig::beta(), {});
  std::set<UTerm> seen(terms.begin(), terms.end());
  CHECK(seen.size() == terms.size());
  for (const auto& t : terms) {
    CHECK(t.closed());
    CHECK(is_normal(t, WecaConfig::beta()));
    CHECK(t.size() <= 5);
  }
  // λx.x, λx y.x and λx y.y
  CHECK(std::count_if(terms.begin(), terms.end(),
                      [](const UTerm& t) { return t.size() <= 3; }) == 3);
}

TEST_CASE("suite") {
  auto reports = run_suite(default_manifest());
  REQUIRE(reports.size() == suite_check_ids().size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].id == suite_check_ids()[i]);
    CHECK(reports[i].as_expected());
  }
  CHECK_THROWS_AS(run_suite(json{{"checks", {"nope"}}}), ManifestError);
  CHECK_THROWS_AS(run_suite(json::array()), ManifestError);

  auto starved = run_suite(json{{"fuel", 10}, {"checks", {"stream-coinduction"}}});
  REQUIRE(starved.size() == 1);
  CHECK(starved[0].status == Status::Unknown);
  CHECK_FALSE(starved[0].as_expected());

  json expect_fail = {{"checks", {{{"id", "stream-coinduction"},
                                   {"overrides", {{"s2", "s1"}}},
                                   {"expect", "Failed"}}}}};
  auto f = run_suite(expect_fail);
  CHECK(f[0].status == Status::Failed);
  CHECK(f[0].as_expected());
}

TEST_CASE("reports") {
  Report r = check_uip();
  json j = r.to_json();
  for (auto key : {"id", "status", "obligations", "flags", "millis"}) CHECK(j.contains(key));
  CHECK(j["obligations"][0].contains("what"));
  CHECK(r.to_text().find("uip: Reproduced") == 0);

  // obligations re-derive the same primitive answers when run again
  Report again = check_uip();
  REQUIRE(again.obligations.size() == r.obligations.size());
  for (std::size_t i = 0; i < r.obligations.size(); ++i)
    CHECK(again.obligations[i].actual == r.obligations[i].actual);

  Report x;
  x.add("a", "Yes", "Yes", Verdict::Yes);
  x.add("b", "Yes", "Unknown", Verdict::Unknown);
  x.settle();
  CHECK(x.status == Status::Unknown);
  x.add("c", "Yes", "No", Verdict::No);
  x.settle();
  CHECK(x.status == Status::Failed);
  CHECK(status_from_string("Reproduced") == Status::Reproduced);
  CHECK_THROWS(status_from_string("Maybe"));
}
