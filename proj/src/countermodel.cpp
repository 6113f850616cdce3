#include "polykernel/countermodel.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace polykernel {

std::string to_string(Status s) {
  switch (s) {
    case Status::Reproduced: return "Reproduced";
    case Status::Failed: return "Failed";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "Reproduced") return Status::Reproduced;
  if (s == "Failed") return Status::Failed;
  if (s == "Unknown") return Status::Unknown;
  throw std::invalid_argument("unknown status '" + s + "'");
}

Obligation& Report::add(std::string what, std::string expected,
                        std::string actual, Verdict met, bool sampled) {
  obligations.push_back(
      {std::move(what), std::move(expected), std::move(actual), met, sampled});
  if (sampled) {
    const std::string flag = "sample-verified: " + obligations.back().what;
    flags.push_back(flag);
  }
  return obligations.back();
}

void Report::settle() {
  status = Status::Reproduced;
  for (const auto& o : obligations) {
    if (o.met == Verdict::No) {
      status = Status::Failed;
      return;
    }
    if (o.met == Verdict::Unknown) status = Status::Unknown;
  }
}

nlohmann::json Report::to_json() const {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : obligations)
    obs.push_back({{"what", o.what},
                   {"expected", o.expected},
                   {"actual", o.actual},
                   {"met", polykernel::to_string(o.met)},
                   {"sampled", o.sampled}});
  return {{"id", id},           {"status", polykernel::to_string(status)},
          {"obligations", obs}, {"flags", flags},
          {"millis", millis},   {"expected", polykernel::to_string(expected)}};
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << id << ": " << polykernel::to_string(status);
  if (!as_expected()) out << " (expected " << polykernel::to_string(expected) << ")";
  out << "  [" << static_cast<long>(millis) << " ms]\n";
  for (const auto& o : obligations) {
    const char* mark = o.met == Verdict::Yes ? "ok" : o.met == Verdict::No ? "FAIL" : "??";
    out << "  " << mark << "  " << o.what << ": " << o.actual;
    if (o.met != Verdict::Yes) out << " (expected " << o.expected << ")";
    if (o.sampled) out << " [sampled]";
    out << "\n";
  }
  for (const auto& t : transcript) out << "  | " << t << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

std::set<std::string> identity_constants() {
  return {uconst::kPair, uconst::kProj1, uconst::kProj2, uconst::kJ,
          uconst::kRefl};
}

namespace {

class NormalTermGenerator {
 public:
  NormalTermGenerator(const WecaConfig& cfg, const std::set<std::string>& c)
      : cfg_(cfg), constants_(c.begin(), c.end()) {}

  const std::vector<UTerm>& terms(std::size_t size, std::size_t depth) {
    auto key = std::make_pair(size, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<UTerm> out;
    if (size == 1) {
      for (std::size_t i = 0; i < depth; ++i) out.push_back(UTerm::var(i));
      for (const auto& c : constants_) out.push_back(UTerm::constant(c));
    } else if (size >= 2) {
      for (const auto& b : terms(size - 1, depth + 1)) keep(out, UTerm::lam("", b));
      for (std::size_t k = 1; k + 1 < size; ++k) {
        const auto& fs = terms(k, depth);
        const auto& as = terms(size - 1 - k, depth);
        for (const auto& f : fs)
          for (const auto& a : as) keep(out, UTerm::app(f, a));
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const WecaConfig& cfg_;
  std::vector<std::string> constants_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<UTerm>> memo_;

  // Children are normal already, so only the root can be a redex.
  void keep(std::vector<UTerm>& out, UTerm t) {
    if (!step(t, cfg_)) out.push_back(std::move(t));
  }
};

}  // namespace

std::vector<UTerm> enumerate_normal_terms(
    std::size_t size_bound, const WecaConfig& cfg,
    const std::set<std::string>& constants) {
  NormalTermGenerator gen(cfg, constants);
  std::vector<UTerm> out;
  for (std::size_t n = 1; n <= size_bound; ++n) {
    const auto& ts = gen.terms(n, 0);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

Enumeration enumerate_members(Semantics& s, const Polyset& X,
                              std::size_t size_bound) {
  Enumeration out;
  if (X.as<PEmpty>()) return out;
  std::set<std::string> constants;
  for (const auto& c : s.structure().core)
    if (auto k = c.as<UConst>()) constants.insert(k->name);
  if (s.structure().weca.has(Rule::JIota)) constants = identity_constants();
  for (const auto& t :
       enumerate_normal_terms(size_bound, s.structure().weca, constants)) {
    Verdict v = s.member(t, X);
    if (v == Verdict::Yes) out.members.push_back(t);
    else if (v == Verdict::Unknown) out.unknown.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Corpus load_corpus(const Overrides& o) {
  return o.empty() ? Corpus::standard() : Corpus::with_overrides(o);
}

Verdict expect_yes(Verdict v) { return v; }
Verdict expect_no(Verdict v) { return negate(v); }

// Prints a term with well-known closed subterms replaced by their names.
std::string abbreviate(const UTerm& t) {
  static const std::vector<std::pair<std::string, UTerm>> names = {
      {"K", parse_untyped("λx y. x")},
      {"K*", parse_untyped("λx y. y")},
      {"I", parse_untyped("λx. x")},
      {"N", parse_untyped("λb. b (λx y. y) (λx y. x)")},
  };
  std::function<UTerm(const UTerm&)> go = [&](const UTerm& u) -> UTerm {
    if (u.closed())
      for (const auto& [n, v] : names)
        if (u == v) return UTerm::constant(n);
    if (auto l = u.as<ULam>()) return UTerm::lam(l->hint, go(l->body));
    if (auto a = u.as<UApp>()) return UTerm::app(go(a->fun), go(a->arg));
    return u;
  };
  return print(go(t));
}

struct Erasing {
  const Corpus& corpus;
  UTerm operator()(const std::string& src, const Context& ctx = {}) const {
    return erase(corpus.env(), ctx, parse_term(src, ctx.names()));
  }
};

std::string nf_text(const UTerm& t, const WecaConfig& cfg) {
  auto n = normalize(t, cfg);
  return n ? abbreviate(n->term) : "(no normal form within fuel)";
}

}  // namespace

Report check_stream_coinduction(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "stream-coinduction";
  Corpus c = load_corpus(o.overrides);
  TypeChecker tc(c.env(), ExtensionFlags::all(), o.fuel);
  const std::vector<std::pair<std::string, std::string>> facts = {
      {"hd s1", "hd s2"},
      {"hd (tl s1)", "hd (tl s2)"},
      {"tl (tl s1)", "s1"},
      {"tl (tl s2)", "s2"}};
  for (const auto& [lhs, rhs] : facts) {
    std::string what = lhs + " =β " + rhs;
    try {
      bool ok = tc.convertible({}, parse_term(lhs), parse_term(rhs));
      r.add(what, "convertible", ok ? "convertible" : "not convertible",
            ok ? Verdict::Yes : Verdict::No);
    } catch (const TypeError& e) {
      r.add(what, "convertible", e.what(), Verdict::Unknown);
    }
  }
  if (o.syntactic) {
    // Typed normal forms only, no model involved.
    try {
      Term a = tc.normalize(parse_term("s1")), b = tc.normalize(parse_term("s2"));
      r.transcript.push_back("s1 ↦ " + print(a));
      r.transcript.push_back("s2 ↦ " + print(b));
      bool same = a == b;
      r.add("typed normal forms of s1, s2", "distinct",
            same ? "identical" : "distinct", same ? Verdict::No : Verdict::Yes);
    } catch (const TypeError& e) {
      r.add("typed normal forms of s1, s2", "distinct", e.what(),
            Verdict::Unknown);
    }
  } else {
    WecaConfig cfg = WecaConfig::from_name(o.weca).with_fuel(o.fuel);
    Erasing er{c};
    auto a = normalize(er("s1"), cfg), b = normalize(er("s2"), cfg);
    const std::string what = "normal forms of erase(s1), erase(s2) in " + cfg.name;
    if (!a || !b) {
      r.add(what, "distinct", "fuel exhausted", Verdict::Unknown);
    } else {
      r.transcript.push_back("erase(s1) ↦ " + abbreviate(a->term));
      r.transcript.push_back("erase(s2) ↦ " + abbreviate(b->term));
      r.transcript.push_back("N = λb. b K* K");
      bool same = a->term == b->term;
      r.add(what, "distinct", same ? "identical" : "distinct",
            same ? Verdict::No : Verdict::Yes);
    }
  }
  r.settle();
  r.millis = timer.millis();
  return r;
}

Report check_parametric_quotient(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "parametric-quotient";
  Corpus c = load_corpus(o.overrides);
  WecaConfig cfg = WecaConfig::from_name(o.weca).with_fuel(o.fuel);
  Erasing er{c};
  const UTerm K = parse_untyped("λx y. x"), Ks = parse_untyped("λx y. y");
  const UTerm lt = er("fhat (cls true)"), lf = er("fhat (cls false)");
  r.transcript.push_back("erase(fhat (cls true)) ↦ " + nf_text(lt, cfg));
  r.transcript.push_back("erase(fhat (cls false)) ↦ " + nf_text(lf, cfg));
  Verdict a = weca_eq(lt, K, cfg), b = weca_eq(lf, Ks, cfg), d = weca_eq(K, Ks, cfg);
  r.add("erase(fhat (cls true)) = K", "Yes", to_string(a), expect_yes(a));
  r.add("erase(fhat (cls false)) = K*", "Yes", to_string(b), expect_yes(b));
  r.add("K = K*", "No", to_string(d), expect_no(d));
  r.transcript.push_back(
      "a class map constant on bool would force K = K*; the definable quotient's "
      "cls is tested, not every conceivable one");
  r.settle();
  r.millis = timer.millis();
  return r;
}

Report check_uip(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "uip";
  Corpus c = load_corpus(o.overrides);
  PolysetStructure m = PolysetStructure::generated_refl();
  m.weca = m.weca.with_fuel(o.fuel);
  Semantics s(c.env(), m);
  Erasing er{c};
  const UTerm refl = UTerm::constant(uconst::kRefl);
  const UTerm t = parse_untyped("λx. refl");
  struct Case {
    std::string type, lhs, rhs;
    Context ctx;
  };
  const std::vector<Case> cases = {
      {"Eq_nat", "O", "O", {}},
      {"Eq_bool", "true", "false", {}},
      {"Eq_nat", "x", "x", make_context({{"x", "nat"}})}};
  for (const auto& k : cases) {
    const std::string type = k.type + " " + k.lhs + " " + k.rhs;
    const UTerm a = er(k.lhs, k.ctx), b = er(k.rhs, k.ctx);
    Verdict eq = weca_eq(a, b, m.weca);
    Polyset X = s.interp_type(k.ctx, parse_term(type, k.ctx.names()));
    if (eq == Verdict::Unknown) {
      r.add("⟦" + type + "⟧", "decided", "endpoint equality unknown",
            Verdict::Unknown);
      continue;
    }
    if (eq == Verdict::No) {
      Emptiness e = s.is_empty(X);
      r.add("⟦" + type + "⟧ is empty", "Yes", to_string(e.empty) + ", " + e.evidence,
            expect_yes(e.empty));
      continue;
    }
    Enumeration en = enumerate_members(s, X, o.size_bound);
    std::string found;
    bool only_refl = en.unknown.empty();
    for (const auto& p : en.members) {
      found += (found.empty() ? "" : ", ") + print(p);
      if (p != refl) only_refl = false;
    }
    r.add("closed members of ⟦" + type + "⟧ up to size " +
              std::to_string(o.size_bound),
          "{refl}", "{" + found + "}" +
              (en.unknown.empty() ? "" : " and " + std::to_string(en.unknown.size()) +
                                             " undecided"),
          en.members.empty() ? Verdict::No : only_refl ? Verdict::Yes : Verdict::No);
    // The family C(x, y, p) = A if p is refl, else ∅.
    for (const auto& p : en.members) {
      Polyset Cp = s.member(p, Polyset::pred(PredKind::IsRefl)) == Verdict::Yes
                       ? Polyset::full()
                       : Polyset::empty();
      UTerm j = UTerm::app(UTerm::constant(uconst::kJ), {t, a, b, p});
      Verdict v = s.member(j, Cp);
      r.add("J t a' b' (" + print(p) + ") ∈ C(a', b', " + print(p) + ")", "Yes",
            to_string(v), expect_yes(v));
    }
  }
  r.settle();
  r.millis = timer.millis();
  return r;
}

Report check_funext_fails(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "funext";
  Corpus c = load_corpus(o.overrides);
  PolysetStructure m = PolysetStructure::generated_refl();
  m.weca = m.weca.with_fuel(o.fuel);
  Semantics s(c.env(), m);
  Erasing er{c};

  const std::vector<UTerm> bool_prime = {
      parse_untyped("λx y. x"), parse_untyped("λx y. y"), parse_untyped("refl"),
      parse_untyped("λx. refl"), parse_untyped("λx y. refl")};
  Enumeration en = enumerate_members(s, s.interp_type({}, parse_term("bool")),
                                     o.size_bound);
  std::set<UTerm> got(en.members.begin(), en.members.end());
  std::set<UTerm> want(bool_prime.begin(), bool_prime.end());
  std::string listed;
  for (const auto& t : en.members) listed += (listed.empty() ? "" : ", ") + print(t);
  r.add("closed members of ⟦bool⟧ up to size " + std::to_string(o.size_bound),
        "{K, K*, refl, λx. refl, λx y. refl}", "{" + listed + "}",
        got == want ? Verdict::Yes : Verdict::No);
  r.transcript.push_back(std::to_string(en.unknown.size()) +
                         " enumerated terms left undecided");

  // Pointwise: f b and g b agree on every element of bool'.
  const UTerm f = er("f_pt"), g = er("g_pt");
  const Context ctx = make_context({{"b", "bool"}});
  for (const auto& b : bool_prime) {
    Verdict eq = weca_eq(UTerm::app(f, b), UTerm::app(g, b), m.weca);
    r.add("f' (" + print(b) + ") = g' (" + print(b) + ")", "Yes", to_string(eq),
          expect_yes(eq));
    Valuation v;
    v.rho["b"] = b;
    Polyset X = s.interp_type(ctx, parse_term("Id(bool, f_pt b, g_pt b)", ctx.names()), v);
    Verdict in = s.member(UTerm::constant(uconst::kRefl), X);
    r.add("refl ∈ ⟦Id(bool, f b, g b)⟧ at b = " + print(b), "Yes", to_string(in),
          expect_yes(in));
  }

  // Extensionally: the identity set between f and g is empty.
  r.transcript.push_back("f' ↦ " + nf_text(f, m.weca));
  r.transcript.push_back("g' ↦ " + nf_text(g, m.weca));
  Verdict eq = weca_eq(f, g, m.weca);
  r.add("f' = g'", "No", to_string(eq), expect_no(eq));
  Emptiness e = s.is_empty(s.interp_type({}, parse_term("funext_fg")));
  r.add("⟦funext_fg⟧ is empty", "Yes", to_string(e.empty) + ", " + e.evidence,
        expect_yes(e.empty));
  r.transcript.push_back(
      "witness D(h, h', p) = A when h = h' and p = refl, ∅ otherwise; "
      "refl ∈ D(h, h, refl) so J cannot map into an empty identity set");
  r.settle();
  r.millis = timer.millis();
  return r;
}

// ---------------------------------------------------------------------------

Certificate parse_certificate(const nlohmann::json& j) {
  try {
    Certificate c;
    c.id = j.at("id").get<std::string>();
    c.model = j.value("model", c.model);
    c.weca = j.value("weca", c.weca);
    c.fuel = j.value("fuel", c.fuel);
    c.target = j.at("target").get<std::string>();
    for (const auto& w : j.value("witnesses", nlohmann::json::array())) {
      WitnessSpec spec;
      spec.family = w.at("family").get<std::string>();
      spec.at = w.at("at").get<std::string>();
      spec.terms = w.value("terms", std::vector<std::string>{});
      spec.fuel = w.value("fuel", spec.fuel);
      c.witnesses.push_back(spec);
    }
    c.samples = j.value("samples", std::vector<std::string>{});
    c.steps = j.value("steps", nlohmann::json::array());
    c.expect = status_from_string(j.value("expect", std::string("Reproduced")));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ImproperCertificate(e.what());
  } catch (const std::invalid_argument& e) {
    throw ImproperCertificate(e.what());
  }
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ImproperCertificate("cannot read " + path);
  try {
    return parse_certificate(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ImproperCertificate(e.what());
  }
}

Certificate default_induction_certificate() {
  return parse_certificate(
      nlohmann::json::parse(embedded_file("certificates/no_induction.json")));
}

Polyset witness_set(Semantics& s, const WitnessSpec& w) {
  auto terms = [&] {
    std::set<UTerm> out;
    for (const auto& t : w.terms) {
      UTerm u = parse_untyped(t);
      auto n = normalize(u, s.structure().weca);
      out.insert(n ? n->term : u);
    }
    return out;
  };
  if (w.family == "IsRefl") return Polyset::pred(PredKind::IsRefl);
  if (w.family == "IsChurchNumeral") return Polyset::pred(PredKind::IsChurchNumeral);
  if (w.family == "FullSet") return Polyset::full();
  if (w.family == "EmptySet") return Polyset::empty();
  if (w.family == "FiniteSet")
    return Polyset::finite(terms(),
                           s.structure().kind == StructureKind::Generated);
  if (w.family == "EqualsNormalFormOf") {
    if (w.terms.size() != 1)
      throw ImproperCertificate("EqualsNormalFormOf takes one term");
    return Polyset::pred(PredKind::EqualsNormalFormOf, parse_untyped(w.terms[0]));
  }
  if (w.family == "HasHNF") return Polyset::pred(PredKind::HasHNF);
  throw ImproperCertificate("unknown witness family '" + w.family + "'");
}

namespace {

// A witness over a kind. Over * it is the set itself; over a function
// kind it is the indicator family: full where the predicate holds, empty
// where it fails.
ConValue witness_value(Semantics& s, const WitnessSpec& w, const KindValue& k) {
  Polyset P = witness_set(s, w);
  if (k.collection) return P;
  auto fam = std::make_shared<ConFamily>();
  fam->domain = k.domain;
  Semantics* sp = &s;
  auto kind = k;
  fam->apply = [sp, P, kind](const UTerm& t) -> ConValue {
    if (!kind.codomain(t).collection)
      throw ImproperCertificate("witness families take one argument");
    switch (sp->member(t, P)) {
      case Verdict::Yes: return Polyset::full();
      case Verdict::No: return Polyset::empty();
      case Verdict::Unknown: break;
    }
    return Polyset(POpaque{"undecided"});
  };
  return std::shared_ptr<const ConFamily>(fam);
}

// Checks e ∈ Π_{y∈D} F(y) on the sample elements of D only.
Verdict sampled_member(Semantics& s, const UTerm& e, const PDepProd& p,
                       const std::vector<UTerm>& samples, std::string& note) {
  Verdict acc = Verdict::Yes;
  for (const auto& y : samples) {
    Verdict in = s.member(y, *p.domain);
    if (in == Verdict::No) {
      note += " " + print(y) + ":outside";
      continue;
    }
    Verdict v = in == Verdict::Unknown
                    ? Verdict::Unknown
                    : s.member(UTerm::app(e, y), p.family(y));
    note += " " + print(y) + ":" + to_string(v);
    acc = both(acc, v);
  }
  return acc;
}

void empty_by_family(Report& r, Semantics& s, const Corpus& c,
                     const Certificate& cert, const nlohmann::json& step) {
  const std::string at = step.at("at").get<std::string>();
  auto w = std::find_if(cert.witnesses.begin(), cert.witnesses.end(),
                        [&](const WitnessSpec& x) { return x.at == at; });
  if (w == cert.witnesses.end())
    throw ImproperCertificate("no witness registered at '" + at + "'");
  const Global* g = c.env().find(cert.target);
  if (!g || !g->body) throw ImproperCertificate("unknown target " + cert.target);
  auto pi = g->body->as<PiNode>();
  if (!pi || pi->hint != at)
    throw ImproperCertificate("target does not quantify over '" + at + "' first");

  KindValue kind = s.interp_kind({}, pi->domain);
  ConValue F = witness_value(s, *w, kind);
  const UTerm point = parse_untyped(step.at("point").get<std::string>());
  auto apply = [&](const UTerm& t) {
    if (auto fam = std::get_if<std::shared_ptr<const ConFamily>>(&F))
      return as_polyset((*fam)->apply(t));
    return as_polyset(F);
  };
  if (s.is_empty(apply(point)).empty != Verdict::Yes)
    throw ImproperCertificate(w->family + " has no empty point at " + print(point));
  r.add(w->family + "(" + print(point) + ") is empty", "Yes", "Yes", Verdict::Yes);
  if (step.contains("anchor")) {
    const std::string anchor = step.at("anchor").get<std::string>();
    UTerm a = erase(c.env(), {}, parse_term(anchor));
    bool full = apply(a).as<PFull>() != nullptr;
    r.add(w->family + "(erase(" + anchor + ")) is the full set", "Yes",
          full ? "Yes" : "No", full ? Verdict::Yes : Verdict::No);
  }

  Valuation v;
  v.xi.emplace(at, F);
  Polyset T = s.interp_type(make_context({}).push(at, pi->domain), pi->codomain, v);
  const std::vector<std::pair<std::string, std::string>> chain = {
      {"base", step.at("base").get<std::string>()},
      {"step", step.at("step").get<std::string>()},
      {"point", step.at("point").get<std::string>()}};
  for (const auto& [role, src] : chain) {
    auto p = T.as<PDepProd>();
    if (!p) {
      r.add("target accepts the " + role, "a product", describe(T), Verdict::No);
      return;
    }
    const UTerm e = parse_untyped(src);
    Verdict in = s.member(e, *p->domain);
    bool sampled = false;
    std::string note;
    if (in == Verdict::Unknown) {
      if (auto inner = p->domain->as<PDepProd>()) {
        in = sampled_member(s, e, *inner, s.samples(), note);
        sampled = true;
      }
    }
    r.add(role + " " + src + " ∈ its domain", "Yes",
          to_string(in) + (note.empty() ? "" : " (" + note.substr(1) + ")"),
          in, sampled);
    T = p->family(e);
  }
  Emptiness e = s.is_empty(T);
  r.add("m · base · step · " + print(point) + " lands in an empty set", "Yes",
        to_string(e.empty) + " (" + describe(T) + ")", e.empty);
  if (e.empty == Verdict::Yes)
    r.transcript.push_back("any m ∈ ⟦" + cert.target + "⟧ would give m · base · step · " +
                           print(point) + " ∈ ∅, so ⟦" + cert.target + "⟧ = ∅");
}

}  // namespace

Report run_certificate(const Certificate& cert, const Overrides& overrides) {
  Timer timer;
  Report r;
  r.id = cert.id;
  r.expected = cert.expect;
  Corpus c = load_corpus(overrides);
  if (cert.model == "pi") {
    PIVerdict v = pi_model_decide(c.env(), {}, parse_term(cert.target));
    r.add("⟦" + cert.target + "⟧ in the proof-irrelevance model", "Empty",
          to_string(v), v == PIVerdict::Empty ? Verdict::Yes : Verdict::No);
    r.settle();
    r.millis = timer.millis();
    return r;
  }
  PolysetStructure m = PolysetStructure::from_name(cert.model, cert.weca);
  m.weca = m.weca.with_fuel(cert.fuel);
  Semantics s(c.env(), m);
  std::vector<UTerm> samples;
  for (const auto& t : cert.samples) samples.push_back(parse_untyped(t));
  s.add_samples(samples);
  Erasing er{c};
  for (const auto& step : cert.steps) {
    const std::string kind = step.value("kind", std::string());
    if (kind == "Member") {
      const std::string e = step.at("element").get<std::string>();
      const std::string type = step.at("type").get<std::string>();
      Verdict v = s.member(parse_untyped(e), s.interp_type({}, parse_term(type)));
      r.add(e + " ∈ ⟦" + type + "⟧", "Yes", to_string(v), v);
    } else if (kind == "NormalFormDistinct" || kind == "NormalFormEqual") {
      const std::string a = step.at("lhs").get<std::string>();
      const std::string b = step.at("rhs").get<std::string>();
      Verdict v = weca_eq(er(a), er(b), m.weca);
      const bool distinct = kind == "NormalFormDistinct";
      r.add("erase(" + a + ") " + (distinct ? "≠" : "=") + " erase(" + b + ")",
            distinct ? "No" : "Yes", to_string(v), distinct ? negate(v) : v);
    } else if (kind == "EmptyByIdEndpoints") {
      const std::string type = "Id(" + step.at("type").get<std::string>() + ", " +
                               step.at("lhs").get<std::string>() + ", " +
                               step.at("rhs").get<std::string>() + ")";
      Emptiness e = s.is_empty(s.interp_type({}, parse_term(type)));
      r.add("⟦" + type + "⟧ is empty", "Yes", to_string(e.empty) + ", " + e.evidence,
            e.empty);
    } else if (kind == "EmptyByFamily") {
      empty_by_family(r, s, c, cert, step);
    } else {
      throw ImproperCertificate("unknown step kind '" + kind + "'");
    }
  }
  r.settle();
  r.millis = timer.millis();
  return r;
}

Report check_no_induction(const Certificate& cert, const CheckOptions& o) {
  Certificate c = cert;
  c.fuel = std::min(c.fuel, o.fuel);
  return run_certificate(c, o.overrides);
}

Report check_pi_consistency(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "pi-consistency";
  Corpus c = load_corpus(o.overrides);
  const std::vector<std::pair<std::string, PIVerdict>> cases = {
      {"Πα:*. α", PIVerdict::Empty},
      {"nat", PIVerdict::Inhabited},
      {"bool", PIVerdict::Inhabited},
      {"ind_nat", PIVerdict::Inhabited}};
  for (const auto& [type, want] : cases) {
    PIVerdict got = pi_model_decide(c.env(), {}, parse_term(type));
    r.add("⟦" + type + "⟧ in the proof-irrelevance model", to_string(want),
          to_string(got), got == want ? Verdict::Yes : Verdict::No);
  }
  r.transcript.push_back(
      "the proof-irrelevance model validates induction, so refuting it needs "
      "a generated model");
  r.settle();
  r.millis = timer.millis();
  return r;
}

Report check_soundness_spot(const CheckOptions& o) {
  Timer timer;
  Report r;
  r.id = "soundness-spot";
  Corpus c = load_corpus(o.overrides);
  TypeChecker tc(c.env(), ExtensionFlags::all());
  std::size_t checked = 0;
  std::string bad;
  for (const auto& name : c.names()) {
    const CorpusEntry e = c.get(name);
    if (tc.classify({}, e.type) != SortClass::ConstructorExpr) continue;
    ++checked;
    if (pi_model_decide(c.env(), {}, e.type) != PIVerdict::Inhabited)
      bad += (bad.empty() ? "" : ", ") + name;
  }
  r.add("every corpus judgment's type is inhabited in the proof-irrelevance "
        "model (" + std::to_string(checked) + " judgments)",
        "all Inhabited", bad.empty() ? "all Inhabited" : "Empty: " + bad,
        bad.empty() ? Verdict::Yes : Verdict::No);
  r.settle();
  r.millis = timer.millis();
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_check_ids() {
  static const std::vector<std::string> ids = {
      "stream-coinduction", "parametric-quotient", "uip",           "funext",
      "no-induction",       "pi-consistency",      "soundness-spot"};
  return ids;
}

nlohmann::json default_manifest() {
  return {{"fuel", default_fuel()}, {"checks", suite_check_ids()}};
}

Report run_check(const std::string& id, const CheckOptions& o) {
  if (id == "stream-coinduction") return check_stream_coinduction(o);
  if (id == "parametric-quotient") return check_parametric_quotient(o);
  if (id == "uip") return check_uip(o);
  if (id == "funext") return check_funext_fails(o);
  if (id == "no-induction")
    return check_no_induction(default_induction_certificate(), o);
  if (id == "pi-consistency") return check_pi_consistency(o);
  if (id == "soundness-spot") return check_soundness_spot(o);
  throw ManifestError("unknown check '" + id + "'");
}

std::vector<Report> run_suite(const nlohmann::json& manifest) {
  struct Entry {
    std::string id;
    CheckOptions options;
    Status expect = Status::Reproduced;
  };
  std::vector<Entry> entries;
  try {
    if (!manifest.is_object()) throw ManifestError("manifest must be an object");
    CheckOptions base;
    base.fuel = manifest.value("fuel", base.fuel);
    for (const auto& c : manifest.at("checks")) {
      Entry e;
      e.options = base;
      if (c.is_string()) {
        e.id = c.get<std::string>();
      } else {
        e.id = c.at("id").get<std::string>();
        e.options.weca = c.value("weca", e.options.weca);
        e.options.fuel = c.value("fuel", e.options.fuel);
        e.options.overrides = c.value("overrides", Overrides{});
        e.expect = status_from_string(c.value("expect", std::string("Reproduced")));
      }
      const auto& ids = suite_check_ids();
      if (std::find(ids.begin(), ids.end(), e.id) == ids.end())
        throw ManifestError("unknown check '" + e.id + "'");
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ManifestError(e.what());
  }
  std::vector<Report> out;
  for (const auto& e : entries) {
    Report r;
    try {
      r = run_check(e.id, e.options);
    } catch (const std::exception& ex) {
      r.id = e.id;
      r.add("check ran", "no error", ex.what(), Verdict::No);
      r.settle();
    }
    r.expected = e.expect;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace polykernel
