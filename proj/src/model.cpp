#include "polykernel/model.hpp"

#include <algorithm>

namespace polykernel {

PolysetStructure PolysetStructure::pi() { return PolysetStructure{}; }

PolysetStructure PolysetStructure::simple(WecaConfig w) {
  PolysetStructure m;
  m.kind = StructureKind::Simple;
  m.weca = std::move(w);
  return m;
}

PolysetStructure PolysetStructure::full(WecaConfig w) {
  PolysetStructure m = simple(std::move(w));
  m.kind = StructureKind::Full;
  return m;
}

PolysetStructure PolysetStructure::generated(std::vector<UTerm> core,
                                             WecaConfig w) {
  PolysetStructure m = simple(std::move(w));
  m.kind = StructureKind::Generated;
  m.core = std::move(core);
  return m;
}

PolysetStructure PolysetStructure::generated_refl() {
  return generated({UTerm::constant(uconst::kRefl)}, WecaConfig::lambda_id());
}

PolysetStructure PolysetStructure::power_hnf(WecaConfig w) {
  PolysetStructure m = simple(std::move(w));
  m.kind = StructureKind::PowerHNF;
  return m;
}

PolysetStructure PolysetStructure::from_name(const std::string& model,
                                             const std::string& weca) {
  if (model == "pi") return pi();
  if (model == "generated") {
    if (weca.empty() || weca == "lambda-id") return generated_refl();
    if (weca == "lambda-c")
      return generated({UTerm::constant("c")}, WecaConfig::from_name(weca));
    throw std::invalid_argument(
        "the generated model runs over lambda-id or lambda-c");
  }
  WecaConfig w = WecaConfig::from_name(weca.empty() ? "beta" : weca);
  if (model == "simple") return simple(w);
  if (model == "full") return full(w);
  if (model == "power-hnf") return power_hnf(w);
  throw std::invalid_argument("unknown model '" + model +
                              "' (expected pi, simple, generated, full or "
                              "power-hnf)");
}

std::string PolysetStructure::name() const {
  switch (kind) {
    case StructureKind::PI: return "pi";
    case StructureKind::Simple: return "simple/" + weca.name;
    case StructureKind::Full: return "full/" + weca.name;
    case StructureKind::PowerHNF: return "power-hnf/" + weca.name;
    case StructureKind::Generated: {
      std::string s = "generated({";
      for (std::size_t i = 0; i < core.size(); ++i)
        s += (i ? ", " : "") + print(core[i]);
      return s + "})/" + weca.name;
    }
  }
  return "?";
}

std::string to_string(PredKind p) {
  switch (p) {
    case PredKind::IsRefl: return "IsRefl";
    case PredKind::IsChurchNumeral: return "IsChurchNumeral";
    case PredKind::HasHNF: return "HasHNF";
    case PredKind::EqualsNormalFormOf: return "EqualsNormalFormOf";
  }
  return "?";
}

Polyset Polyset::finite(std::set<UTerm> classes, bool with_core) {
  return Polyset(PFinite{std::move(classes), with_core});
}

Polyset Polyset::pred(PredKind p, UTerm arg) {
  return Polyset(PPred{p, std::move(arg)});
}

Polyset Polyset::dep_prod(const Polyset& domain, Family f) {
  return Polyset(PDepProd{std::make_shared<const Polyset>(domain), std::move(f)});
}

Polyset Polyset::arrow(const Polyset& domain, const Polyset& codomain) {
  return dep_prod(domain, [codomain](const UTerm&) { return codomain; });
}

Polyset Polyset::dep_sum(const Polyset& domain, Family f) {
  return Polyset(PDepSum{std::make_shared<const Polyset>(domain), std::move(f)});
}

Polyset Polyset::id_set(const Polyset& domain, UTerm lhs, UTerm rhs) {
  return Polyset(PIdSet{std::make_shared<const Polyset>(domain), std::move(lhs),
                        std::move(rhs)});
}

std::string describe(const Polyset& X) {
  if (X.as<PEmpty>()) return "∅";
  if (X.as<PFull>()) return "A";
  if (auto f = X.as<PFinite>()) {
    std::string s = f->with_core ? "C ∪ {" : "{";
    bool first = true;
    for (const auto& c : f->classes) {
      s += (first ? "" : ", ") + print(c);
      first = false;
    }
    return s + "}";
  }
  if (auto p = X.as<PPred>()) {
    std::string s = to_string(p->pred);
    return p->arg.valid() ? s + "(" + print(p->arg) + ")" : s;
  }
  if (auto g = X.as<PGeneric>()) {
    std::string s = g->label;
    for (const auto& a : g->args) s += " (" + print(a) + ")";
    return s;
  }
  if (auto p = X.as<PDepProd>()) return "Π(" + describe(*p->domain) + ", …)";
  if (auto p = X.as<PDepSum>()) return "Σ(" + describe(*p->domain) + ", …)";
  if (auto p = X.as<PIntersect>())
    return "⋂[" + std::to_string(p->instances.size()) + " instances" +
           (p->generic ? " + generic]" : "]");
  if (auto p = X.as<PIdSet>())
    return "Id(" + describe(*p->domain) + ", " + print(p->lhs) + ", " +
           print(p->rhs) + ")";
  if (auto p = X.as<POpaque>()) return p->label;
  return "?";
}

Polyset as_polyset(const ConValue& v) {
  if (auto p = std::get_if<Polyset>(&v)) return *p;
  throw ModelError("NotAType", "a family is not a type");
}

// ---------------------------------------------------------------------------

Semantics::Semantics(const Environment& env, PolysetStructure m)
    : env_(env), m_(std::move(m)), tc_(env, ExtensionFlags::all()) {}

const std::string& Semantics::observer_prefix() {
  static const std::string p = "ω";
  return p;
}

void Semantics::add_samples(const std::vector<UTerm>& s) {
  for (const auto& t : s)
    if (std::find(samples_.begin(), samples_.end(), t) == samples_.end())
      samples_.push_back(t);
}

std::optional<UTerm> Semantics::nf(const UTerm& e) {
  auto r = normalize(e, m_.weca);
  if (!r) return std::nullopt;
  return r->term;
}

bool Semantics::has_observer(const UTerm& t) const {
  for (const auto& n : free_names(t))
    if (n.rfind(observer_prefix(), 0) == 0) return true;
  return false;
}

const Polyset* Semantics::observer_set(const std::string& name) const {
  for (auto it = observers_.rbegin(); it != observers_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

// Membership read off from an observer-headed normal form: the observer's
// assumed set is unwound through the products it is applied in.
std::optional<Polyset> Semantics::derive(const UTerm& n) {
  auto [head, args] = uspine(n);
  auto f = head.as<UFree>();
  if (!f) return std::nullopt;
  const Polyset* start = observer_set(f->name);
  if (!start) return std::nullopt;
  Polyset cur = *start;
  for (const auto& a : args) {
    auto p = cur.as<PDepProd>();
    if (!p || member(a, *p->domain) != Verdict::Yes) return std::nullopt;
    Polyset next = p->family(a);
    cur = next;
  }
  return cur;
}

bool Semantics::known_nonempty(const Polyset& X) {
  if (X.as<PFull>()) return true;
  if (auto f = X.as<PFinite>()) return !f->classes.empty() || f->with_core;
  for (const auto& [name, set] : observers_)
    if (same_set(set, X)) return true;
  return false;
}

bool Semantics::same_set(const Polyset& a, const Polyset& b) {
  if (a.same_object(b)) return true;
  if (a.as<PEmpty>() && b.as<PEmpty>()) return true;
  if (a.as<PFull>() && b.as<PFull>()) return true;
  auto eq = [&](const UTerm& x, const UTerm& y) {
    if (x == y) return true;
    auto nx = nf(x), ny = nf(y);
    return nx && ny && *nx == *ny;
  };
  if (auto fa = a.as<PFinite>(), fb = b.as<PFinite>(); fa && fb)
    return fa->with_core == fb->with_core && fa->classes == fb->classes;
  if (auto ga = a.as<PGeneric>(), gb = b.as<PGeneric>(); ga && gb) {
    if (ga->id != gb->id || ga->args.size() != gb->args.size()) return false;
    for (std::size_t i = 0; i < ga->args.size(); ++i)
      if (!eq(ga->args[i], gb->args[i])) return false;
    return true;
  }
  if (auto pa = a.as<PPred>(), pb = b.as<PPred>(); pa && pb)
    return pa->pred == pb->pred &&
           (!pa->arg.valid() ? !pb->arg.valid()
                             : pb->arg.valid() && eq(pa->arg, pb->arg));
  if (auto ia = a.as<PIdSet>(), ib = b.as<PIdSet>(); ia && ib)
    return same_set(*ia->domain, *ib->domain) && eq(ia->lhs, ib->lhs) &&
           eq(ia->rhs, ib->rhs);
  return false;
}

// In Generated({refl}) over the identity calculus an identity set is {refl}
// when the endpoints agree and empty otherwise.
bool Semantics::id_closed_form() const {
  return m_.kind == StructureKind::Generated && m_.weca.has(Rule::ReflAbsorb) &&
         std::find(m_.core.begin(), m_.core.end(),
                   UTerm::constant(uconst::kRefl)) != m_.core.end();
}

Verdict Semantics::id_eq(const UTerm& a, const UTerm& b) {
  auto na = nf(a), nb = nf(b);
  if (!na || !nb) return Verdict::Unknown;
  if (*na == *nb) return Verdict::Yes;
  if (has_observer(*na) || has_observer(*nb)) return Verdict::Unknown;
  return Verdict::No;
}

namespace {

bool is_church_numeral(const UTerm& n) {
  auto l1 = n.as<ULam>();
  if (!l1) return false;
  auto l2 = l1->body.as<ULam>();
  if (!l2) return false;
  UTerm b = l2->body;
  while (auto a = b.as<UApp>()) {
    auto f = a->fun.as<UVar>();
    if (!f || f->index != 0) return false;
    b = a->arg;
  }
  auto x = b.as<UVar>();
  return x && x->index == 1;
}

}  // namespace

Verdict Semantics::member(const UTerm& e, const Polyset& X) {
  if (X.as<PFull>()) return Verdict::Yes;
  if (X.as<PEmpty>()) return Verdict::No;
  if (auto p = X.as<PDepProd>()) return member_prod(e, *p);
  if (auto p = X.as<PIntersect>()) return member_intersect(e, *p);
  if (auto p = X.as<PPred>(); p && p->pred == PredKind::HasHNF) {
    auto h = head_normalize(e, m_.weca.with_fuel(m_.hnf_fuel));
    if (!h) return Verdict::Unknown;
    UTerm body = *h;
    while (auto l = body.as<ULam>()) body = l->body;
    auto f = uspine(body).first.as<UFree>();
    if (f && observer_set(f->name)) return Verdict::Unknown;
    return Verdict::Yes;
  }
  auto n = nf(e);
  if (!n) return Verdict::Unknown;
  return member_nf(*n, X);
}

Verdict Semantics::member_nf(const UTerm& n, const Polyset& X) {
  if (auto d = derive(n); d && same_set(*d, X)) return Verdict::Yes;
  const bool in_core =
      std::find(m_.core.begin(), m_.core.end(), n) != m_.core.end();
  if (auto f = X.as<PFinite>()) {
    if (f->classes.count(n) || (f->with_core && in_core)) return Verdict::Yes;
    return has_observer(n) ? Verdict::Unknown : Verdict::No;
  }
  if (auto p = X.as<PPred>()) {
    bool holds = false;
    switch (p->pred) {
      case PredKind::IsRefl: holds = n == UTerm::constant(uconst::kRefl); break;
      case PredKind::IsChurchNumeral: holds = is_church_numeral(n); break;
      case PredKind::HasHNF: holds = true; break;
      case PredKind::EqualsNormalFormOf: {
        auto a = nf(p->arg);
        if (!a) return Verdict::Unknown;
        holds = *a == n;
        break;
      }
    }
    if (holds) return Verdict::Yes;
    return has_observer(n) ? Verdict::Unknown : Verdict::No;
  }
  if (X.as<PGeneric>()) {
    if (m_.kind == StructureKind::Simple && known_nonempty(X)) return Verdict::Yes;
    if (in_core && known_nonempty(X)) return Verdict::Yes;
    return Verdict::Unknown;
  }
  if (auto s = X.as<PDepSum>()) {
    UTerm a = UTerm::app(UTerm::constant(uconst::kProj1), n);
    UTerm b = UTerm::app(UTerm::constant(uconst::kProj2), n);
    Verdict first = member(a, *s->domain);
    if (first == Verdict::No) return Verdict::No;
    return both(first, member(b, s->family(a)));
  }
  if (auto p = X.as<PIdSet>()) {
    if (!id_closed_form()) return Verdict::Unknown;
    Verdict eq = id_eq(p->lhs, p->rhs);
    if (eq != Verdict::Yes) return eq == Verdict::No ? Verdict::No : eq;
    if (n == UTerm::constant(uconst::kRefl)) return Verdict::Yes;
    return has_observer(n) ? Verdict::Unknown : Verdict::No;
  }
  return Verdict::Unknown;
}

std::optional<std::vector<UTerm>> Semantics::enumerate(const Polyset& X) {
  if (X.as<PEmpty>()) return std::vector<UTerm>{};
  if (auto f = X.as<PFinite>()) {
    std::vector<UTerm> out(f->classes.begin(), f->classes.end());
    if (f->with_core)
      for (const auto& c : m_.core)
        if (!f->classes.count(c)) out.push_back(c);
    return out;
  }
  return std::nullopt;
}

Verdict Semantics::member_prod(const UTerm& e, const PDepProd& p) {
  const Polyset& dom = *p.domain;
  if (auto elems = enumerate(dom)) {
    Verdict acc = Verdict::Yes;
    for (const auto& t : *elems) {
      acc = both(acc, member(UTerm::app(e, t), p.family(t)));
      if (acc == Verdict::No) break;
    }
    return acc;
  }
  if (auto id = dom.as<PIdSet>();
      id && id_closed_form() && id_eq(id->lhs, id->rhs) == Verdict::No)
    return Verdict::Yes;

  // A fresh observer stands for an arbitrary element of the domain; a
  // derivation that treats it opaquely survives substitution.
  const std::string name =
      observer_prefix() + std::to_string(++next_observer_);
  const UTerm v = UTerm::free(name);
  observers_.emplace_back(name, dom);
  Verdict r = member(UTerm::app(e, v), p.family(v));
  observers_.pop_back();
  if (r == Verdict::Yes) return r;

  for (const auto& t : candidates()) {
    if (member(t, dom) != Verdict::Yes) continue;
    if (member(UTerm::app(e, t), p.family(t)) == Verdict::No) return Verdict::No;
  }
  return Verdict::Unknown;
}

Verdict Semantics::member_intersect(const UTerm& e, const PIntersect& p) {
  Verdict acc = Verdict::Yes;
  for (const auto& inst : p.instances) {
    Verdict v = member(e, inst);
    if (v == Verdict::No) return v;
    if (v == Verdict::Unknown) acc = v;
  }
  if (!p.generic) return acc;
  return member(e, *p.generic) == Verdict::Yes ? Verdict::Yes : Verdict::Unknown;
}

std::vector<UTerm> Semantics::candidates() {
  std::vector<UTerm> out = m_.core;
  for (const auto& c : m_.core) {
    out.push_back(UTerm::lam("x", c));
    out.push_back(UTerm::lam("x", UTerm::lam("y", c)));
  }
  out.push_back(parse_untyped("λx. x"));
  out.push_back(parse_untyped("λx y. x"));
  out.push_back(parse_untyped("λx y. y"));
  for (const auto& s : samples_)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

Emptiness Semantics::is_empty(const Polyset& X) {
  if (X.as<PEmpty>()) return {Verdict::Yes, std::nullopt, "the empty set"};
  if (X.as<PFull>())
    return {Verdict::No, parse_untyped("λx. x"), "the full carrier"};
  if (auto elems = enumerate(X); elems && !elems->empty())
    return {Verdict::No, elems->front(), "finite set"};
  if (auto p = X.as<PIdSet>()) {
    if (member_nf(UTerm::constant(uconst::kRefl), X) == Verdict::Yes)
      return {Verdict::No, UTerm::constant(uconst::kRefl),
              "endpoints are equal, refl is a member"};
    if (id_closed_form() && id_eq(p->lhs, p->rhs) == Verdict::No)
      return {Verdict::Yes, std::nullopt,
              "endpoints " + print(*nf(p->lhs)) + " and " + print(*nf(p->rhs)) +
                  " have distinct normal forms"};
  }
  if (auto p = X.as<PIntersect>()) {
    for (const auto& inst : p->instances)
      if (is_empty(inst).empty == Verdict::Yes)
        return {Verdict::Yes, std::nullopt,
                "an instance of the intersection is empty: " + describe(inst)};
  }
  if (auto p = X.as<PDepProd>()) {
    // f a must land in B(a) for a known member a
    Emptiness d = is_empty(*p->domain);
    if (d.empty == Verdict::Yes)
      return {Verdict::No, parse_untyped("λx. x"), "product over the empty set"};
    if (d.witness && is_empty(p->family(*d.witness)).empty == Verdict::Yes)
      return {Verdict::Yes, std::nullopt,
              "the family is empty at " + print(*d.witness)};
  }
  for (const auto& c : candidates())
    if (member(c, X) == Verdict::Yes) return {Verdict::No, c, "member found"};
  return {Verdict::Unknown, std::nullopt, "no witness either way"};
}

}  // namespace polykernel
