#include "polykernel/typecheck.hpp"

#include <cstdlib>
#include <functional>

namespace polykernel {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateVariable: return "DuplicateVariable";
    case ErrorCode::IllFormedClassifier: return "IllFormedClassifier";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ForbiddenPiFormation: return "ForbiddenPiFormation";
    case ErrorCode::ExtensionDisabled: return "ExtensionDisabled";
    case ErrorCode::ConversionFailure: return "ConversionFailure";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::CannotInfer: return "CannotInfer";
    case ErrorCode::NotAPair: return "NotAPair";
    case ErrorCode::NotWellTyped: return "NotWellTyped";
  }
  return "?";
}

std::string to_string(SortClass c) {
  switch (c) {
    case SortClass::KindSort: return "KindSort";
    case SortClass::KindExpr: return "KindExpr";
    case SortClass::ConstructorExpr: return "ConstructorExpr";
    case SortClass::TermExpr: return "TermExpr";
  }
  return "?";
}

TypeError::TypeError(ErrorCode code, Span at, const std::string& message,
                     std::string lhs_nf, std::string rhs_nf)
    : std::runtime_error(to_string(code) + " at " + std::to_string(at.line) +
                         ":" + std::to_string(at.column) + ": " + message),
      code_(code),
      at_(at),
      lhs_(std::move(lhs_nf)),
      rhs_(std::move(rhs_nf)) {}

// ---------------------------------------------------------------------------

Context Context::push(std::string name, Term type) const {
  Context c = *this;
  c.entries_.push_back({std::move(name), std::move(type)});
  return c;
}

const ContextEntry& Context::entry(std::size_t index) const {
  return entries_.at(entries_.size() - 1 - index);
}

Term Context::type_of(std::size_t index) const {
  return shift(entry(index).type, static_cast<long>(index + 1));
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

Context make_context(
    const std::vector<std::pair<std::string, std::string>>& decls) {
  Context ctx;
  for (const auto& [name, type] : decls)
    ctx = ctx.push(name, parse_term(type, ctx.names()));
  return ctx;
}

void Environment::add(Global g) {
  const std::string name = g.name;
  if (!globals_.count(name)) order_.push_back(name);
  globals_[name] = std::move(g);
}

const Global* Environment::find(const std::string& name) const {
  auto it = globals_.find(name);
  return it == globals_.end() ? nullptr : &it->second;
}

std::size_t default_fuel() {
  if (const char* s = std::getenv("POLYKERNEL_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

Term uip_type() {
  static const Term t = parse_term(
      "Πα:*. Πx y:α. Πp q:Id(α, x, y). Id(Id(α, x, y), p, q)");
  return t;
}

Term funext_type() {
  static const Term t = parse_term(
      "Πσ:*. Πτ:σ → *. Πf g:(Πx:σ. τ x). (Πx:σ. Id(τ x, f x, g x)) → "
      "Id(Πx:σ. τ x, f, g)");
  return t;
}

// ---------------------------------------------------------------------------

namespace {

bool is_sort(const Term& t, SortKind k) {
  auto s = t.as<SortNode>();
  return s && s->kind == k;
}

// motive[x := a, y := b, p := q]; the motive lives under x, y, p.
Term motive_at(const Term& motive, const Term& a, const Term& b,
               const Term& q) {
  Term m = subst(motive, 0, shift(q, 2));
  m = subst(m, 0, shift(b, 1));
  return subst(m, 0, a);
}

}  // namespace

TypeChecker::TypeChecker(const Environment& env, ExtensionFlags flags,
                         std::size_t fuel)
    : env_(env), flags_(flags), fuel_(fuel) {
  flags_.validate();
}

void TypeChecker::tick(const Term& at) {
  if (remaining_ == 0)
    throw TypeError(ErrorCode::FuelExhausted, at.span(),
                    "normalization fuel exhausted (" + std::to_string(fuel_) +
                        " steps)");
  --remaining_;
}

Term TypeChecker::whnf(const Term& t) {
  reset();
  return whnf_(t);
}

Term TypeChecker::normalize(const Term& t) {
  reset();
  return normalize_(t);
}

Term TypeChecker::whnf_(const Term& t) {
  Term cur = t;
  for (;;) {
    if (auto c = cur.as<ConstNode>()) {
      const Global* g = env_.find(c->name);
      if (!g || !g->body) return cur;
      tick(cur);
      cur = *g->body;
      continue;
    }
    if (auto a = cur.as<AppNode>()) {
      Term f = whnf_(a->fun);
      if (auto l = f.as<LamNode>()) {
        tick(cur);
        cur = instantiate(l->body, a->arg);
        continue;
      }
      return Term::app(f, a->arg, cur.span());
    }
    if (auto p = cur.as<Proj1Node>()) {
      Term of = whnf_(p->of);
      if (auto pr = of.as<PairNode>()) {
        tick(cur);
        cur = pr->first;
        continue;
      }
      return Term::proj1(of, cur.span());
    }
    if (auto p = cur.as<Proj2Node>()) {
      Term of = whnf_(p->of);
      if (auto pr = of.as<PairNode>()) {
        tick(cur);
        cur = pr->second;
        continue;
      }
      return Term::proj2(of, cur.span());
    }
    if (auto j = cur.as<JNode>()) {
      Term q = whnf_(j->q);
      if (q.as<ReflNode>()) {
        tick(cur);
        cur = Term::app(j->c, j->a, cur.span());
        continue;
      }
      return Term::j(j->hx, j->hy, j->hp, j->motive, j->c, j->a, j->b, q,
                     cur.span());
    }
    return cur;
  }
}

Term TypeChecker::normalize_(const Term& t) {
  Term w = whnf_(t);
  const Span at = w.span();
  return std::visit(
      [&](const auto& x) -> Term {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PiNode>) {
          return Term::pi(x.hint, normalize_(x.domain), normalize_(x.codomain),
                          at);
        } else if constexpr (std::is_same_v<T, SigmaNode>) {
          return Term::sigma(x.hint, normalize_(x.domain),
                             normalize_(x.codomain), at);
        } else if constexpr (std::is_same_v<T, LamNode>) {
          return Term::lam(x.hint, normalize_(x.annotation),
                           normalize_(x.body), at);
        } else if constexpr (std::is_same_v<T, AppNode>) {
          return Term::app(normalize_(x.fun), normalize_(x.arg), at);
        } else if constexpr (std::is_same_v<T, PairNode>) {
          return Term::pair(normalize_(x.first), normalize_(x.second),
                            std::nullopt, at);
        } else if constexpr (std::is_same_v<T, Proj1Node>) {
          return Term::proj1(normalize_(x.of), at);
        } else if constexpr (std::is_same_v<T, Proj2Node>) {
          return Term::proj2(normalize_(x.of), at);
        } else if constexpr (std::is_same_v<T, IdNode>) {
          return Term::id(normalize_(x.type), normalize_(x.lhs),
                          normalize_(x.rhs), at);
        } else if constexpr (std::is_same_v<T, JNode>) {
          return Term::j(x.hx, x.hy, x.hp, normalize_(x.motive),
                         normalize_(x.c), normalize_(x.a), normalize_(x.b),
                         normalize_(x.q), at);
        } else {
          return w;
        }
      },
      w.node().v);
}

bool TypeChecker::conv_(const Term& a, const Term& b) {
  if (a == b) return true;
  return normalize_(a) == normalize_(b);
}

bool TypeChecker::convertible(const Context&, const Term& a, const Term& b) {
  reset();
  return conv_(a, b);
}

void TypeChecker::mismatch(ErrorCode code, const Context& ctx, const Term& at,
                           const Term& expected, const Term& actual) {
  const auto names = ctx.names();
  std::string e, a;
  try {
    e = print(normalize_(expected), names);
    a = print(normalize_(actual), names);
  } catch (const TypeError&) {
    e = print(expected, names);
    a = print(actual, names);
  }
  throw TypeError(code, at.span(),
                  "expected " + e + ", got " + a + " for " + print(at, names),
                  e, a);
}

void TypeChecker::require(bool enabled, const Term& at, const char* what) {
  if (!enabled)
    throw TypeError(ErrorCode::ExtensionDisabled, at.span(),
                    std::string(what) + " requires an extension flag");
}

Term TypeChecker::const_type(const Term& at, const std::string& name) {
  if (const Global* g = env_.find(name)) {
    if (!flags_.covers(g->flags))
      throw TypeError(ErrorCode::ExtensionDisabled, at.span(),
                      "'" + name + "' needs extensions that are disabled");
    return g->type;
  }
  if (name == "uip") {
    require(flags_.uip_postulate, at, "uip");
    return uip_type();
  }
  if (name == "funext") {
    require(flags_.funext_postulate, at, "funext");
    return funext_type();
  }
  throw TypeError(ErrorCode::UnboundVariable, at.span(),
                  "unbound name '" + name + "'");
}

// Infers the classifier of a classifier and insists it is a sort.
Term TypeChecker::sort_of(const Context& ctx, const Term& t) {
  if (is_sort(t, SortKind::Kind)) return t;  // Kind itself, for binders
  Term s = whnf_(infer_(ctx, t));
  if (!s.as<SortNode>())
    throw TypeError(ErrorCode::IllFormedClassifier, t.span(),
                    print(t, ctx.names()) + " is not a type or kind");
  return s;
}

Term TypeChecker::infer(const Context& ctx, const Term& t) {
  reset();
  return infer_(ctx, t);
}

Term TypeChecker::infer_(const Context& ctx, const Term& t) {
  const Span at = t.span();
  if (auto s = t.as<SortNode>()) {
    if (s->kind == SortKind::Star) return Term::kind();
    throw TypeError(ErrorCode::NotWellTyped, at, "KIND has no type");
  }
  if (auto v = t.as<VarNode>()) {
    if (v->index >= ctx.size())
      throw TypeError(ErrorCode::UnboundVariable, at,
                      "unbound variable #" + std::to_string(v->index));
    return ctx.type_of(v->index);
  }
  if (auto c = t.as<ConstNode>()) return const_type(t, c->name);
  if (auto p = t.as<PiNode>()) {
    Term s1 = sort_of(ctx, p->domain);
    if (is_sort(p->domain, SortKind::Kind))
      throw TypeError(ErrorCode::IllFormedClassifier, at,
                      "KIND cannot be a domain");
    Context inner = ctx.push(p->hint, p->domain);
    if (is_sort(p->codomain, SortKind::Kind))
      throw TypeError(ErrorCode::IllFormedClassifier, at,
                      "KIND cannot be a codomain");
    Term s2 = sort_of(inner, p->codomain);
    if (is_sort(s1, SortKind::Kind) && is_sort(s2, SortKind::Kind))
      throw TypeError(ErrorCode::ForbiddenPiFormation, at,
                      "(KIND, KIND) products are not part of the system");
    return s2;
  }
  if (auto l = t.as<LamNode>()) {
    Term s1 = sort_of(ctx, l->annotation);
    if (is_sort(l->annotation, SortKind::Kind))
      throw TypeError(ErrorCode::IllFormedClassifier, at,
                      "KIND cannot annotate a binder");
    Context inner = ctx.push(l->hint, l->annotation);
    Term body_type = infer_(inner, l->body);
    Term s2 = sort_of(inner, body_type);
    if (is_sort(body_type, SortKind::Kind) ||
        (is_sort(s1, SortKind::Kind) && is_sort(s2, SortKind::Kind)))
      throw TypeError(ErrorCode::ForbiddenPiFormation, at,
                      "abstraction would need a (KIND, KIND) product");
    return Term::pi(l->hint, l->annotation, body_type, at);
  }
  if (auto a = t.as<AppNode>()) {
    Term ft = whnf_(infer_(ctx, a->fun));
    auto pi = ft.as<PiNode>();
    if (!pi)
      throw TypeError(ErrorCode::NotAFunction, a->fun.span(),
                      print(a->fun, ctx.names()) + " has type " +
                          print(ft, ctx.names()));
    try {
      check_(ctx, a->arg, pi->domain);
    } catch (const TypeError& e) {
      if (e.code() != ErrorCode::ConversionFailure) throw;
      throw TypeError(ErrorCode::DomainMismatch, e.where(), e.what(),
                      e.lhs_normal_form(), e.rhs_normal_form());
    }
    return instantiate(pi->codomain, a->arg);
  }
  if (auto s = t.as<SigmaNode>()) {
    require(flags_.sigma, t, "Σ");
    Term s1 = sort_of(ctx, s->domain);
    Term s2 = sort_of(ctx.push(s->hint, s->domain), s->codomain);
    if (!is_sort(s1, SortKind::Star) || !is_sort(s2, SortKind::Star))
      throw TypeError(ErrorCode::IllFormedClassifier, at,
                      "Σ is formed from types only");
    return Term::star();
  }
  if (auto p = t.as<PairNode>()) {
    require(flags_.sigma, t, "pairing");
    if (!p->annotation)
      throw TypeError(ErrorCode::CannotInfer, at,
                      "unannotated pair needs a known Σ type");
    sort_of(ctx, *p->annotation);
    check_(ctx, Term::pair(p->first, p->second, std::nullopt, at),
           *p->annotation);
    return *p->annotation;
  }
  if (t.as<Proj1Node>() || t.as<Proj2Node>()) {
    require(flags_.sigma, t, "projection");
    const Term of = t.as<Proj1Node>() ? t.as<Proj1Node>()->of
                                      : t.as<Proj2Node>()->of;
    Term ty = whnf_(infer_(ctx, of));
    auto sg = ty.as<SigmaNode>();
    if (!sg)
      throw TypeError(ErrorCode::NotAPair, of.span(),
                      print(of, ctx.names()) + " is not of a Σ type");
    if (t.as<Proj1Node>()) return sg->domain;
    return instantiate(sg->codomain, Term::proj1(of, at));
  }
  if (auto i = t.as<IdNode>()) {
    require(flags_.identity, t, "identity type");
    Term s = sort_of(ctx, i->type);
    if (!is_sort(s, SortKind::Star))
      throw TypeError(ErrorCode::IllFormedClassifier, at,
                      "identity is formed over types only");
    check_(ctx, i->lhs, i->type);
    check_(ctx, i->rhs, i->type);
    return Term::star();
  }
  if (t.as<ReflNode>()) {
    require(flags_.identity, t, "refl");
    throw TypeError(ErrorCode::CannotInfer, at,
                    "refl needs a known identity type");
  }
  if (auto j = t.as<JNode>()) {
    require(flags_.identity, t, "J");
    Term sigma = infer_(ctx, j->a);
    if (!is_sort(whnf_(sort_of(ctx, sigma)), SortKind::Star))
      throw TypeError(ErrorCode::IllFormedClassifier, j->a.span(),
                      "J eliminates over terms of a type");
    check_(ctx, j->b, sigma);
    check_(ctx, j->q, Term::id(sigma, j->a, j->b));
    Context m = ctx.push(j->hx, sigma)
                    .push(j->hy, shift(sigma, 1))
                    .push(j->hp, Term::id(shift(sigma, 2), Term::var(1, j->hx),
                                          Term::var(0, j->hy)));
    if (!is_sort(sort_of(m, j->motive), SortKind::Star))
      throw TypeError(ErrorCode::IllFormedClassifier, j->motive.span(),
                      "J motive must be a type");
    Term lifted = shift(j->motive, 1, 3);
    Term c_type = Term::pi(
        j->hx, sigma,
        motive_at(lifted, Term::var(0, j->hx), Term::var(0, j->hx),
                  Term::refl()));
    check_(ctx, j->c, c_type);
    return motive_at(j->motive, j->a, j->b, j->q);
  }
  throw TypeError(ErrorCode::CannotInfer, at, "cannot infer");
}

void TypeChecker::check(const Context& ctx, const Term& t, const Term& type) {
  reset();
  if (!is_sort(type, SortKind::Kind)) sort_of(ctx, type);
  check_(ctx, t, type);
}

void TypeChecker::check_(const Context& ctx, const Term& t, const Term& type) {
  if (auto l = t.as<LamNode>()) {
    Term w = whnf_(type);
    if (auto pi = w.as<PiNode>()) {
      sort_of(ctx, l->annotation);
      if (!conv_(l->annotation, pi->domain))
        mismatch(ErrorCode::DomainMismatch, ctx, l->annotation, pi->domain,
                 l->annotation);
      check_(ctx.push(l->hint, l->annotation), l->body, pi->codomain);
      return;
    }
  }
  if (t.as<ReflNode>()) {
    require(flags_.identity, t, "refl");
    Term w = whnf_(type);
    auto id = w.as<IdNode>();
    if (!id)
      throw TypeError(ErrorCode::ConversionFailure, t.span(),
                      "refl checked against non-identity type " +
                          print(w, ctx.names()),
                      print(w, ctx.names()), "Id(_, _, _)");
    if (!conv_(id->lhs, id->rhs))
      mismatch(ErrorCode::ConversionFailure, ctx, t, id->lhs, id->rhs);
    return;
  }
  if (auto p = t.as<PairNode>(); p && !p->annotation) {
    require(flags_.sigma, t, "pairing");
    Term w = whnf_(type);
    auto sg = w.as<SigmaNode>();
    if (!sg)
      throw TypeError(ErrorCode::NotAPair, t.span(),
                      "pair checked against non-Σ type " +
                          print(w, ctx.names()));
    check_(ctx, p->first, sg->domain);
    check_(ctx, p->second, instantiate(sg->codomain, p->first));
    return;
  }
  // (λx:A. b) a against T: b may check against T without being inferable
  if (auto a = t.as<AppNode>()) {
    if (auto l = a->fun.as<LamNode>()) {
      std::size_t saved = remaining_;
      try {
        sort_of(ctx, l->annotation);
        check_(ctx, a->arg, l->annotation);
        check_(ctx.push(l->hint, l->annotation), l->body, shift(type, 1));
        return;
      } catch (const TypeError& e) {
        if (e.code() == ErrorCode::FuelExhausted) throw;
        remaining_ = saved;
      }
    }
  }
  Term actual = infer_(ctx, t);
  if (!conv_(actual, type))
    mismatch(ErrorCode::ConversionFailure, ctx, t, type, actual);
}

SortClass TypeChecker::classify(const Context& ctx, const Term& t) {
  reset();
  if (is_sort(t, SortKind::Kind)) return SortClass::KindSort;
  try {
    Term ty = whnf_(infer_(ctx, t));
    if (is_sort(ty, SortKind::Kind)) return SortClass::KindExpr;
    Term s = whnf_(infer_(ctx, ty));
    if (is_sort(s, SortKind::Kind)) return SortClass::ConstructorExpr;
    return SortClass::TermExpr;
  } catch (const TypeError& e) {
    throw TypeError(ErrorCode::NotWellTyped, t.span(), e.what());
  }
}

void TypeChecker::wf_context(const Context& ctx) {
  reset();
  Context prefix;
  std::vector<std::string> seen;
  for (const auto& e : ctx.entries()) {
    for (const auto& n : seen)
      if (n == e.name && !n.empty() && n != "_")
        throw TypeError(ErrorCode::DuplicateVariable, e.type.span(),
                        "variable '" + e.name + "' declared twice");
    try {
      sort_of(prefix, e.type);
    } catch (const TypeError& err) {
      if (err.code() == ErrorCode::FuelExhausted) throw;
      throw TypeError(ErrorCode::IllFormedClassifier, e.type.span(),
                      "classifier of '" + e.name + "': " + err.what());
    }
    if (is_sort(e.type, SortKind::Kind))
      throw TypeError(ErrorCode::IllFormedClassifier, e.type.span(),
                      "KIND is not a classifier of variables");
    seen.push_back(e.name);
    prefix = prefix.push(e.name, e.type);
  }
}

// ---------------------------------------------------------------------------

std::vector<Term> TypeChecker::one_step_reducts(const Term& t) const {
  std::vector<Term> out;
  const Span at = t.span();
  // Root contractions.
  if (auto c = t.as<ConstNode>()) {
    if (const Global* g = env_.find(c->name); g && g->body) {
      // keep the declared type on a bare pair so the reduct still infers
      auto p = g->body->as<PairNode>();
      if (p && !p->annotation)
        out.push_back(Term::pair(p->first, p->second, g->type, g->body->span()));
      else
        out.push_back(*g->body);
    }
  }
  if (auto a = t.as<AppNode>()) {
    if (auto l = a->fun.as<LamNode>())
      out.push_back(instantiate(l->body, a->arg));
  }
  if (auto p = t.as<Proj1Node>()) {
    if (auto pr = p->of.as<PairNode>()) out.push_back(pr->first);
  }
  if (auto p = t.as<Proj2Node>()) {
    if (auto pr = p->of.as<PairNode>()) out.push_back(pr->second);
  }
  if (auto j = t.as<JNode>()) {
    if (j->q.as<ReflNode>()) out.push_back(Term::app(j->c, j->a, at));
  }
  // Contractions inside one child.
  auto each = [&](const Term& child, const std::function<Term(Term)>& rebuild) {
    for (auto& r : one_step_reducts(child)) out.push_back(rebuild(r));
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PiNode>) {
          each(x.domain, [&](Term r) { return Term::pi(x.hint, r, x.codomain, at); });
          each(x.codomain, [&](Term r) { return Term::pi(x.hint, x.domain, r, at); });
        } else if constexpr (std::is_same_v<T, SigmaNode>) {
          each(x.domain, [&](Term r) { return Term::sigma(x.hint, r, x.codomain, at); });
          each(x.codomain, [&](Term r) { return Term::sigma(x.hint, x.domain, r, at); });
        } else if constexpr (std::is_same_v<T, LamNode>) {
          each(x.annotation, [&](Term r) { return Term::lam(x.hint, r, x.body, at); });
          each(x.body, [&](Term r) { return Term::lam(x.hint, x.annotation, r, at); });
        } else if constexpr (std::is_same_v<T, AppNode>) {
          each(x.fun, [&](Term r) { return Term::app(r, x.arg, at); });
          each(x.arg, [&](Term r) { return Term::app(x.fun, r, at); });
        } else if constexpr (std::is_same_v<T, PairNode>) {
          each(x.first, [&](Term r) { return Term::pair(r, x.second, x.annotation, at); });
          each(x.second, [&](Term r) { return Term::pair(x.first, r, x.annotation, at); });
          if (x.annotation)
            each(*x.annotation, [&](Term r) { return Term::pair(x.first, x.second, r, at); });
        } else if constexpr (std::is_same_v<T, Proj1Node>) {
          each(x.of, [&](Term r) { return Term::proj1(r, at); });
        } else if constexpr (std::is_same_v<T, Proj2Node>) {
          each(x.of, [&](Term r) { return Term::proj2(r, at); });
        } else if constexpr (std::is_same_v<T, IdNode>) {
          each(x.type, [&](Term r) { return Term::id(r, x.lhs, x.rhs, at); });
          each(x.lhs, [&](Term r) { return Term::id(x.type, r, x.rhs, at); });
          each(x.rhs, [&](Term r) { return Term::id(x.type, x.lhs, r, at); });
        } else if constexpr (std::is_same_v<T, JNode>) {
          auto mk = [&](Term m, Term c, Term a, Term b, Term q) {
            return Term::j(x.hx, x.hy, x.hp, m, c, a, b, q, at);
          };
          each(x.motive, [&](Term r) { return mk(r, x.c, x.a, x.b, x.q); });
          each(x.c, [&](Term r) { return mk(x.motive, r, x.a, x.b, x.q); });
          each(x.a, [&](Term r) { return mk(x.motive, x.c, r, x.b, x.q); });
          each(x.b, [&](Term r) { return mk(x.motive, x.c, x.a, r, x.q); });
          each(x.q, [&](Term r) { return mk(x.motive, x.c, x.a, x.b, r); });
        }
      },
      t.node().v);
  return out;
}

// ---------------------------------------------------------------------------

Environment check_file(const DeclarationFile& file, Environment base) {
  for (const auto& d : file.decls) {
    if (base.find(d.name))
      throw TypeError(ErrorCode::DuplicateVariable, d.span,
                      "'" + d.name + "' is already defined");
    TypeChecker tc(base, file.flags);
    Context empty;
    Term type;
    if (d.kind == DeclKind::Postulate) {
      if (!tc.whnf(tc.infer(empty, *d.type)).as<SortNode>())
        throw TypeError(ErrorCode::IllFormedClassifier, d.span,
                        "postulate '" + d.name + "' needs a type or kind");
      type = *d.type;
      base.add({d.name, type, std::nullopt, file.flags});
      continue;
    }
    if (d.type) {
      if (!d.type->as<SortNode>()) tc.infer(empty, *d.type);
      tc.check(empty, *d.body, *d.type);
      type = *d.type;
    } else {
      type = tc.infer(empty, *d.body);
    }
    base.add({d.name, type, d.body, file.flags});
  }
  return base;
}

}  // namespace polykernel
