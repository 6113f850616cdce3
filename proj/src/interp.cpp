#include <algorithm>

#include "polykernel/model.hpp"

namespace polykernel {

std::string Semantics::fresh_name(const std::string& hint) {
  return (hint.empty() || hint == "_" ? "v" : hint) + "#" +
         std::to_string(++next_name_);
}

bool Semantics::is_kind_classifier(const Context& ctx, const Term& t) {
  SortClass c = tc_.classify(ctx, t);
  return c == SortClass::KindExpr || c == SortClass::KindSort;
}

Polyset Semantics::as_set(const ConValue& v, const Term& at) {
  if (auto p = std::get_if<Polyset>(&v)) return *p;
  throw ModelError("NotAType", "expected a type, found a family: " + print(at));
}

UTerm Semantics::erase_in(const Context& ctx, const std::vector<Slot>& slots,
                          const Term& t) {
  TermValuation rho;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i].term) rho[ctx.entries()[i].name] = slots[i].value;
  return erase(env_, ctx, t, rho);
}

ConValue Semantics::generic_of(const KindValue& k, std::size_t id,
                               std::vector<UTerm> args,
                               const std::string& label) {
  if (k.collection) return Polyset(PGeneric{id, std::move(args), label});
  auto fam = std::make_shared<ConFamily>();
  fam->domain = k.domain;
  auto codomain = k.codomain;
  fam->apply = [this, codomain, id, args, label](const UTerm& t) {
    std::vector<UTerm> more = args;
    more.push_back(t);
    return generic_of(codomain(t), id, std::move(more), label);
  };
  return std::shared_ptr<const ConFamily>(fam);
}

std::vector<ConValue> Semantics::instances(const KindValue& k,
                                           bool with_generic,
                                           std::optional<ConValue>* generic) {
  std::vector<ConValue> out;
  const std::size_t id = ++next_generic_;
  const std::string label = "X" + std::to_string(id);
  if (k.collection) {
    const UTerm K = parse_untyped("λx y. x"), Ks = parse_untyped("λx y. y");
    std::vector<Polyset> base{Polyset::empty(), Polyset::full()};
    bool exact = false;
    switch (m_.kind) {
      case StructureKind::PI:
      case StructureKind::Simple:
        exact = true;
        break;
      case StructureKind::Generated:
        base.push_back(Polyset::core_plus({}));
        base.push_back(Polyset::core_plus({K}));
        base.push_back(Polyset::core_plus({Ks}));
        base.push_back(Polyset::core_plus({K, Ks}));
        // two inert atoms: any term that rearranges its arguments escapes
        base.push_back(Polyset::core_plus({UTerm::free("◇a"), UTerm::free("◇b")}));
        break;
      case StructureKind::PowerHNF:
        base.push_back(Polyset::pred(PredKind::HasHNF));
        [[fallthrough]];
      case StructureKind::Full:
        base.push_back(Polyset::finite({K}));
        base.push_back(Polyset::finite({Ks}));
        base.push_back(Polyset::finite({K, Ks}));
        break;
    }
    if (!exact) base.insert(base.end(), witnesses_.begin(), witnesses_.end());
    for (auto& b : base) out.emplace_back(b);
    if (with_generic && generic && !exact) *generic = generic_of(k, id, {}, label);
    return out;
  }
  // Constant families, plus one generic family.
  KindValue shape = k.codomain(UTerm::free("·"));
  for (const ConValue& c : instances(shape, false, nullptr)) {
    auto fam = std::make_shared<ConFamily>();
    fam->domain = k.domain;
    fam->apply = [c](const UTerm&) { return c; };
    out.emplace_back(std::shared_ptr<const ConFamily>(fam));
  }
  if (with_generic && generic) *generic = generic_of(k, id, {}, label);
  return out;
}

KindValue Semantics::eval_kind(const Context& ctx, std::vector<Slot>& slots,
                               const Term& k) {
  if (auto s = k.as<SortNode>()) {
    if (s->kind == SortKind::Star) return KindValue{};
    throw ModelError("NotAKind", "KIND has no value");
  }
  if (auto c = k.as<ConstNode>()) {
    const Global* g = env_.find(c->name);
    if (g && g->body) {
      std::vector<Slot> none;
      return eval_kind(Context{}, none, *g->body);
    }
  }
  auto p = k.as<PiNode>();
  if (!p || is_kind_classifier(ctx, p->domain))
    throw ModelError("NotAKind", print(k, ctx.names()));
  KindValue out;
  out.collection = false;
  out.domain = as_set(eval(ctx, slots, p->domain), p->domain);
  Context inner = ctx.push(fresh_name(p->hint), p->domain);
  auto saved = slots;
  Term body = p->codomain;
  out.codomain = [this, inner, saved, body](const UTerm& t) {
    auto s = saved;
    s.push_back(Slot{true, t, {}});
    return eval_kind(inner, s, body);
  };
  return out;
}

ConValue Semantics::eval(const Context& ctx, std::vector<Slot>& slots,
                         const Term& t) {
  if (auto v = t.as<VarNode>()) {
    const Slot& s = slots.at(slots.size() - 1 - v->index);
    if (s.term) throw ModelError("NotAConstructor", "term variable " + v->hint);
    return s.con;
  }
  if (auto c = t.as<ConstNode>()) {
    auto it = globals_.find(c->name);
    if (it != globals_.end()) return it->second;
    const Global* g = env_.find(c->name);
    if (!g || !g->body) throw ModelError("NotAConstructor", "constant " + c->name);
    std::vector<Slot> none;
    ConValue v = eval(Context{}, none, *g->body);
    globals_.emplace(c->name, v);
    return v;
  }
  // Family over the term-level binder of a Π, Σ or λ.
  auto family = [&](const std::string& hint, const Term& dom, const Term& body) {
    Context inner = ctx.push(fresh_name(hint), dom);
    auto saved = slots;
    auto memo = std::make_shared<std::map<UTerm, ConValue>>();
    return [this, inner, saved, body, memo](const UTerm& x) {
      auto it = memo->find(x);
      if (it != memo->end()) return it->second;
      auto s = saved;
      s.push_back(Slot{true, x, {}});
      ConValue r = eval(inner, s, body);
      memo->emplace(x, r);
      return r;
    };
  };
  if (auto p = t.as<PiNode>()) {
    if (is_kind_classifier(ctx, p->domain)) {
      KindValue k = eval_kind(ctx, slots, p->domain);
      std::optional<ConValue> gen;
      auto insts = instances(k, true, &gen);
      Context inner = ctx.push(fresh_name(p->hint), p->domain);
      PIntersect out;
      auto under = [&](const ConValue& c) {
        slots.push_back(Slot{false, {}, c});
        Polyset r = as_set(eval(inner, slots, p->codomain), p->codomain);
        slots.pop_back();
        return r;
      };
      for (const auto& c : insts) out.instances.push_back(under(c));
      if (gen) out.generic = std::make_shared<const Polyset>(under(*gen));
      return Polyset(std::move(out));
    }
    Polyset dom = as_set(eval(ctx, slots, p->domain), p->domain);
    auto f = family(p->hint, p->domain, p->codomain);
    Term cod = p->codomain;
    return Polyset::dep_prod(dom, [this, f, cod](const UTerm& x) {
      return as_set(f(x), cod);
    });
  }
  if (auto s = t.as<SigmaNode>()) {
    Polyset dom = as_set(eval(ctx, slots, s->domain), s->domain);
    auto f = family(s->hint, s->domain, s->codomain);
    Term cod = s->codomain;
    Family fam = [this, f, cod](const UTerm& x) { return as_set(f(x), cod); };
    if (m_.kind == StructureKind::Generated) {
      // Properness: if the family is empty at the core it must be empty
      // at every probe in the domain.
      for (const auto& c : m_.core) {
        if (is_empty(fam(c)).empty != Verdict::Yes) continue;
        for (const auto& x : samples_)
          if (member(x, dom) == Verdict::Yes &&
              is_empty(fam(x)).empty == Verdict::No)
            throw ModelError("ImproperFamily",
                             "empty at " + print(c) + " but not at " + print(x));
      }
    }
    return Polyset::dep_sum(dom, fam);
  }
  if (auto id = t.as<IdNode>()) {
    Polyset dom = as_set(eval(ctx, slots, id->type), id->type);
    return Polyset::id_set(dom, erase_in(ctx, slots, id->lhs),
                           erase_in(ctx, slots, id->rhs));
  }
  if (auto a = t.as<AppNode>()) {
    ConValue f = eval(ctx, slots, a->fun);
    auto fam = std::get_if<std::shared_ptr<const ConFamily>>(&f);
    if (!fam) throw ModelError("NotAConstructor", "a type applied to a term");
    return (*fam)->apply(erase_in(ctx, slots, a->arg));
  }
  if (auto l = t.as<LamNode>()) {
    auto fam = std::make_shared<ConFamily>();
    fam->domain = as_set(eval(ctx, slots, l->annotation), l->annotation);
    fam->apply = family(l->hint, l->annotation, l->body);
    return std::shared_ptr<const ConFamily>(fam);
  }
  throw ModelError("NotAConstructor", print(t, ctx.names()));
}

std::vector<Semantics::Slot> Semantics::slots_for(const Context& ctx,
                                                  const Valuation& v,
                                                  Context& renamed) {
  std::vector<Slot> slots;
  for (const auto& e : ctx.entries()) {
    if (is_kind_classifier(renamed, e.type)) {
      auto it = v.xi.find(e.name);
      ConValue c = it != v.xi.end()
                       ? it->second
                       : generic_of(eval_kind(renamed, slots, e.type),
                                    ++next_generic_, {}, e.name);
      slots.push_back(Slot{false, {}, c});
    } else {
      auto it = v.rho.find(e.name);
      slots.push_back(
          Slot{true, it != v.rho.end() ? it->second : UTerm::free(e.name), {}});
    }
    renamed = renamed.push(fresh_name(e.name), e.type);
  }
  return slots;
}

KindValue Semantics::interp_kind(const Context& ctx, const Term& kind,
                                 const Valuation& v) {
  Context renamed;
  auto slots = slots_for(ctx, v, renamed);
  return eval_kind(renamed, slots, kind);
}

ConValue Semantics::interp_con(const Context& ctx, const Term& con,
                               const Valuation& v) {
  Context renamed;
  auto slots = slots_for(ctx, v, renamed);
  return eval(renamed, slots, con);
}

Polyset Semantics::interp_type(const Context& ctx, const Term& type,
                               const Valuation& v) {
  return as_set(interp_con(ctx, type, v), type);
}

Verdict leibniz_valid(const Environment& env, const Context& ctx,
                      const Term& t, const Term& q, const WecaConfig& weca) {
  TypeChecker tc(env, ExtensionFlags::all());
  try {
    Term a = tc.infer(ctx, t), b = tc.infer(ctx, q);
    if (!tc.convertible(ctx, a, b))
      throw ModelError("IllTyped", "the two sides have different types");
  } catch (const TypeError& e) {
    throw ModelError("IllTyped", e.what());
  }
  return weca_eq(erase(env, ctx, t), erase(env, ctx, q), weca);
}

}  // namespace polykernel
