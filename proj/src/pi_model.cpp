#include <memory>

#include "polykernel/model.hpp"

namespace polykernel {

std::string to_string(PIVerdict v) {
  return v == PIVerdict::Inhabited ? "Inhabited" : "Empty";
}

namespace {

// A type is a truth value; a family over a domain is either the empty
// function or a function out of the one-point set.
struct PIValue {
  bool inhabited = true;
  bool function = false;
  std::shared_ptr<const PIValue> body;  // null: empty domain
};

using Slots = std::vector<std::optional<PIValue>>;  // nullopt: term variable

class PIEval {
 public:
  explicit PIEval(const Environment& env)
      : env_(env), tc_(env, ExtensionFlags::all()) {}

  bool is_kind(const Context& ctx, const Term& t) {
    SortClass c = tc_.classify(ctx, t);
    return c == SortClass::KindExpr || c == SortClass::KindSort;
  }

  PIValue eval(const Context& ctx, Slots& slots, const Term& t) {
    if (auto v = t.as<VarNode>()) {
      const auto& s = slots.at(slots.size() - 1 - v->index);
      if (!s) throw ModelError("NotAConstructor", "term variable " + v->hint);
      return *s;
    }
    if (auto c = t.as<ConstNode>()) {
      auto it = globals_.find(c->name);
      if (it != globals_.end()) return it->second;
      const Global* g = env_.find(c->name);
      if (!g || !g->body)
        throw ModelError("NotAConstructor", "constant " + c->name);
      Slots none;
      PIValue v = eval(Context{}, none, *g->body);
      globals_[c->name] = v;
      return v;
    }
    if (auto p = t.as<PiNode>()) {
      Context inner = ctx.push(p->hint, p->domain);
      if (is_kind(ctx, p->domain)) {
        for (const PIValue& a : kind_values(ctx, slots, p->domain)) {
          slots.push_back(a);
          bool ok = eval(inner, slots, p->codomain).inhabited;
          slots.pop_back();
          if (!ok) return set(false);
        }
        return set(true);
      }
      if (!eval(ctx, slots, p->domain).inhabited) return set(true);
      slots.push_back(std::nullopt);
      PIValue r = eval(inner, slots, p->codomain);
      slots.pop_back();
      return set(r.inhabited);
    }
    if (auto s = t.as<SigmaNode>()) {
      if (!eval(ctx, slots, s->domain).inhabited) return set(false);
      slots.push_back(std::nullopt);
      PIValue r = eval(ctx.push(s->hint, s->domain), slots, s->codomain);
      slots.pop_back();
      return set(r.inhabited);
    }
    if (t.as<IdNode>()) return set(true);
    if (auto a = t.as<AppNode>()) {
      PIValue f = eval(ctx, slots, a->fun);
      if (!f.function) throw ModelError("NotAConstructor", "applied a type");
      // Arguments of an empty-domain family never exist under a modeling
      // valuation; any answer will do.
      return f.body ? *f.body : set(true);
    }
    if (auto l = t.as<LamNode>()) {
      PIValue out;
      out.function = true;
      if (eval(ctx, slots, l->annotation).inhabited) {
        slots.push_back(std::nullopt);
        out.body = std::make_shared<const PIValue>(
            eval(ctx.push(l->hint, l->annotation), slots, l->body));
        slots.pop_back();
      }
      return out;
    }
    throw ModelError("NotAConstructor", print(t, ctx.names()));
  }

  std::vector<PIValue> kind_values(const Context& ctx, Slots& slots,
                                   const Term& k) {
    if (auto s = k.as<SortNode>()) {
      if (s->kind != SortKind::Star) throw ModelError("NotAKind", "KIND");
      return {set(false), set(true)};
    }
    if (auto c = k.as<ConstNode>()) {
      const Global* g = env_.find(c->name);
      if (g && g->body) {
        Slots none;
        return kind_values(Context{}, none, *g->body);
      }
    }
    auto p = k.as<PiNode>();
    if (!p) throw ModelError("NotAKind", print(k, ctx.names()));
    PIValue fn;
    fn.function = true;
    if (!eval(ctx, slots, p->domain).inhabited) return {fn};
    slots.push_back(std::nullopt);
    auto inner = kind_values(ctx.push(p->hint, p->domain), slots, p->codomain);
    slots.pop_back();
    std::vector<PIValue> out;
    for (auto& v : inner) {
      fn.body = std::make_shared<const PIValue>(v);
      out.push_back(fn);
    }
    return out;
  }

  // True when the type holds under every valuation of ctx that models it.
  bool valid(const Context& ctx, std::size_t i, Context prefix, Slots& slots,
             const Term& type) {
    if (i == ctx.size()) return eval(prefix, slots, type).inhabited;
    const ContextEntry& e = ctx.entries()[i];
    Context next = prefix.push(e.name, e.type);
    if (is_kind(prefix, e.type)) {
      for (const PIValue& v : kind_values(prefix, slots, e.type)) {
        slots.push_back(v);
        bool ok = valid(ctx, i + 1, next, slots, type);
        slots.pop_back();
        if (!ok) return false;
      }
      return true;
    }
    if (!eval(prefix, slots, e.type).inhabited) return true;
    slots.push_back(std::nullopt);
    bool ok = valid(ctx, i + 1, next, slots, type);
    slots.pop_back();
    return ok;
  }

 private:
  const Environment& env_;
  TypeChecker tc_;
  std::map<std::string, PIValue> globals_;

  static PIValue set(bool inhabited) {
    PIValue v;
    v.inhabited = inhabited;
    return v;
  }
};

}  // namespace

PIVerdict pi_model_decide(const Environment& env, const Context& ctx,
                          const Term& type) {
  TypeChecker tc(env, ExtensionFlags::all());
  if (tc.classify(ctx, type) != SortClass::ConstructorExpr)
    throw ModelError("NotAType", print(type, ctx.names()));
  Term sort = tc.whnf(tc.infer(ctx, type));
  auto s = sort.as<SortNode>();
  if (!s || s->kind != SortKind::Star)
    throw ModelError("NotAType", print(type, ctx.names()));
  PIEval ev(env);
  Slots slots;
  return ev.valid(ctx, 0, Context{}, slots, type) ? PIVerdict::Inhabited
                                                  : PIVerdict::Empty;
}

std::size_t pi_kind_size(const Environment& env, const Context& ctx,
                         const Term& kind) {
  PIEval ev(env);
  Slots slots;
  // Only closed kinds over an empty context are supported here; term
  // variables in ctx denote the point.
  for (const auto& e : ctx.entries()) {
    (void)e;
    slots.push_back(std::nullopt);
  }
  return ev.kind_values(ctx, slots, kind).size();
}

}  // namespace polykernel
