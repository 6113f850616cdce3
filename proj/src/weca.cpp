#include "polykernel/weca.hpp"

#include <functional>

namespace polykernel {

WecaConfig WecaConfig::beta() {
  WecaConfig c;
  c.name = "beta";
  c.rules = {Rule::Beta};
  return c;
}

WecaConfig WecaConfig::betaeta() {
  WecaConfig c;
  c.name = "betaeta";
  c.rules = {Rule::Beta, Rule::Eta};
  return c;
}

WecaConfig WecaConfig::lambda_c(std::set<std::string> constants) {
  WecaConfig c;
  c.name = "lambda-c";
  c.rules = {Rule::Beta, Rule::CAbsorb};
  c.absorbing = std::move(constants);
  return c;
}

WecaConfig WecaConfig::lambda_id() {
  WecaConfig c;
  c.name = "lambda-id";
  c.rules = {Rule::Beta, Rule::JIota, Rule::ReflAbsorb, Rule::ProjBeta,
             Rule::ProjRefl};
  return c;
}

WecaConfig WecaConfig::one() {
  WecaConfig c;
  c.name = "one";
  c.degenerate = true;
  return c;
}

WecaConfig WecaConfig::from_name(const std::string& name) {
  if (name == "beta") return beta();
  if (name == "betaeta") return betaeta();
  if (name == "lambda-c") return lambda_c({"c"});
  if (name == "lambda-id") return lambda_id();
  if (name == "one") return one();
  throw std::invalid_argument("unknown WECA '" + name +
                              "' (expected beta, betaeta, lambda-c, "
                              "lambda-id or one)");
}

WecaConfig WecaConfig::with_fuel(std::size_t f) const {
  WecaConfig c = *this;
  c.fuel = f;
  return c;
}

namespace {

bool is_const(const UTerm& t, const char* name) {
  auto c = t.as<UConst>();
  return c && c->name == name;
}

bool occurs_index(const UTerm& t, std::size_t index) {
  if (t.fv_bound() <= index) return false;
  if (auto v = t.as<UVar>()) return v->index == index;
  if (auto l = t.as<ULam>()) return occurs_index(l->body, index + 1);
  auto a = t.as<UApp>();
  return occurs_index(a->fun, index) || occurs_index(a->arg, index);
}

std::optional<UTerm> contract_root(const UTerm& t, const WecaConfig& cfg) {
  if (auto l = t.as<ULam>()) {
    if (cfg.has(Rule::Eta)) {
      if (auto a = l->body.as<UApp>()) {
        auto v = a->arg.as<UVar>();
        if (v && v->index == 0 && !occurs_index(a->fun, 0))
          return ushift(a->fun, -1);
      }
    }
    return std::nullopt;
  }
  auto a = t.as<UApp>();
  if (!a) return std::nullopt;
  if (cfg.has(Rule::Beta)) {
    if (auto l = a->fun.as<ULam>()) return uinstantiate(l->body, a->arg);
  }
  if (auto c = a->fun.as<UConst>()) {
    if (cfg.has(Rule::CAbsorb) && cfg.absorbing.count(c->name)) return a->fun;
    if (cfg.has(Rule::ReflAbsorb) && c->name == uconst::kRefl) return a->fun;
    const bool p1 = c->name == uconst::kProj1;
    const bool p2 = c->name == uconst::kProj2;
    if (p1 || p2) {
      if (cfg.has(Rule::ProjRefl) && is_const(a->arg, uconst::kRefl))
        return a->arg;
      if (cfg.has(Rule::ProjBeta)) {
        auto [head, args] = uspine(a->arg);
        if (args.size() == 2 && is_const(head, uconst::kPair))
          return p1 ? args[0] : args[1];
      }
    }
  }
  if (cfg.has(Rule::JIota) && is_const(a->arg, uconst::kRefl)) {
    auto [head, args] = uspine(t);
    if (args.size() == 4 && is_const(head, uconst::kJ))
      return UTerm::app(args[0], args[1]);
  }
  return std::nullopt;
}

// Leftmost-outermost: root, then function part, then argument / body.
std::optional<UTerm> step_lo(const UTerm& t, const WecaConfig& cfg) {
  if (auto r = contract_root(t, cfg)) return r;
  if (auto l = t.as<ULam>()) {
    if (auto b = step_lo(l->body, cfg)) return UTerm::lam(l->hint, *b);
    return std::nullopt;
  }
  if (auto a = t.as<UApp>()) {
    if (auto f = step_lo(a->fun, cfg)) return UTerm::app(*f, a->arg);
    if (auto x = step_lo(a->arg, cfg)) return UTerm::app(a->fun, *x);
  }
  return std::nullopt;
}

}  // namespace

std::optional<UTerm> step(const UTerm& t, const WecaConfig& cfg) {
  if (cfg.degenerate) return std::nullopt;
  return step_lo(t, cfg);
}

bool is_normal(const UTerm& t, const WecaConfig& cfg) {
  return count_redexes(t, cfg) == 0;
}

std::size_t count_redexes(const UTerm& t, const WecaConfig& cfg) {
  if (cfg.degenerate) return 0;
  std::size_t n = contract_root(t, cfg) ? 1 : 0;
  if (auto l = t.as<ULam>()) return n + count_redexes(l->body, cfg);
  if (auto a = t.as<UApp>())
    return n + count_redexes(a->fun, cfg) + count_redexes(a->arg, cfg);
  return n;
}

namespace {

std::optional<UTerm> contract_nth_(const UTerm& t, const WecaConfig& cfg,
                                   std::size_t& k) {
  if (auto r = contract_root(t, cfg)) {
    if (k == 0) return r;
    --k;
  }
  if (auto l = t.as<ULam>()) {
    if (auto b = contract_nth_(l->body, cfg, k)) return UTerm::lam(l->hint, *b);
  } else if (auto a = t.as<UApp>()) {
    if (auto f = contract_nth_(a->fun, cfg, k)) return UTerm::app(*f, a->arg);
    if (auto x = contract_nth_(a->arg, cfg, k)) return UTerm::app(a->fun, *x);
  }
  return std::nullopt;
}

std::optional<NormalForm> run(const UTerm& t, const WecaConfig& cfg,
                              const std::function<std::optional<UTerm>(
                                  const UTerm&)>& next) {
  if (cfg.degenerate) return NormalForm{UTerm::constant("•"), 0};
  UTerm cur = t;
  for (std::size_t steps = 0;; ++steps) {
    auto n = next(cur);
    if (!n) return NormalForm{cur, steps};
    if (steps >= cfg.fuel || n->size() > cfg.size_cap) return std::nullopt;
    cur = std::move(*n);
  }
}

}  // namespace

UTerm contract_nth(const UTerm& t, const WecaConfig& cfg, std::size_t k) {
  auto r = contract_nth_(t, cfg, k);
  if (!r) throw std::out_of_range("contract_nth: no such redex");
  return *r;
}

std::optional<NormalForm> normalize(const UTerm& t, const WecaConfig& cfg) {
  return run(t, cfg, [&](const UTerm& u) { return step_lo(u, cfg); });
}

std::optional<NormalForm> normalize_random(const UTerm& t,
                                           const WecaConfig& cfg,
                                           std::mt19937_64& rng) {
  return run(t, cfg, [&](const UTerm& u) -> std::optional<UTerm> {
    const std::size_t n = count_redexes(u, cfg);
    if (n == 0) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    return contract_nth(u, cfg, pick(rng));
  });
}

std::optional<UTerm> head_normalize(const UTerm& t, const WecaConfig& cfg) {
  if (cfg.degenerate) return t;
  // Rebuilds a term from lambdas around a spine.
  UTerm cur = t;
  for (std::size_t steps = 0;; ++steps) {
    std::vector<std::string> binders;
    UTerm body = cur;
    while (auto l = body.as<ULam>()) {
      binders.push_back(l->hint);
      body = l->body;
    }
    auto [head, args] = uspine(body);
    std::optional<UTerm> contracted;
    std::size_t at = 0;
    for (std::size_t i = args.size(); i-- > 0 && !contracted;) {
      UTerm prefix = UTerm::app(head, std::vector<UTerm>(args.begin(),
                                                         args.begin() + i + 1));
      if (auto r = contract_root(prefix, cfg)) {
        contracted = r;
        at = i + 1;
      }
    }
    if (!contracted && cfg.has(Rule::Eta)) {
      if (auto r = contract_root(cur, cfg)) {
        if (steps >= cfg.fuel) return std::nullopt;
        cur = *r;
        continue;
      }
    }
    if (!contracted) return cur;
    if (steps >= cfg.fuel) return std::nullopt;
    UTerm rebuilt = UTerm::app(
        *contracted, std::vector<UTerm>(args.begin() + at, args.end()));
    for (std::size_t i = binders.size(); i-- > 0;)
      rebuilt = UTerm::lam(binders[i], rebuilt);
    if (rebuilt.size() > cfg.size_cap) return std::nullopt;
    cur = rebuilt;
  }
}

Verdict weca_eq(const UTerm& t, const UTerm& u, const WecaConfig& cfg) {
  if (cfg.degenerate) return Verdict::Yes;
  if (t == u) return Verdict::Yes;
  auto a = normalize(t, cfg);
  if (!a) return Verdict::Unknown;
  auto b = normalize(u, cfg);
  if (!b) return Verdict::Unknown;
  return a->term == b->term ? Verdict::Yes : Verdict::No;
}

// ---------------------------------------------------------------------------

namespace {

class Eraser {
 public:
  Eraser(const Environment& env, ExtensionFlags flags, TermValuation rho)
      : env_(env), tc_(env, flags), rho_(std::move(rho)) {}

  // Slots mirror the typing context: constructor variables erase to
  // nothing, term binders become de Bruijn variables, outer term
  // variables take their valuation.
  struct Slot {
    enum Kind { Constructor, Bound, Outer } kind;
    std::size_t level = 0;  // for Bound: number of term binders outside it
    UTerm value;            // for Outer
  };

  UTerm top(const Context& ctx, const Term& t) {
    std::vector<Slot> slots;
    Context prefix;
    for (const auto& e : ctx.entries()) {
      if (is_kind(prefix, e.type)) {
        slots.push_back({Slot::Constructor, 0, {}});
      } else {
        auto it = rho_.find(e.name);
        if (it != rho_.end()) {
          slots.push_back({Slot::Outer, 0, it->second});
        } else if (e.name.empty() || e.name == "_") {
          // unreferenced in practice; a distinct name keeps it apart from others
          slots.push_back({Slot::Outer, 0, UTerm::free("_" + std::to_string(slots.size()))});
        } else {
          slots.push_back({Slot::Outer, 0, UTerm::free(e.name)});
        }
      }
      prefix = prefix.push(e.name, e.type);
    }
    return go(ctx, slots, 0, t);
  }

 private:
  const Environment& env_;
  TypeChecker tc_;
  TermValuation rho_;
  std::map<std::string, UTerm> globals_;

  bool is_kind(const Context& ctx, const Term& classifier) {
    if (classifier.as<SortNode>()) return true;
    Term s = tc_.whnf(tc_.infer(ctx, classifier));
    auto sort = s.as<SortNode>();
    return sort && sort->kind == SortKind::Kind;
  }

  bool is_constructor(const Context& ctx, const Term& t) {
    SortClass c = tc_.classify(ctx, t);
    return c == SortClass::ConstructorExpr || c == SortClass::KindExpr ||
           c == SortClass::KindSort;
  }

  UTerm global(const std::string& name) {
    auto it = globals_.find(name);
    if (it != globals_.end()) return it->second;
    const Global* g = env_.find(name);
    UTerm out;
    if (!g) {
      if (name == "uip" || name == "funext") out = UTerm::constant(name);
      else throw ErasureError("UnassignedVariable: unknown constant '" + name + "'");
    } else if (!g->body) {
      out = UTerm::free(name);
    } else {
      std::vector<Slot> none;
      out = go(Context{}, none, 0, *g->body);
    }
    globals_[name] = out;
    return out;
  }

  UTerm go(const Context& ctx, std::vector<Slot>& slots, std::size_t depth,
           const Term& t) {
    if (auto v = t.as<VarNode>()) {
      const Slot& s = slots.at(slots.size() - 1 - v->index);
      switch (s.kind) {
        case Slot::Bound:
          return UTerm::var(depth - 1 - s.level, v->hint);
        case Slot::Outer:
          return ushift(s.value, static_cast<long>(depth));
        case Slot::Constructor:
          throw ErasureError("constructor variable '" + v->hint +
                             "' in term position");
      }
    }
    if (auto c = t.as<ConstNode>()) return ushift(global(c->name), static_cast<long>(depth));
    if (auto l = t.as<LamNode>()) {
      Context inner = ctx.push(l->hint, l->annotation);
      if (is_kind(ctx, l->annotation)) {
        slots.push_back({Slot::Constructor, 0, {}});
        UTerm b = go(inner, slots, depth, l->body);
        slots.pop_back();
        return b;
      }
      slots.push_back({Slot::Bound, depth, {}});
      UTerm b = go(inner, slots, depth + 1, l->body);
      slots.pop_back();
      return UTerm::lam(l->hint, b);
    }
    if (auto a = t.as<AppNode>()) {
      UTerm f = go(ctx, slots, depth, a->fun);
      if (is_constructor(ctx, a->arg)) return f;
      return UTerm::app(f, go(ctx, slots, depth, a->arg));
    }
    if (auto p = t.as<PairNode>())
      return UTerm::app(UTerm::constant(uconst::kPair),
                        {go(ctx, slots, depth, p->first),
                         go(ctx, slots, depth, p->second)});
    if (auto p = t.as<Proj1Node>())
      return UTerm::app(UTerm::constant(uconst::kProj1),
                        go(ctx, slots, depth, p->of));
    if (auto p = t.as<Proj2Node>())
      return UTerm::app(UTerm::constant(uconst::kProj2),
                        go(ctx, slots, depth, p->of));
    if (t.as<ReflNode>()) return UTerm::constant(uconst::kRefl);
    if (auto j = t.as<JNode>())
      return UTerm::app(UTerm::constant(uconst::kJ),
                        {go(ctx, slots, depth, j->c), go(ctx, slots, depth, j->a),
                         go(ctx, slots, depth, j->b), go(ctx, slots, depth, j->q)});
    throw ErasureError("cannot erase a type or kind: " + print(t, ctx.names()));
  }
};

}  // namespace

UTerm erase(const Environment& env, const Context& ctx, const Term& t,
            const TermValuation& rho, ExtensionFlags flags) {
  return Eraser(env, flags, rho).top(ctx, t);
}

}  // namespace polykernel
