#include "polykernel/syntax.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace polykernel {

// Term has a private constructor; the factories below are the only way in.
struct TermFactory {
  template <typename T>
  static Term make(T payload, Span at) {
    return Term(std::make_shared<const Node>(Node{std::move(payload), at}));
  }
};

namespace {

template <typename T>
Term make(T&& payload, Span at) {
  return TermFactory::make(std::forward<T>(payload), at);
}

}  // namespace

Term Term::star(Span at) { return make(SortNode{SortKind::Star}, at); }
Term Term::kind(Span at) { return make(SortNode{SortKind::Kind}, at); }
Term Term::var(std::size_t index, std::string hint, Span at) {
  return make(VarNode{index, std::move(hint)}, at);
}
Term Term::constant(std::string name, Span at) {
  return make(ConstNode{std::move(name)}, at);
}
Term Term::pi(std::string hint, Term domain, Term codomain, Span at) {
  return make(PiNode{std::move(hint), std::move(domain), std::move(codomain)},
              at);
}
Term Term::arrow(Term domain, Term codomain, Span at) {
  return pi("_", std::move(domain), shift(codomain, 1), at);
}
Term Term::lam(std::string hint, Term annotation, Term body, Span at) {
  return make(LamNode{std::move(hint), std::move(annotation), std::move(body)},
              at);
}
Term Term::app(Term fun, Term arg, Span at) {
  return make(AppNode{std::move(fun), std::move(arg)}, at);
}
Term Term::app(Term fun, std::vector<Term> args) {
  for (auto& a : args) fun = app(std::move(fun), std::move(a));
  return fun;
}
Term Term::sigma(std::string hint, Term domain, Term codomain, Span at) {
  return make(
      SigmaNode{std::move(hint), std::move(domain), std::move(codomain)}, at);
}
Term Term::pair(Term first, Term second, std::optional<Term> annotation,
                Span at) {
  return make(
      PairNode{std::move(first), std::move(second), std::move(annotation)},
      at);
}
Term Term::proj1(Term of, Span at) { return make(Proj1Node{std::move(of)}, at); }
Term Term::proj2(Term of, Span at) { return make(Proj2Node{std::move(of)}, at); }
Term Term::id(Term type, Term lhs, Term rhs, Span at) {
  return make(IdNode{std::move(type), std::move(lhs), std::move(rhs)}, at);
}
Term Term::refl(Span at) { return make(ReflNode{}, at); }
Term Term::j(std::string hx, std::string hy, std::string hp, Term motive,
             Term c, Term a, Term b, Term q, Span at) {
  return make(JNode{std::move(hx), std::move(hy), std::move(hp),
                    std::move(motive), std::move(c), std::move(a),
                    std::move(b), std::move(q)},
              at);
}

Span Term::span() const { return node_ ? node_->span : Span{}; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->v.index() != b.node_->v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node_->v);
        if constexpr (std::is_same_v<T, SortNode>) {
          return x.kind == y.kind;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return x.index == y.index;
        } else if constexpr (std::is_same_v<T, ConstNode>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, PiNode> ||
                             std::is_same_v<T, SigmaNode>) {
          return x.domain == y.domain && x.codomain == y.codomain;
        } else if constexpr (std::is_same_v<T, LamNode>) {
          return x.annotation == y.annotation && x.body == y.body;
        } else if constexpr (std::is_same_v<T, AppNode>) {
          return x.fun == y.fun && x.arg == y.arg;
        } else if constexpr (std::is_same_v<T, PairNode>) {
          if (x.annotation.has_value() != y.annotation.has_value())
            return false;
          if (x.annotation && !(*x.annotation == *y.annotation)) return false;
          return x.first == y.first && x.second == y.second;
        } else if constexpr (std::is_same_v<T, Proj1Node> ||
                             std::is_same_v<T, Proj2Node>) {
          return x.of == y.of;
        } else if constexpr (std::is_same_v<T, IdNode>) {
          return x.type == y.type && x.lhs == y.lhs && x.rhs == y.rhs;
        } else if constexpr (std::is_same_v<T, ReflNode>) {
          return true;
        } else {
          static_assert(std::is_same_v<T, JNode>);
          return x.motive == y.motive && x.c == y.c && x.a == y.a &&
                 x.b == y.b && x.q == y.q;
        }
      },
      a.node_->v);
}

namespace {

// Generic structural map: `on_var(node, depth)` decides what happens to
// variables; binders increase depth.
using VarFn = std::function<Term(const VarNode&, Span, std::size_t)>;

Term map_vars(const Term& t, std::size_t depth, const VarFn& on_var) {
  const Span at = t.span();
  return std::visit(
      [&](const auto& x) -> Term {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SortNode> ||
                      std::is_same_v<T, ConstNode> ||
                      std::is_same_v<T, ReflNode>) {
          return t;
        } else if constexpr (std::is_same_v<T, VarNode>) {
          return on_var(x, at, depth);
        } else if constexpr (std::is_same_v<T, PiNode>) {
          return Term::pi(x.hint, map_vars(x.domain, depth, on_var),
                          map_vars(x.codomain, depth + 1, on_var), at);
        } else if constexpr (std::is_same_v<T, SigmaNode>) {
          return Term::sigma(x.hint, map_vars(x.domain, depth, on_var),
                             map_vars(x.codomain, depth + 1, on_var), at);
        } else if constexpr (std::is_same_v<T, LamNode>) {
          return Term::lam(x.hint, map_vars(x.annotation, depth, on_var),
                           map_vars(x.body, depth + 1, on_var), at);
        } else if constexpr (std::is_same_v<T, AppNode>) {
          return Term::app(map_vars(x.fun, depth, on_var),
                           map_vars(x.arg, depth, on_var), at);
        } else if constexpr (std::is_same_v<T, PairNode>) {
          std::optional<Term> ann;
          if (x.annotation) ann = map_vars(*x.annotation, depth, on_var);
          return Term::pair(map_vars(x.first, depth, on_var),
                            map_vars(x.second, depth, on_var), ann, at);
        } else if constexpr (std::is_same_v<T, Proj1Node>) {
          return Term::proj1(map_vars(x.of, depth, on_var), at);
        } else if constexpr (std::is_same_v<T, Proj2Node>) {
          return Term::proj2(map_vars(x.of, depth, on_var), at);
        } else if constexpr (std::is_same_v<T, IdNode>) {
          return Term::id(map_vars(x.type, depth, on_var),
                          map_vars(x.lhs, depth, on_var),
                          map_vars(x.rhs, depth, on_var), at);
        } else {
          static_assert(std::is_same_v<T, JNode>);
          return Term::j(x.hx, x.hy, x.hp,
                         map_vars(x.motive, depth + 3, on_var),
                         map_vars(x.c, depth, on_var),
                         map_vars(x.a, depth, on_var),
                         map_vars(x.b, depth, on_var),
                         map_vars(x.q, depth, on_var), at);
        }
      },
      t.node().v);
}

void for_each_child(const Term& t, std::size_t depth,
                    const std::function<void(const Term&, std::size_t)>& f) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PiNode> ||
                      std::is_same_v<T, SigmaNode>) {
          f(x.domain, depth);
          f(x.codomain, depth + 1);
        } else if constexpr (std::is_same_v<T, LamNode>) {
          f(x.annotation, depth);
          f(x.body, depth + 1);
        } else if constexpr (std::is_same_v<T, AppNode>) {
          f(x.fun, depth);
          f(x.arg, depth);
        } else if constexpr (std::is_same_v<T, PairNode>) {
          f(x.first, depth);
          f(x.second, depth);
          if (x.annotation) f(*x.annotation, depth);
        } else if constexpr (std::is_same_v<T, Proj1Node> ||
                             std::is_same_v<T, Proj2Node>) {
          f(x.of, depth);
        } else if constexpr (std::is_same_v<T, IdNode>) {
          f(x.type, depth);
          f(x.lhs, depth);
          f(x.rhs, depth);
        } else if constexpr (std::is_same_v<T, JNode>) {
          f(x.motive, depth + 3);
          f(x.c, depth);
          f(x.a, depth);
          f(x.b, depth);
          f(x.q, depth);
        }
      },
      t.node().v);
}

}  // namespace

Term shift(const Term& t, long delta, std::size_t cutoff) {
  if (delta == 0) return t;
  return map_vars(t, cutoff, [delta](const VarNode& v, Span at, std::size_t d) {
    if (v.index < d) return Term::var(v.index, v.hint, at);
    const long moved = static_cast<long>(v.index) + delta;
    if (moved < 0) throw std::logic_error("shift produced a negative index");
    return Term::var(static_cast<std::size_t>(moved), v.hint, at);
  });
}

Term subst(const Term& t, std::size_t index, const Term& s) {
  return map_vars(t, 0, [&](const VarNode& v, Span at, std::size_t d) {
    if (v.index < d) return Term::var(v.index, v.hint, at);
    const std::size_t free = v.index - d;
    if (free == index) return shift(s, static_cast<long>(d));
    if (free > index) return Term::var(v.index - 1, v.hint, at);
    return Term::var(v.index, v.hint, at);
  });
}

Term instantiate(const Term& body, const Term& s) { return subst(body, 0, s); }

bool occurs_free(const Term& t, std::size_t index) {
  bool found = false;
  std::function<void(const Term&, std::size_t)> walk =
      [&](const Term& u, std::size_t depth) {
        if (found) return;
        if (auto v = u.as<VarNode>()) {
          if (v->index == index + depth) found = true;
          return;
        }
        for_each_child(u, depth, walk);
      };
  walk(t, 0);
  return found;
}

std::vector<std::size_t> free_indices(const Term& t) {
  std::set<std::size_t> out;
  std::function<void(const Term&, std::size_t)> walk =
      [&](const Term& u, std::size_t depth) {
        if (auto v = u.as<VarNode>()) {
          if (v->index >= depth) out.insert(v->index - depth);
          return;
        }
        for_each_child(u, depth, walk);
      };
  walk(t, 0);
  return {out.begin(), out.end()};
}

std::size_t term_size(const Term& t) {
  std::size_t n = 0;
  std::function<void(const Term&, std::size_t)> walk =
      [&](const Term& u, std::size_t depth) {
        ++n;
        for_each_child(u, depth, walk);
      };
  walk(t, 0);
  return n;
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (auto a = head.as<AppNode>()) {
    args.push_back(a->arg);
    head = a->fun;
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

bool uses_extensions(const Term& t) {
  bool found = false;
  std::function<void(const Term&, std::size_t)> walk =
      [&](const Term& u, std::size_t depth) {
        if (found) return;
        if (u.as<SigmaNode>() || u.as<PairNode>() || u.as<Proj1Node>() ||
            u.as<Proj2Node>() || u.as<IdNode>() || u.as<ReflNode>() ||
            u.as<JNode>()) {
          found = true;
          return;
        }
        for_each_child(u, depth, walk);
      };
  walk(t, 0);
  return found;
}

void collect_constants(const Term& t, std::vector<std::string>& out) {
  std::function<void(const Term&, std::size_t)> walk =
      [&](const Term& u, std::size_t depth) {
        if (auto c = u.as<ConstNode>()) {
          if (std::find(out.begin(), out.end(), c->name) == out.end())
            out.push_back(c->name);
          return;
        }
        for_each_child(u, depth, walk);
      };
  walk(t, 0);
}

// ---------------------------------------------------------------------------

void ExtensionFlags::validate() const {
  if ((uip_postulate || funext_postulate) && !identity)
    throw std::invalid_argument(
        "uip/funext postulates require the identity extension");
}

ExtensionFlags ExtensionFlags::from_words(
    const std::vector<std::string>& words) {
  ExtensionFlags f;
  for (const auto& w : words) {
    if (w == "sigma") f.sigma = true;
    else if (w == "id" || w == "identity") f.identity = true;
    else if (w == "uip") f.uip_postulate = true;
    else if (w == "funext") f.funext_postulate = true;
    else throw std::invalid_argument("unknown extension '" + w + "'");
  }
  f.validate();
  return f;
}

ExtensionFlags ExtensionFlags::all() { return {true, true, true, true}; }

std::vector<std::string> ExtensionFlags::words() const {
  std::vector<std::string> out;
  if (sigma) out.push_back("sigma");
  if (identity) out.push_back("id");
  if (uip_postulate) out.push_back("uip");
  if (funext_postulate) out.push_back("funext");
  return out;
}

bool ExtensionFlags::covers(const ExtensionFlags& needed) const {
  return (sigma || !needed.sigma) && (identity || !needed.identity) &&
         (uip_postulate || !needed.uip_postulate) &&
         (funext_postulate || !needed.funext_postulate);
}

}  // namespace polykernel
