#include <algorithm>
#include <functional>

#include "lexer.hpp"
#include "polykernel/weca.hpp"

namespace polykernel {

struct UTermFactory {
  static UTerm make(decltype(UNode::v) v, std::uint64_t size,
                    std::size_t fv) {
    return UTerm(std::make_shared<const UNode>(UNode{std::move(v), size, fv}));
  }
};

namespace {

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t cap = UINT64_MAX / 4;
  return std::min(cap, a + b);
}

}  // namespace

UTerm UTerm::var(std::size_t index, std::string hint) {
  return UTermFactory::make(UVar{index, std::move(hint)}, 1, index + 1);
}
UTerm UTerm::free(std::string name) {
  return UTermFactory::make(UFree{std::move(name)}, 1, 0);
}
UTerm UTerm::constant(std::string name) {
  return UTermFactory::make(UConst{std::move(name)}, 1, 0);
}
UTerm UTerm::lam(std::string hint, UTerm body) {
  const std::uint64_t size = add_sat(1, body.size());
  const std::size_t fv = body.fv_bound() > 0 ? body.fv_bound() - 1 : 0;
  return UTermFactory::make(ULam{std::move(hint), std::move(body)}, size, fv);
}
UTerm UTerm::app(UTerm fun, UTerm arg) {
  const std::uint64_t size = add_sat(1, add_sat(fun.size(), arg.size()));
  const std::size_t fv = std::max(fun.fv_bound(), arg.fv_bound());
  return UTermFactory::make(UApp{std::move(fun), std::move(arg)}, size, fv);
}
UTerm UTerm::app(UTerm fun, std::vector<UTerm> args) {
  for (auto& a : args) fun = app(std::move(fun), std::move(a));
  return fun;
}

std::uint64_t UTerm::size() const { return node_ ? node_->size : 0; }
std::size_t UTerm::fv_bound() const { return node_ ? node_->fv_bound : 0; }

bool operator==(const UTerm& a, const UTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->v.index() != b.node_->v.index()) return false;
  if (a.size() != b.size() || a.fv_bound() != b.fv_bound()) return false;
  if (auto x = a.as<UVar>()) return x->index == b.as<UVar>()->index;
  if (auto x = a.as<UFree>()) return x->name == b.as<UFree>()->name;
  if (auto x = a.as<UConst>()) return x->name == b.as<UConst>()->name;
  if (auto x = a.as<ULam>()) return x->body == b.as<ULam>()->body;
  auto x = a.as<UApp>();
  auto y = b.as<UApp>();
  return x->fun == y->fun && x->arg == y->arg;
}

bool operator<(const UTerm& a, const UTerm& b) {
  if (a.node_ == b.node_) return false;
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.node_->v.index() != b.node_->v.index())
    return a.node_->v.index() < b.node_->v.index();
  if (auto x = a.as<UVar>()) return x->index < b.as<UVar>()->index;
  if (auto x = a.as<UFree>()) return x->name < b.as<UFree>()->name;
  if (auto x = a.as<UConst>()) return x->name < b.as<UConst>()->name;
  if (auto x = a.as<ULam>()) return x->body < b.as<ULam>()->body;
  auto x = a.as<UApp>();
  auto y = b.as<UApp>();
  if (x->fun != y->fun) return x->fun < y->fun;
  return x->arg < y->arg;
}

// ---------------------------------------------------------------------------

UTerm ushift(const UTerm& t, long delta, std::size_t cutoff) {
  if (delta == 0 || t.fv_bound() <= cutoff) return t;
  if (auto v = t.as<UVar>()) {
    const long moved = static_cast<long>(v->index) + delta;
    if (moved < 0) throw std::logic_error("ushift produced a negative index");
    return UTerm::var(static_cast<std::size_t>(moved), v->hint);
  }
  if (auto l = t.as<ULam>())
    return UTerm::lam(l->hint, ushift(l->body, delta, cutoff + 1));
  auto a = t.as<UApp>();
  return UTerm::app(ushift(a->fun, delta, cutoff), ushift(a->arg, delta, cutoff));
}

namespace {

UTerm usubst_at(const UTerm& t, std::size_t index, const UTerm& s,
                std::size_t depth) {
  if (t.fv_bound() <= index + depth) return t;
  if (auto v = t.as<UVar>()) {
    if (v->index == index + depth) return ushift(s, static_cast<long>(depth));
    if (v->index > index + depth) return UTerm::var(v->index - 1, v->hint);
    return t;
  }
  if (auto l = t.as<ULam>())
    return UTerm::lam(l->hint, usubst_at(l->body, index, s, depth + 1));
  auto a = t.as<UApp>();
  return UTerm::app(usubst_at(a->fun, index, s, depth),
                    usubst_at(a->arg, index, s, depth));
}

}  // namespace

UTerm usubst(const UTerm& t, std::size_t index, const UTerm& s) {
  return usubst_at(t, index, s, 0);
}

UTerm uinstantiate(const UTerm& body, const UTerm& s) {
  return usubst(body, 0, s);
}

UTerm usubst_free(const UTerm& t, const std::string& name, const UTerm& s) {
  std::function<UTerm(const UTerm&, std::size_t)> go =
      [&](const UTerm& u, std::size_t depth) -> UTerm {
    if (auto f = u.as<UFree>())
      return f->name == name ? ushift(s, static_cast<long>(depth)) : u;
    if (auto l = u.as<ULam>()) return UTerm::lam(l->hint, go(l->body, depth + 1));
    if (auto a = u.as<UApp>())
      return UTerm::app(go(a->fun, depth), go(a->arg, depth));
    return u;
  };
  return mentions_free(t, name) ? go(t, 0) : t;
}

UTerm uabstract(const std::string& name, const UTerm& t) {
  std::function<UTerm(const UTerm&, std::size_t)> go =
      [&](const UTerm& u, std::size_t depth) -> UTerm {
    if (auto f = u.as<UFree>())
      return f->name == name ? UTerm::var(depth, name) : u;
    if (auto l = u.as<ULam>()) return UTerm::lam(l->hint, go(l->body, depth + 1));
    if (auto a = u.as<UApp>())
      return UTerm::app(go(a->fun, depth), go(a->arg, depth));
    return u;
  };
  return UTerm::lam(name, go(ushift(t, 1), 0));
}

std::set<std::string> free_names(const UTerm& t) {
  std::set<std::string> out;
  std::function<void(const UTerm&)> go = [&](const UTerm& u) {
    if (auto f = u.as<UFree>()) out.insert(f->name);
    else if (auto l = u.as<ULam>()) go(l->body);
    else if (auto a = u.as<UApp>()) {
      go(a->fun);
      go(a->arg);
    }
  };
  go(t);
  return out;
}

bool mentions_free(const UTerm& t, const std::string& name) {
  if (auto f = t.as<UFree>()) return f->name == name;
  if (auto l = t.as<ULam>()) return mentions_free(l->body, name);
  if (auto a = t.as<UApp>())
    return mentions_free(a->fun, name) || mentions_free(a->arg, name);
  return false;
}

std::pair<UTerm, std::vector<UTerm>> uspine(const UTerm& t) {
  std::vector<UTerm> args;
  UTerm head = t;
  while (auto a = head.as<UApp>()) {
    args.push_back(a->arg);
    head = a->fun;
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

// ---------------------------------------------------------------------------

namespace {

class UPrinter {
 public:
  explicit UPrinter(const UTerm& root) {
    avoid_ = free_names(root);
    collect_consts(root);
  }

  std::string go(const UTerm& t, int prec) {
    if (auto v = t.as<UVar>()) {
      if (v->index < scope_.size()) return scope_[scope_.size() - 1 - v->index];
      return "#" + std::to_string(v->index);
    }
    if (auto f = t.as<UFree>()) return f->name;
    if (auto c = t.as<UConst>()) return c->name;
    if (t.as<ULam>()) {
      std::string head = "λ";
      UTerm cur = t;
      std::size_t pushed = 0;
      bool first = true;
      while (auto l = cur.as<ULam>()) {
        std::string n = fresh(l->hint);
        scope_.push_back(n);
        ++pushed;
        head += (first ? "" : " ") + n;
        first = false;
        cur = l->body;
      }
      std::string body = go(cur, 0);
      scope_.resize(scope_.size() - pushed);
      std::string s = head + ". " + body;
      return prec > 0 ? "(" + s + ")" : s;
    }
    auto a = t.as<UApp>();
    std::string s = go(a->fun, 1) + " " + go(a->arg, 2);
    return prec > 1 ? "(" + s + ")" : s;
  }

 private:
  std::vector<std::string> scope_;
  std::set<std::string> avoid_;

  void collect_consts(const UTerm& t) {
    if (auto c = t.as<UConst>()) avoid_.insert(c->name);
    else if (auto l = t.as<ULam>()) collect_consts(l->body);
    else if (auto a = t.as<UApp>()) {
      collect_consts(a->fun);
      collect_consts(a->arg);
    }
  }

  bool taken(const std::string& n) const {
    return avoid_.count(n) ||
           std::find(scope_.begin(), scope_.end(), n) != scope_.end() ||
           detail::is_reserved_word(n);
  }

  std::string fresh(std::string hint) {
    if (hint.empty() || hint == "_") {
      static const char* const kPool[] = {"x", "y", "z", "u", "v", "w"};
      for (const char* p : kPool)
        if (!taken(p)) return p;
      hint = "x";
    }
    while (taken(hint)) hint += "'";
    return hint;
  }
};

class UParser {
 public:
  UParser(std::vector<detail::Token> toks, const std::set<std::string>& consts)
      : toks_(std::move(toks)), consts_(consts) {}

  UTerm whole() {
    UTerm t = term();
    if (peek().kind != detail::Tok::End) fail("end of input");
    return t;
  }

 private:
  std::vector<detail::Token> toks_;
  const std::set<std::string>& consts_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;

  const detail::Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(peek().at, {what},
                     peek().kind == detail::Tok::End ? "end of input"
                                                     : "'" + peek().text + "'");
  }

  UTerm term() {
    if (peek().kind == detail::Tok::Lam) {
      ++pos_;
      std::vector<std::string> names;
      while (peek().kind == detail::Tok::Ident) names.push_back(toks_[pos_++].text);
      if (names.empty()) fail("binder name");
      if (peek().kind != detail::Tok::Dot) fail("'.'");
      ++pos_;
      for (auto& n : names) scope_.push_back(n);
      UTerm body = term();
      for (std::size_t i = names.size(); i-- > 0;) {
        scope_.pop_back();
        body = UTerm::lam(names[i], body);
      }
      return body;
    }
    UTerm head = atom();
    while (starts_atom()) head = UTerm::app(head, atom());
    if (peek().kind == detail::Tok::Lam) head = UTerm::app(head, term());
    return head;
  }

  bool starts_atom() const {
    using detail::Tok;
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::JKw:
      case Tok::Refl:
      case Tok::Proj1:
      case Tok::Proj2:
        return true;
      default:
        return false;
    }
  }

  UTerm atom() {
    using detail::Tok;
    const detail::Token t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        ++pos_;
        for (std::size_t i = scope_.size(); i-- > 0;)
          if (scope_[i] == t.text)
            return UTerm::var(scope_.size() - 1 - i, t.text);
        if (consts_.count(t.text)) return UTerm::constant(t.text);
        return UTerm::free(t.text);
      }
      case Tok::JKw:
        ++pos_;
        return UTerm::constant(uconst::kJ);
      case Tok::Refl:
        ++pos_;
        return UTerm::constant(uconst::kRefl);
      case Tok::Proj1:
        ++pos_;
        return UTerm::constant(uconst::kProj1);
      case Tok::Proj2:
        ++pos_;
        return UTerm::constant(uconst::kProj2);
      case Tok::LParen: {
        ++pos_;
        UTerm inner = term();
        if (peek().kind != Tok::RParen) fail("')'");
        ++pos_;
        return inner;
      }
      default:
        fail("term");
    }
  }
};

}  // namespace

std::string print(const UTerm& t) { return UPrinter(t).go(t, 0); }

const std::set<std::string>& default_constants() {
  static const std::set<std::string> c = {uconst::kPair, uconst::kProj1,
                                          uconst::kProj2, uconst::kJ,
                                          uconst::kRefl,  "uip",
                                          "funext"};
  return c;
}

UTerm parse_untyped(const std::string& source,
                    const std::set<std::string>& constants) {
  return UParser(detail::lex(source), constants).whole();
}

}  // namespace polykernel
