#include <algorithm>

#include "lexer.hpp"
#include "polykernel/syntax.hpp"

namespace polykernel {

namespace {

enum Prec { kTerm = 0, kApp = 2, kAtom = 3 };

class Printer {
 public:
  explicit Printer(std::vector<std::string> scope) : scope_(std::move(scope)) {}

  std::string go(const Term& t, int prec) {
    return std::visit([&](const auto& x) { return node(t, x, prec); },
                      t.node().v);
  }

 private:
  std::vector<std::string> scope_;

  static std::string paren(bool wrap, std::string s) {
    return wrap ? "(" + s + ")" : s;
  }

  bool taken(const std::string& name, const Term& body) {
    if (detail::is_reserved_word(name)) return true;
    if (std::find(scope_.begin(), scope_.end(), name) != scope_.end())
      return true;
    std::vector<std::string> consts;
    collect_constants(body, consts);
    return std::find(consts.begin(), consts.end(), name) != consts.end();
  }

  std::string fresh(std::string hint, const Term& body) {
    if (hint.empty() || hint == "_") hint = "x";
    while (taken(hint, body)) hint += "'";
    return hint;
  }

  std::string node(const Term&, const SortNode& s, int) {
    return s.kind == SortKind::Star ? "*" : "KIND";
  }
  std::string node(const Term&, const VarNode& v, int) {
    if (v.index < scope_.size()) {
      const std::string& n = scope_[scope_.size() - 1 - v.index];
      if (!n.empty()) return n;
    }
    // Out-of-scope indices only show up in debugging output.
    return "#" + std::to_string(v.index);
  }
  std::string node(const Term&, const ConstNode& c, int) { return c.name; }

  std::string binder(const char* sym, const std::string& hint,
                     const Term& dom, const Term& body, int prec) {
    std::string d = go(dom, kTerm);
    // Binder forms in a domain need parentheses.
    if (dom.as<LamNode>() || dom.as<SigmaNode>() ||
        (dom.as<PiNode>() && occurs_free(dom.as<PiNode>()->codomain, 0)))
      d = "(" + go(dom, kTerm) + ")";
    const std::string name = fresh(hint, body);
    scope_.push_back(name);
    std::string b = go(body, kTerm);
    scope_.pop_back();
    return paren(prec > kTerm,
                 std::string(sym) + name + ":" + d + ". " + b);
  }

  std::string node(const Term&, const PiNode& p, int prec) {
    if (!occurs_free(p.codomain, 0)) {
      std::string lhs = go(p.domain, kApp);
      scope_.push_back("");
      std::string rhs = go(p.codomain, kTerm);
      scope_.pop_back();
      return paren(prec > kTerm, lhs + " → " + rhs);
    }
    return binder("Π", p.hint, p.domain, p.codomain, prec);
  }
  std::string node(const Term&, const LamNode& l, int prec) {
    return binder("λ", l.hint, l.annotation, l.body, prec);
  }
  std::string node(const Term&, const SigmaNode& s, int prec) {
    return binder("Σ", s.hint, s.domain, s.codomain, prec);
  }
  std::string node(const Term&, const AppNode& a, int prec) {
    return paren(prec > kApp, go(a.fun, kApp) + " " + go(a.arg, kAtom));
  }
  std::string node(const Term&, const PairNode& p, int) {
    std::string body = "⟨" + go(p.first, kTerm) + ", " + go(p.second, kTerm) +
                       "⟩";
    if (p.annotation) return "(" + body + " : " + go(*p.annotation, kTerm) + ")";
    return body;
  }
  std::string node(const Term&, const Proj1Node& p, int prec) {
    return paren(prec > kApp, "π1 " + go(p.of, kAtom));
  }
  std::string node(const Term&, const Proj2Node& p, int prec) {
    return paren(prec > kApp, "π2 " + go(p.of, kAtom));
  }
  std::string node(const Term&, const IdNode& i, int) {
    return "Id(" + go(i.type, kTerm) + ", " + go(i.lhs, kTerm) + ", " +
           go(i.rhs, kTerm) + ")";
  }
  std::string node(const Term&, const ReflNode&, int) { return "refl"; }
  std::string node(const Term&, const JNode& j, int) {
    std::string hx = fresh(j.hx, j.motive);
    scope_.push_back(hx);
    std::string hy = fresh(j.hy, j.motive);
    scope_.push_back(hy);
    std::string hp = fresh(j.hp, j.motive);
    scope_.push_back(hp);
    std::string m = go(j.motive, kTerm);
    scope_.resize(scope_.size() - 3);
    return "J(" + hx + " " + hy + " " + hp + ". " + m + ", " +
           go(j.c, kTerm) + ", " + go(j.a, kTerm) + ", " + go(j.b, kTerm) +
           ", " + go(j.q, kTerm) + ")";
  }
};

}  // namespace

std::string print(const Term& t, const std::vector<std::string>& scope) {
  return Printer(scope).go(t, kTerm);
}

std::string print(const DeclarationFile& file) {
  std::string out;
  auto words = file.flags.words();
  if (!words.empty()) {
    out += "#ext";
    for (const auto& w : words) out += " " + w;
    out += "\n";
  }
  for (const auto& d : file.decls) {
    if (d.kind == DeclKind::Postulate) {
      out += "postulate " + d.name + " : " + print(*d.type) + "\n";
      continue;
    }
    out += d.name;
    if (d.type) out += " : " + print(*d.type);
    out += " := " + print(*d.body) + "\n";
  }
  return out;
}

}  // namespace polykernel
