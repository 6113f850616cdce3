#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "polykernel/syntax.hpp"

namespace polykernel {

namespace {

std::string render_error(Span at, const std::vector<std::string>& expected,
                         const std::string& found) {
  std::string msg = std::to_string(at.line) + ":" + std::to_string(at.column) +
                    ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  return msg + ", found " + found;
}

}  // namespace

ParseError::ParseError(Span at, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(render_error(at, expected, found)),
      at_(at),
      expected_(std::move(expected)) {}

namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  DeclarationFile file() {
    DeclarationFile out;
    std::set<std::string> seen;
    limit_ = end_index();
    while (peek().kind != Tok::End) {
      const Token& first = peek();
      if (first.at.column != 1)
        throw ParseError(first.at, {"declaration at column 1"},
                         found(first));
      limit_ = pos_ + 1;
      while (toks_[limit_].kind != Tok::End && toks_[limit_].at.column != 1)
        ++limit_;
      Declaration d = declaration();
      if (!seen.insert(d.name).second)
        throw ParseError(d.span, {"fresh declaration name"},
                         "'" + d.name + "'");
      if (peek().kind != Tok::End) unexpected({"end of declaration"});
      pos_ = limit_;
      limit_ = toks_.size() - 1;
      out.decls.push_back(std::move(d));
    }
    return out;
  }

  Term whole_term(std::vector<std::string> scope) {
    scope_ = std::move(scope);
    limit_ = toks_.size() - 1;
    Term t = term();
    if (peek().kind != Tok::End) unexpected({"end of input"});
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t limit_ = 0;
  std::vector<std::string> scope_;

  const Token& peek() const {
    return pos_ >= limit_ ? toks_[end_index()] : toks_[pos_];
  }
  std::size_t end_index() const { return toks_.size() - 1; }
  // End-of-declaration reports the location of the token that follows.
  Span here() const {
    return pos_ >= limit_ ? toks_[std::min(limit_, end_index())].at
                          : toks_[pos_].at;
  }
  static std::string found(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(here(), std::move(expected),
                     pos_ >= limit_ && limit_ < end_index()
                         ? "end of declaration"
                         : found(t));
  }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(Tok k) {
    if (peek().kind != k) unexpected({detail::describe(k)});
    return toks_[pos_++];
  }

  Declaration declaration() {
    Declaration d;
    d.span = peek().at;
    if (accept(Tok::Postulate)) {
      d.kind = DeclKind::Postulate;
      d.name = expect(Tok::Ident).text;
      expect(Tok::Colon);
      d.type = term();
      return d;
    }
    d.name = expect(Tok::Ident).text;
    if (accept(Tok::Colon)) {
      d.type = term();
    }
    expect(Tok::Assign);
    d.body = term();
    return d;
  }

  Term lookup(const Token& t) {
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == t.text)
        return Term::var(scope_.size() - 1 - i, t.text, t.at);
    }
    return Term::constant(t.text, t.at);
  }

  // Binder heads: `x y : A`, `x, y : A`, or any number of `(x y : A)` groups.
  // Pushes names into scope and returns (name, domain) pairs.
  std::vector<std::pair<std::string, Term>> binders() {
    std::vector<std::pair<std::string, Term>> out;
    auto group = [&](bool parenthesized) {
      std::vector<Token> names;
      do {
        names.push_back(expect(Tok::Ident));
        accept(Tok::Comma);
      } while (peek().kind == Tok::Ident);
      expect(Tok::Colon);
      if (parenthesized ? peek().kind == Tok::RParen
                        : peek().kind == Tok::Dot)
        unexpected({"domain"});
      Term dom = parenthesized ? term() : arrow_level();
      for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace_back(names[i].text, shift(dom, static_cast<long>(i)));
        scope_.push_back(names[i].text);
      }
    };
    if (peek().kind == Tok::LParen) {
      while (accept(Tok::LParen)) {
        group(true);
        expect(Tok::RParen);
      }
    } else {
      group(false);
    }
    return out;
  }

  Term term() {
    const Token& t = peek();
    const Span at = t.at;
    if (t.kind == Tok::Pi || t.kind == Tok::Lam || t.kind == Tok::Sigma) {
      const Tok former = t.kind;
      ++pos_;
      auto bs = binders();
      expect(Tok::Dot);
      Term body = term();
      for (std::size_t i = bs.size(); i-- > 0;) {
        scope_.pop_back();
        auto& [name, dom] = bs[i];
        if (former == Tok::Pi) body = Term::pi(name, dom, body, at);
        else if (former == Tok::Lam) body = Term::lam(name, dom, body, at);
        else body = Term::sigma(name, dom, body, at);
      }
      return body;
    }
    return arrow_level();
  }

  Term arrow_level() {
    Term lhs = eq_level();
    if (peek().kind == Tok::Arrow) {
      const Span at = peek().at;
      ++pos_;
      scope_.push_back("");  // unnameable binder
      Term rhs = term();
      scope_.pop_back();
      return Term::pi("_", lhs, rhs, at);
    }
    return lhs;
  }

  Term eq_level() {
    Term lhs = app_level();
    if (peek().kind == Tok::Equals) {
      const Span at = peek().at;
      ++pos_;
      expect(Tok::LBrace);
      Term ty = term();
      expect(Tok::RBrace);
      Term rhs = app_level();
      return Term::id(ty, lhs, rhs, at);
    }
    return lhs;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::Star:
      case Tok::Kind:
      case Tok::LParen:
      case Tok::LAngle:
      case Tok::IdKw:
      case Tok::JKw:
      case Tok::Refl:
        return true;
      default:
        return false;
    }
  }

  Term app_level() {
    Term head;
    if (peek().kind == Tok::Proj1 || peek().kind == Tok::Proj2) {
      const bool first = peek().kind == Tok::Proj1;
      const Span at = peek().at;
      ++pos_;
      Term of = atom();
      head = first ? Term::proj1(of, at) : Term::proj2(of, at);
    } else {
      head = atom();
    }
    while (starts_atom()) {
      const Span at = peek().at;
      head = Term::app(head, atom(), at);
    }
    return head;
  }

  Term pair_body(Span at) {
    Term a = term();
    expect(Tok::Comma);
    Term b = term();
    expect(Tok::RAngle);
    return Term::pair(a, b, std::nullopt, at);
  }

  Term atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++pos_;
        return lookup(t);
      case Tok::Star:
        ++pos_;
        return Term::star(t.at);
      case Tok::Kind:
        ++pos_;
        return Term::kind(t.at);
      case Tok::Refl:
        ++pos_;
        return Term::refl(t.at);
      case Tok::LAngle:
        ++pos_;
        return pair_body(t.at);
      case Tok::LParen: {
        ++pos_;
        if (peek().kind == Tok::LAngle) {
          const Span at = peek().at;
          ++pos_;
          Term p = pair_body(at);
          if (accept(Tok::Colon)) {
            Term ann = term();
            expect(Tok::RParen);
            auto* n = p.as<PairNode>();
            return Term::pair(n->first, n->second, ann, at);
          }
          expect(Tok::RParen);
          return p;
        }
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::IdKw: {
        ++pos_;
        expect(Tok::LParen);
        Term ty = term();
        expect(Tok::Comma);
        Term a = term();
        expect(Tok::Comma);
        Term b = term();
        expect(Tok::RParen);
        return Term::id(ty, a, b, t.at);
      }
      case Tok::JKw: {
        ++pos_;
        expect(Tok::LParen);
        std::string hx = expect(Tok::Ident).text;
        std::string hy = expect(Tok::Ident).text;
        std::string hp = expect(Tok::Ident).text;
        expect(Tok::Dot);
        scope_.push_back(hx);
        scope_.push_back(hy);
        scope_.push_back(hp);
        Term motive = term();
        scope_.resize(scope_.size() - 3);
        expect(Tok::Comma);
        Term c = term();
        expect(Tok::Comma);
        Term a = term();
        expect(Tok::Comma);
        Term b = term();
        expect(Tok::Comma);
        Term q = term();
        expect(Tok::RParen);
        return Term::j(hx, hy, hp, motive, c, a, b, q, t.at);
      }
      default:
        unexpected({"identifier", "'*'", "'('", "'⟨'", "'refl'", "'Id'",
                    "'J'"});
    }
  }
};

}  // namespace

DeclarationFile parse(const std::string& source) {
  std::vector<std::string> pragma;
  auto toks = detail::lex(source, &pragma);
  Parser p(std::move(toks));
  DeclarationFile f = p.file();
  try {
    f.flags = ExtensionFlags::from_words(pragma);
  } catch (const std::invalid_argument& e) {
    throw ParseError(Span{1, 1}, {"valid #ext pragma"}, e.what());
  }
  return f;
}

Term parse_term(const std::string& source,
                const std::vector<std::string>& scope) {
  Parser p(detail::lex(source));
  return p.whole_term(scope);
}

}  // namespace polykernel
