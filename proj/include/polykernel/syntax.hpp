#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polykernel {

struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Node;

// Immutable handle to a pseudo-term. Binders are nameless (de Bruijn
// indices); the `hint` fields only steer printing.
class Term {
 public:
  Term() = default;

  static Term star(Span at = {});
  static Term kind(Span at = {});
  static Term var(std::size_t index, std::string hint = {}, Span at = {});
  static Term constant(std::string name, Span at = {});
  static Term pi(std::string hint, Term domain, Term codomain, Span at = {});
  static Term arrow(Term domain, Term codomain, Span at = {});
  static Term lam(std::string hint, Term annotation, Term body, Span at = {});
  static Term app(Term fun, Term arg, Span at = {});
  static Term app(Term fun, std::vector<Term> args);
  static Term sigma(std::string hint, Term domain, Term codomain, Span at = {});
  static Term pair(Term first, Term second, std::optional<Term> annotation = {},
                   Span at = {});
  static Term proj1(Term of, Span at = {});
  static Term proj2(Term of, Span at = {});
  static Term id(Term type, Term lhs, Term rhs, Span at = {});
  static Term refl(Span at = {});
  // `motive` lives under three binders: x (index 2), y (1), p (0).
  static Term j(std::string hx, std::string hy, std::string hp, Term motive,
                Term c, Term a, Term b, Term q, Span at = {});

  const Node& node() const { return *node_; }
  Span span() const;
  bool valid() const { return node_ != nullptr; }

  template <typename T>
  const T* as() const;

  // Structural identity ignoring name hints, i.e. alpha-equivalence.
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  friend struct TermFactory;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class SortKind { Star, Kind };

struct SortNode {
  SortKind kind;
};
struct VarNode {
  std::size_t index;
  std::string hint;
};
struct ConstNode {
  std::string name;
};
struct PiNode {
  std::string hint;
  Term domain;
  Term codomain;
};
struct LamNode {
  std::string hint;
  Term annotation;
  Term body;
};
struct AppNode {
  Term fun;
  Term arg;
};
struct SigmaNode {
  std::string hint;
  Term domain;
  Term codomain;
};
struct PairNode {
  Term first;
  Term second;
  std::optional<Term> annotation;
};
struct Proj1Node {
  Term of;
};
struct Proj2Node {
  Term of;
};
struct IdNode {
  Term type;
  Term lhs;
  Term rhs;
};
struct ReflNode {};
struct JNode {
  std::string hx, hy, hp;
  Term motive;
  Term c, a, b, q;
};

struct Node {
  std::variant<SortNode, VarNode, ConstNode, PiNode, LamNode, AppNode,
               SigmaNode, PairNode, Proj1Node, Proj2Node, IdNode, ReflNode,
               JNode>
      v;
  Span span;
};

template <typename T>
const T* Term::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

// de Bruijn machinery.
Term shift(const Term& t, long delta, std::size_t cutoff = 0);
// Replaces free index `index` by `s` and closes the gap above it.
Term subst(const Term& t, std::size_t index, const Term& s);
// body[0 := s] for the body of a binder.
Term instantiate(const Term& body, const Term& s);
bool occurs_free(const Term& t, std::size_t index);
std::vector<std::size_t> free_indices(const Term& t);
std::size_t term_size(const Term& t);
// Splits `f a1 ... an` into its head and arguments.
std::pair<Term, std::vector<Term>> spine(const Term& t);
bool uses_extensions(const Term& t);
void collect_constants(const Term& t, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Surface syntax

struct ExtensionFlags {
  bool sigma = false;
  bool identity = false;
  bool uip_postulate = false;
  bool funext_postulate = false;

  // Throws std::invalid_argument when a postulate is requested without
  // the identity extension.
  void validate() const;
  static ExtensionFlags from_words(const std::vector<std::string>& words);
  static ExtensionFlags all();
  std::vector<std::string> words() const;
  bool covers(const ExtensionFlags& needed) const;
  friend bool operator==(const ExtensionFlags&, const ExtensionFlags&) = default;
};

enum class DeclKind { Definition, Postulate };

struct Declaration {
  DeclKind kind = DeclKind::Definition;
  std::string name;
  std::optional<Term> type;
  std::optional<Term> body;
  Span span;
};

struct DeclarationFile {
  ExtensionFlags flags;
  std::vector<Declaration> decls;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Span at, std::vector<std::string> expected, std::string found);
  Span where() const { return at_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span at_;
  std::vector<std::string> expected_;
};

DeclarationFile parse(const std::string& source);
// Parses a single term. Names in `scope` become variables (the last name is
// index 0); every other identifier becomes a constant.
Term parse_term(const std::string& source,
                const std::vector<std::string>& scope = {});

// `scope` names the free variables of `t` (last entry = index 0).
std::string print(const Term& t, const std::vector<std::string>& scope = {});
std::string print(const DeclarationFile& file);

}  // namespace polykernel
