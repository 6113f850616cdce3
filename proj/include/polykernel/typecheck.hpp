#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polykernel/syntax.hpp"

namespace polykernel {

enum class ErrorCode {
  DuplicateVariable,
  IllFormedClassifier,
  UnboundVariable,
  NotAFunction,
  DomainMismatch,
  ForbiddenPiFormation,
  ExtensionDisabled,
  ConversionFailure,
  FuelExhausted,
  CannotInfer,
  NotAPair,
  NotWellTyped,
};

std::string to_string(ErrorCode code);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorCode code, Span at, const std::string& message,
            std::string lhs_nf = {}, std::string rhs_nf = {});
  ErrorCode code() const { return code_; }
  Span where() const { return at_; }
  // For conversion failures: the two normal forms that disagreed.
  const std::string& lhs_normal_form() const { return lhs_; }
  const std::string& rhs_normal_form() const { return rhs_; }

 private:
  ErrorCode code_;
  Span at_;
  std::string lhs_, rhs_;
};

enum class SortClass { KindSort, KindExpr, ConstructorExpr, TermExpr };
std::string to_string(SortClass c);

struct ContextEntry {
  std::string name;
  Term type;  // lives in the context of the entries before it
};

class Context {
 public:
  Context() = default;
  Context push(std::string name, Term type) const;
  std::size_t size() const { return entries_.size(); }
  const ContextEntry& entry(std::size_t index) const;  // de Bruijn index
  Term type_of(std::size_t index) const;  // shifted into the full context
  std::vector<std::string> names() const;
  const std::vector<ContextEntry>& entries() const { return entries_; }

 private:
  std::vector<ContextEntry> entries_;
};

// Builds a context from `name : type` pairs written in surface syntax.
Context make_context(
    const std::vector<std::pair<std::string, std::string>>& decls);

struct Global {
  std::string name;
  Term type;
  std::optional<Term> body;  // empty for postulates
  ExtensionFlags flags;
};

class Environment {
 public:
  void add(Global g);
  const Global* find(const std::string& name) const;
  const std::vector<std::string>& order() const { return order_; }

 private:
  std::map<std::string, Global> globals_;
  std::vector<std::string> order_;
};

std::size_t default_fuel();  // POLYKERNEL_FUEL or 100000

class TypeChecker {
 public:
  TypeChecker(const Environment& env, ExtensionFlags flags,
              std::size_t fuel = default_fuel());

  void wf_context(const Context& ctx);
  Term infer(const Context& ctx, const Term& t);
  void check(const Context& ctx, const Term& t, const Term& type);
  SortClass classify(const Context& ctx, const Term& t);
  bool convertible(const Context& ctx, const Term& a, const Term& b);

  Term whnf(const Term& t);
  Term normalize(const Term& t);
  // Every term reachable by contracting exactly one redex (beta, delta,
  // projection, J) at any position.
  std::vector<Term> one_step_reducts(const Term& t) const;

  const ExtensionFlags& flags() const { return flags_; }
  const Environment& env() const { return env_; }

 private:
  const Environment& env_;
  ExtensionFlags flags_;
  std::size_t fuel_;
  std::size_t remaining_ = 0;

  void reset() { remaining_ = fuel_; }
  void tick(const Term& at);
  Term whnf_(const Term& t);
  Term normalize_(const Term& t);
  bool conv_(const Term& a, const Term& b);
  Term infer_(const Context& ctx, const Term& t);
  void check_(const Context& ctx, const Term& t, const Term& type);
  Term sort_of(const Context& ctx, const Term& t);
  void require(bool enabled, const Term& at, const char* what);
  Term const_type(const Term& at, const std::string& name);
  [[noreturn]] void mismatch(ErrorCode code, const Context& ctx,
                             const Term& at, const Term& expected,
                             const Term& actual);
};

// Type of the `uip` and `funext` constants.
Term uip_type();
Term funext_type();

// Checks a parsed file declaration by declaration and returns the resulting
// environment (extending `base`).
Environment check_file(const DeclarationFile& file, Environment base = {});

}  // namespace polykernel
