#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polykernel/syntax.hpp"
#include "polykernel/typecheck.hpp"
#include "polykernel/verdict.hpp"

namespace polykernel {

struct UNode;

// Untyped lambda term over a constant signature. Bound variables are de
// Bruijn indices; free variables are named and act as observers.
class UTerm {
 public:
  UTerm() = default;
  static UTerm var(std::size_t index, std::string hint = {});
  static UTerm free(std::string name);
  static UTerm constant(std::string name);
  static UTerm lam(std::string hint, UTerm body);
  static UTerm app(UTerm fun, UTerm arg);
  static UTerm app(UTerm fun, std::vector<UTerm> args);

  const UNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }
  template <typename T>
  const T* as() const;

  // Number of nodes (saturating).
  std::uint64_t size() const;
  // One more than the largest free de Bruijn index; 0 when closed.
  std::size_t fv_bound() const;
  bool closed() const { return fv_bound() == 0; }

  friend bool operator==(const UTerm& a, const UTerm& b);
  friend bool operator!=(const UTerm& a, const UTerm& b) { return !(a == b); }
  // Total order on alpha-classes, for deterministic containers.
  friend bool operator<(const UTerm& a, const UTerm& b);

 private:
  friend struct UTermFactory;
  explicit UTerm(std::shared_ptr<const UNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const UNode> node_;
};

struct UVar {
  std::size_t index;
  std::string hint;
};
struct UFree {
  std::string name;
};
struct UConst {
  std::string name;
};
struct ULam {
  std::string hint;
  UTerm body;
};
struct UApp {
  UTerm fun;
  UTerm arg;
};

struct UNode {
  std::variant<UVar, UFree, UConst, ULam, UApp> v;
  std::uint64_t size;
  std::size_t fv_bound;
};

template <typename T>
const T* UTerm::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

UTerm ushift(const UTerm& t, long delta, std::size_t cutoff = 0);
UTerm usubst(const UTerm& t, std::size_t index, const UTerm& s);
UTerm uinstantiate(const UTerm& body, const UTerm& s);
// Replaces the free variable `name` by `s` (s must be closed in de Bruijn
// terms, which holds for everything built from free names).
UTerm usubst_free(const UTerm& t, const std::string& name, const UTerm& s);
// Abstracts the free variable `name`: λname. t.
UTerm uabstract(const std::string& name, const UTerm& t);
std::set<std::string> free_names(const UTerm& t);
bool mentions_free(const UTerm& t, const std::string& name);
std::pair<UTerm, std::vector<UTerm>> uspine(const UTerm& t);

std::string print(const UTerm& t);
const std::set<std::string>& default_constants();
// `λx y. body`, application, parentheses. Identifiers bound by a λ become
// variables, identifiers in `constants` become constants, the rest are free.
UTerm parse_untyped(const std::string& source,
                    const std::set<std::string>& constants = default_constants());

// Names used for the extension constants.
namespace uconst {
inline const char* const kPair = "pair";
inline const char* const kProj1 = "π1";
inline const char* const kProj2 = "π2";
inline const char* const kJ = "J";
inline const char* const kRefl = "refl";
}  // namespace uconst

// ---------------------------------------------------------------------------

enum class Rule { Beta, Eta, CAbsorb, JIota, ReflAbsorb, ProjBeta, ProjRefl };

struct WecaConfig {
  std::string name;
  std::set<Rule> rules;
  std::set<std::string> absorbing;  // the constant set C of the c-rule
  bool degenerate = false;          // the one-point carrier
  std::size_t fuel = 100000;
  std::uint64_t size_cap = 2000000;

  bool has(Rule r) const { return rules.count(r) > 0; }

  static WecaConfig beta();
  static WecaConfig betaeta();
  static WecaConfig lambda_c(std::set<std::string> constants);
  static WecaConfig lambda_id();
  static WecaConfig one();
  // beta | betaeta | lambda-c | lambda-id | one
  static WecaConfig from_name(const std::string& name);
  WecaConfig with_fuel(std::size_t f) const;
};

struct NormalForm {
  UTerm term;
  std::size_t steps = 0;
};

// One leftmost-outermost contraction; nullopt when no rule applies.
std::optional<UTerm> step(const UTerm& t, const WecaConfig& cfg);
bool is_normal(const UTerm& t, const WecaConfig& cfg);
std::size_t count_redexes(const UTerm& t, const WecaConfig& cfg);
// Contracts the k-th redex in a fixed traversal order.
UTerm contract_nth(const UTerm& t, const WecaConfig& cfg, std::size_t k);
// nullopt when fuel or the size cap runs out.
std::optional<NormalForm> normalize(const UTerm& t, const WecaConfig& cfg);
std::optional<NormalForm> normalize_random(const UTerm& t,
                                           const WecaConfig& cfg,
                                           std::mt19937_64& rng);
// Head normal form (leftmost-outermost until the head is not a redex).
std::optional<UTerm> head_normalize(const UTerm& t, const WecaConfig& cfg);
Verdict weca_eq(const UTerm& t, const UTerm& u, const WecaConfig& cfg);

// ---------------------------------------------------------------------------

class ErasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TermValuation = std::map<std::string, UTerm>;

// Drops type abstractions and type arguments, unfolds definitions and maps
// the extension formers to constants. Context term variables come from
// `rho` (default: a free variable of the same name).
UTerm erase(const Environment& env, const Context& ctx, const Term& t,
            const TermValuation& rho = {},
            ExtensionFlags flags = ExtensionFlags::all());

}  // namespace polykernel
