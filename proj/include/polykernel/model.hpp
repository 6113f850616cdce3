#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polykernel/syntax.hpp"
#include "polykernel/typecheck.hpp"
#include "polykernel/verdict.hpp"
#include "polykernel/weca.hpp"

namespace polykernel {

class ModelError : public std::runtime_error {
 public:
  // code: NotAKind, NotAConstructor, NotAType, ImproperFamily, IllTyped
  ModelError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class StructureKind { PI, Simple, Full, Generated, PowerHNF };

struct PolysetStructure {
  StructureKind kind = StructureKind::PI;
  WecaConfig weca = WecaConfig::one();
  std::vector<UTerm> core;  // the constant set C of a generated structure
  std::size_t hnf_fuel = 1000;

  static PolysetStructure pi();
  static PolysetStructure simple(WecaConfig w);
  static PolysetStructure full(WecaConfig w);
  static PolysetStructure generated(std::vector<UTerm> core, WecaConfig w);
  // Generated({refl}) over the identity calculus.
  static PolysetStructure generated_refl();
  static PolysetStructure power_hnf(WecaConfig w);
  // pi | simple | generated | full | power-hnf
  static PolysetStructure from_name(const std::string& model,
                                    const std::string& weca = "beta");
  std::string name() const;
};

// ---------------------------------------------------------------------------

class Polyset;
using Family = std::function<Polyset(const UTerm&)>;

enum class PredKind { IsRefl, IsChurchNumeral, HasHNF, EqualsNormalFormOf };
std::string to_string(PredKind p);

struct PEmpty {};
struct PFull {};
struct PFinite {
  std::set<UTerm> classes;  // normal forms
  bool with_core = false;   // implicitly contains the structure's core
};
struct PPred {
  PredKind pred;
  UTerm arg;  // for EqualsNormalFormOf
};
// An arbitrary member of the structure, possibly indexed by terms.
struct PGeneric {
  std::size_t id;
  std::vector<UTerm> args;
  std::string label;
};
struct PDepProd {
  std::shared_ptr<const Polyset> domain;
  Family family;
};
struct PDepSum {
  std::shared_ptr<const Polyset> domain;
  Family family;
};
// Intersection over a kind: a finite list of concrete instances plus an
// optional generic instance standing for every member at once.
struct PIntersect {
  std::vector<Polyset> instances;
  std::shared_ptr<const Polyset> generic;
};
struct PIdSet {
  std::shared_ptr<const Polyset> domain;
  UTerm lhs, rhs;
};
struct POpaque {
  std::string label;
};

class Polyset {
 public:
  using Node = std::variant<PEmpty, PFull, PFinite, PPred, PGeneric, PDepProd,
                            PDepSum, PIntersect, PIdSet, POpaque>;
  Polyset() : Polyset(PEmpty{}) {}
  explicit Polyset(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static Polyset empty() { return Polyset(PEmpty{}); }
  static Polyset full() { return Polyset(PFull{}); }
  static Polyset finite(std::set<UTerm> classes, bool with_core = false);
  static Polyset core_plus(std::set<UTerm> extra) {
    return finite(std::move(extra), true);
  }
  static Polyset pred(PredKind p, UTerm arg = {});
  static Polyset dep_prod(const Polyset& domain, Family f);
  static Polyset arrow(const Polyset& domain, const Polyset& codomain);
  static Polyset dep_sum(const Polyset& domain, Family f);
  static Polyset id_set(const Polyset& domain, UTerm lhs, UTerm rhs);

  const Node& node() const { return *node_; }
  template <typename T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }
  bool same_object(const Polyset& o) const { return node_ == o.node_; }

 private:
  std::shared_ptr<const Node> node_;
};

std::string describe(const Polyset& X);

struct ConFamily;
// Value of a constructor: a polyset for types, a function for families.
using ConValue = std::variant<Polyset, std::shared_ptr<const ConFamily>>;
struct ConFamily {
  Polyset domain;
  std::function<ConValue(const UTerm&)> apply;
};

// Value of a kind: the structure itself or a function space over it.
struct KindValue {
  bool collection = true;
  Polyset domain;                                   // for function spaces
  std::function<KindValue(const UTerm&)> codomain;  // for function spaces
};

struct Valuation {
  std::map<std::string, ConValue> xi;  // constructor variables
  TermValuation rho;                    // term variables
};

struct Emptiness {
  Verdict empty = Verdict::Unknown;
  std::optional<UTerm> witness;  // set when empty == No
  std::string evidence;
};

// One evaluation session over a structure: interpretation of kinds and
// constructors, membership, emptiness.
class Semantics {
 public:
  Semantics(const Environment& env, PolysetStructure m);

  const PolysetStructure& structure() const { return m_; }
  // Extra instances for intersections over * and extra probe elements.
  void add_witness(const Polyset& X) { witnesses_.push_back(X); }
  void add_samples(const std::vector<UTerm>& s);
  const std::vector<UTerm>& samples() const { return samples_; }

  KindValue interp_kind(const Context& ctx, const Term& kind,
                        const Valuation& v = {});
  ConValue interp_con(const Context& ctx, const Term& con,
                      const Valuation& v = {});
  Polyset interp_type(const Context& ctx, const Term& type,
                      const Valuation& v = {});

  Verdict member(const UTerm& e, const Polyset& X);
  Emptiness is_empty(const Polyset& X);
  bool same_set(const Polyset& a, const Polyset& b);

  // Names of fresh observers start with this prefix.
  static const std::string& observer_prefix();

 private:
  struct Slot {
    bool term = true;
    UTerm value;
    ConValue con;
  };

  const Environment& env_;
  PolysetStructure m_;
  TypeChecker tc_;
  std::vector<Polyset> witnesses_;
  std::vector<UTerm> samples_;
  std::vector<std::pair<std::string, Polyset>> observers_;
  std::size_t next_observer_ = 0;
  std::size_t next_generic_ = 0;
  std::size_t next_name_ = 0;
  std::map<std::string, ConValue> globals_;

  std::optional<UTerm> nf(const UTerm& e);
  bool has_observer(const UTerm& t) const;
  const Polyset* observer_set(const std::string& name) const;
  std::optional<Polyset> derive(const UTerm& nf);
  bool known_nonempty(const Polyset& X);
  Verdict member_nf(const UTerm& e, const Polyset& X);
  Verdict member_prod(const UTerm& e, const PDepProd& p);
  Verdict member_intersect(const UTerm& e, const PIntersect& p);
  bool id_closed_form() const;
  Verdict id_eq(const UTerm& a, const UTerm& b);
  std::optional<std::vector<UTerm>> enumerate(const Polyset& X);
  std::vector<UTerm> candidates();

  bool is_kind_classifier(const Context& ctx, const Term& t);
  ConValue eval(const Context& ctx, std::vector<Slot>& slots, const Term& t);
  KindValue eval_kind(const Context& ctx, std::vector<Slot>& slots,
                      const Term& k);
  std::vector<ConValue> instances(const KindValue& k, bool with_generic,
                                  std::optional<ConValue>* generic);
  ConValue generic_of(const KindValue& k, std::size_t id,
                      std::vector<UTerm> args, const std::string& label);
  UTerm erase_in(const Context& ctx, const std::vector<Slot>& slots,
                 const Term& t);
  std::vector<Slot> slots_for(const Context& ctx, const Valuation& v,
                              Context& renamed);
  std::string fresh_name(const std::string& hint);
  Polyset as_set(const ConValue& v, const Term& at);
};

Polyset as_polyset(const ConValue& v);

// Leibniz equality of two terms of the same type, decided through their
// erasures in the structure's WECA.
Verdict leibniz_valid(const Environment& env, const Context& ctx,
                      const Term& t, const Term& q, const WecaConfig& weca);

// ---------------------------------------------------------------------------
// The proof-irrelevance model: every type denotes the empty set or the one
// point set, so evaluation is exact.

enum class PIVerdict { Inhabited, Empty };
std::string to_string(PIVerdict v);

PIVerdict pi_model_decide(const Environment& env, const Context& ctx,
                          const Term& type);
// Number of elements of a kind's value in the PI model.
std::size_t pi_kind_size(const Environment& env, const Context& ctx,
                         const Term& kind);

}  // namespace polykernel
