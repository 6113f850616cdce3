#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polykernel/model.hpp"
#include "polykernel/stdlib.hpp"
#include "polykernel/weca.hpp"

namespace polykernel {

class ImproperCertificate : public std::runtime_error {
 public:
  explicit ImproperCertificate(const std::string& m)
      : std::runtime_error("ImproperCertificate: " + m) {}
};

class ManifestError : public std::runtime_error {
 public:
  explicit ManifestError(const std::string& m)
      : std::runtime_error("ManifestError: " + m) {}
};

enum class Status { Reproduced, Failed, Unknown };
std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Obligation {
  std::string what;
  std::string expected;
  std::string actual;
  Verdict met = Verdict::Unknown;  // Yes: as expected, No: contradicted
  bool sampled = false;            // checked on samples only
};

struct Report {
  std::string id;
  Status status = Status::Unknown;
  Status expected = Status::Reproduced;
  std::vector<Obligation> obligations;
  std::vector<std::string> flags;
  std::vector<std::string> transcript;
  double millis = 0;

  bool as_expected() const { return status == expected; }
  // Reproduced iff every obligation met; Failed if one was contradicted.
  void settle();
  Obligation& add(std::string what, std::string expected, std::string actual,
                  Verdict met, bool sampled = false);
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct CheckOptions {
  std::size_t fuel = default_fuel();
  Overrides overrides;         // corpus mutations
  std::string weca = "betaeta";  // for the stream and quotient checks
  bool syntactic = false;      // stream check on typed normal forms only
  std::size_t size_bound = 9;  // enumeration bound
};

// Closed normal forms of the given WECA, by increasing size.
std::vector<UTerm> enumerate_normal_terms(std::size_t size_bound,
                                          const WecaConfig& cfg,
                                          const std::set<std::string>& constants);
std::set<std::string> identity_constants();

struct Enumeration {
  std::vector<UTerm> members;
  std::vector<UTerm> unknown;
};
Enumeration enumerate_members(Semantics& s, const Polyset& X,
                              std::size_t size_bound);

// ---------------------------------------------------------------------------

struct WitnessSpec {
  std::string family;  // IsRefl, IsChurchNumeral, FiniteSet, FullSet, ...
  std::string at;      // the constructor binder it instantiates
  std::vector<std::string> terms;  // FiniteSet members / EqualsNormalFormOf
  std::size_t fuel = 1000;         // HasHNF
};

struct Certificate {
  std::string id;
  std::string model = "generated";
  std::string weca = "lambda-id";
  std::size_t fuel = 100000;
  std::string target;
  std::vector<WitnessSpec> witnesses;
  std::vector<std::string> samples;
  nlohmann::json steps = nlohmann::json::array();
  Status expect = Status::Reproduced;
};

// A member of the closed predicate library, as a set of the structure.
Polyset witness_set(Semantics& s, const WitnessSpec& w);

Certificate parse_certificate(const nlohmann::json& j);
Certificate load_certificate(const std::string& path);
// The shipped certificate for the natural-numbers check.
Certificate default_induction_certificate();

// Runs each step of a certificate in its model.
Report run_certificate(const Certificate& cert,
                       const Overrides& overrides = {});

Report check_stream_coinduction(const CheckOptions& o = {});
Report check_parametric_quotient(const CheckOptions& o = {});
Report check_uip(const CheckOptions& o = {});
Report check_funext_fails(const CheckOptions& o = {});
Report check_no_induction(const Certificate& cert,
                          const CheckOptions& o = {});
Report check_pi_consistency(const CheckOptions& o = {});
Report check_soundness_spot(const CheckOptions& o = {});

// Check ids known to the suite, in default order.
const std::vector<std::string>& suite_check_ids();
nlohmann::json default_manifest();
Report run_check(const std::string& id, const CheckOptions& o);
// Manifest: {"fuel": n, "checks": [id | {"id", "weca", "overrides",
// "expect"}]}. Throws ManifestError.
std::vector<Report> run_suite(const nlohmann::json& manifest);

}  // namespace polykernel
