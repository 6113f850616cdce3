#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "polykernel/countermodel.hpp"
#include "polykernel/model.hpp"
#include "polykernel/stdlib.hpp"
#include "polykernel/syntax.hpp"
#include "polykernel/typecheck.hpp"
#include "polykernel/weca.hpp"

using namespace polykernel;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUnknown = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string w;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') {
      if (!w.empty()) out.push_back(w);
      w.clear();
    } else {
      w += ch;
    }
  }
  if (!w.empty()) out.push_back(w);
  return out;
}

int exit_for(Verdict v) {
  return v == Verdict::Yes ? kOk : v == Verdict::No ? kFail : kUnknown;
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

struct Options {
  std::vector<std::string> files;
  std::string ext;
  std::string weca = "beta";
  std::string model = "pi";
  std::size_t fuel = default_fuel();
  bool json = false;
  bool corpus = false;
  std::string witness;
};

// "Code at l:c: text" -> "text"
std::string bare(const std::string& what) {
  auto at = what.find(": ");
  return at == std::string::npos ? what : what.substr(at + 2);
}

// Result of checking a list of files on top of an optional base.
struct Loaded {
  Environment env;
  json errors = json::array();
  std::vector<std::string> declared;
};

Loaded load(const Options& o, bool with_corpus) {
  Loaded l;
  if (with_corpus) l.env = Corpus::standard().env();
  ExtensionFlags extra = ExtensionFlags::from_words(split_words(o.ext));
  for (const auto& path : o.files) {
    std::string src = read_file(path);
    json err;
    try {
      DeclarationFile f = parse(src);
      f.flags.sigma |= extra.sigma;
      f.flags.identity |= extra.identity;
      f.flags.uip_postulate |= extra.uip_postulate;
      f.flags.funext_postulate |= extra.funext_postulate;
      f.flags.validate();
      l.env = check_file(f, l.env);
      for (const auto& d : f.decls) l.declared.push_back(d.name);
      continue;
    } catch (const ParseError& e) {
      err = {{"line", e.where().line}, {"column", e.where().column},
             {"code", "ParseError"}, {"message", bare(e.what())}};
    } catch (const TypeError& e) {
      err = {{"line", e.where().line}, {"column", e.where().column},
             {"code", to_string(e.code())}, {"message", bare(e.what())}};
      if (!e.lhs_normal_form().empty())
        err["normal_forms"] = {e.lhs_normal_form(), e.rhs_normal_form()};
    } catch (const std::invalid_argument& e) {
      err = {{"line", 0}, {"column", 0}, {"code", "BadFlags"},
             {"message", e.what()}};
    }
    err["file"] = path;
    l.errors.push_back(err);
    break;  // later files would see a partial environment
  }
  return l;
}

std::string error_line(const json& e) {
  std::ostringstream s;
  s << e["file"].get<std::string>() << ":" << e["line"] << ":" << e["column"]
    << ": " << e["code"].get<std::string>() << ": "
    << e["message"].get<std::string>() << "\n";
  return s.str();
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& o) {
  Loaded l = load(o, o.corpus);
  json j = {{"files", o.files}, {"ok", l.errors.empty()},
            {"declarations", l.declared}, {"errors", l.errors}};
  std::string text;
  for (const auto& e : l.errors) text += error_line(e);
  if (l.errors.empty())
    text = "ok: " + std::to_string(l.declared.size()) + " declarations\n";
  emit(o.json, j, text);
  return l.errors.empty() ? kOk : kFail;
}

const Environment& environment(const Options& o, Loaded& l) {
  if (o.files.empty()) return Corpus::standard().env();
  l = load(o, o.corpus);
  if (!l.errors.empty()) throw UsageError(error_line(l.errors.front()));
  return l.env;
}

int cmd_nf(const Options& o, const std::string& term) {
  Loaded l;
  const Environment& env = environment(o, l);
  WecaConfig cfg = WecaConfig::from_name(o.weca).with_fuel(o.fuel);
  UTerm e = erase(env, {}, parse_term(term));
  auto n = normalize(e, cfg);
  json j = {{"term", term}, {"weca", cfg.name}, {"erasure", print(e)}};
  if (!n) {
    j["normal_form"] = nullptr;
    emit(o.json, j, "Unknown: no normal form within fuel " +
                        std::to_string(o.fuel) + "\n");
    return kUnknown;
  }
  j["normal_form"] = print(n->term);
  j["steps"] = n->steps;
  emit(o.json, j, print(n->term) + "\n");
  return kOk;
}

int cmd_eq(const Options& o, const std::string& t, const std::string& u) {
  Loaded l;
  const Environment& env = environment(o, l);
  WecaConfig cfg = WecaConfig::from_name(o.weca).with_fuel(o.fuel);
  Verdict v = leibniz_valid(env, {}, parse_term(t), parse_term(u), cfg);
  json j = {{"lhs", t}, {"rhs", u}, {"weca", cfg.name},
            {"verdict", to_string(v)}};
  emit(o.json, j, to_string(v) + "\n");
  return exit_for(v);
}

std::vector<WitnessSpec> read_witnesses(const std::string& path) {
  json j = json::parse(read_file(path));
  if (!j.is_array()) j = json::array({j});
  std::vector<WitnessSpec> out;
  for (const auto& w : j) {
    WitnessSpec spec;
    spec.family = w.at("family").get<std::string>();
    spec.at = w.value("at", std::string());
    spec.terms = w.value("terms", std::vector<std::string>{});
    spec.fuel = w.value("fuel", spec.fuel);
    out.push_back(spec);
  }
  return out;
}

PolysetStructure structure_for(const Options& o, bool weca_given) {
  // the generated model picks its own calculus unless told otherwise
  std::string weca = o.weca;
  if (o.model == "generated" && !weca_given) weca.clear();
  PolysetStructure m = PolysetStructure::from_name(o.model, weca);
  m.weca = m.weca.with_fuel(o.fuel);
  return m;
}

int cmd_model_eval(const Options& o, bool weca_given, const std::string& type,
                   const std::string& member) {
  Loaded l;
  const Environment& env = environment(o, l);
  Term t = parse_term(type);
  if (o.model == "pi") {
    if (!member.empty())
      throw UsageError("--member needs a model over a lambda calculus");
    PIVerdict v = pi_model_decide(env, {}, t);
    emit(o.json, {{"type", type}, {"model", "pi"}, {"verdict", to_string(v)}},
         to_string(v) + "\n");
    return kOk;
  }
  Semantics s(env, structure_for(o, weca_given));
  if (!o.witness.empty())
    for (const auto& w : read_witnesses(o.witness))
      s.add_witness(witness_set(s, w));
  Polyset X = s.interp_type({}, t);
  json j = {{"type", type}, {"model", s.structure().name()},
            {"denotation", describe(X)}};
  if (!member.empty()) {
    Verdict v = s.member(parse_untyped(member), X);
    j["member"] = member;
    j["verdict"] = to_string(v);
    emit(o.json, j, to_string(v) + "\n");
    return exit_for(v);
  }
  Emptiness e = s.is_empty(X);
  std::string verdict = e.empty == Verdict::Yes  ? "Empty"
                        : e.empty == Verdict::No ? "Inhabited"
                                                 : "Unknown";
  j["verdict"] = verdict;
  j["evidence"] = e.evidence;
  std::string text = verdict;
  if (e.witness) {
    j["witness"] = print(*e.witness);
    text += " by " + print(*e.witness);
  }
  emit(o.json, j, text + "\n");
  return e.empty == Verdict::Unknown ? kUnknown : kOk;
}

int report_exit(const Report& r) {
  if (r.as_expected()) return kOk;
  return r.status == Status::Unknown ? kUnknown : kFail;
}

int cmd_refute(const Options& o, const std::string& path) {
  Certificate cert = load_certificate(path);
  Report r = run_certificate(cert);
  emit(o.json, r.to_json(), r.to_text());
  return report_exit(r);
}

int cmd_suite(const Options& o, bool fuel_given, const std::string& path,
              bool verbose) {
  json manifest = path.empty() ? default_manifest() : json::parse(read_file(path));
  if (fuel_given && manifest.is_object()) manifest["fuel"] = o.fuel;
  std::vector<Report> reports = run_suite(manifest);
  int code = kOk;
  json all = json::array();
  std::string text;
  for (const auto& r : reports) {
    all.push_back(r.to_json());
    if (verbose) {
      text += r.to_text();
    } else {
      text += r.id + ": " + to_string(r.status);
      if (!r.as_expected()) text += " (expected " + to_string(r.expected) + ")";
      text += "\n";
    }
    int c = report_exit(r);
    if (c == kFail || (c == kUnknown && code == kOk)) code = c;
  }
  emit(o.json, {{"ok", code == kOk}, {"reports", all}}, text);
  return code;
}

int cmd_enumerate(const Options& o, bool weca_given, const std::string& type,
                  std::size_t bound) {
  if (o.model == "pi") throw UsageError("enumerate needs a model over a lambda calculus");
  Loaded l;
  const Environment& env = environment(o, l);
  Semantics s(env, structure_for(o, weca_given));
  Polyset X = s.interp_type({}, parse_term(type));
  Enumeration e = enumerate_members(s, X, bound);
  json members = json::array(), unknown = json::array();
  std::string text;
  for (const auto& t : e.members) {
    members.push_back(print(t));
    text += print(t) + "\n";
  }
  for (const auto& t : e.unknown) unknown.push_back(print(t));
  text += "-- " + std::to_string(e.members.size()) + " members, " +
          std::to_string(e.unknown.size()) + " undecided up to size " +
          std::to_string(bound) + "\n";
  emit(o.json,
       {{"type", type}, {"model", s.structure().name()}, {"bound", bound},
        {"members", members}, {"unknown", unknown}},
       text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polykernel: a second-order dependent type checker with countermodels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "polykernel 0.1");

  Options o;
  std::string term, lhs, rhs, type, member, cert, manifest;
  std::size_t bound = 9;
  bool verbose = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--fuel", o.fuel, "rewrite fuel (default POLYKERNEL_FUEL or 100000)");
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  auto with_env = [&](CLI::App* sub) {
    sub->add_option("--ext", o.ext, "extra extensions: sigma,id,uip,funext");
    sub->add_flag("--corpus", o.corpus, "check files on top of the standard corpus");
  };
  const std::vector<std::string> wecas = {"beta", "betaeta", "lambda-c", "lambda-id", "one"};
  const std::vector<std::string> models = {"pi", "simple", "generated", "full", "power-hnf"};

  auto* check = app.add_subcommand("check", "typecheck declaration files");
  check->add_option("files", o.files, "input files")->required()->check(CLI::ExistingFile);
  with_env(check);
  common(check);

  auto* nf = app.add_subcommand("nf", "normal form of an erased term");
  nf->add_option("files", o.files, "declaration files (default: the standard corpus)")
      ->check(CLI::ExistingFile);
  nf->add_option("--term", term, "term to erase and normalize")->required();
  nf->add_option("--weca", o.weca, "rewrite system")->check(CLI::IsMember(wecas));
  with_env(nf);
  common(nf);

  auto* eq = app.add_subcommand("eq", "Leibniz equality through erasure");
  eq->add_option("lhs", lhs)->required();
  eq->add_option("rhs", rhs)->required();
  eq->add_option("--file", o.files, "declaration files")->check(CLI::ExistingFile);
  eq->add_option("--weca", o.weca, "rewrite system")->check(CLI::IsMember(wecas));
  with_env(eq);
  common(eq);

  auto* eval = app.add_subcommand("model-eval", "evaluate a type in a model");
  eval->add_option("type", type)->required();
  eval->add_option("--file", o.files, "declaration files")->check(CLI::ExistingFile);
  eval->add_option("--model", o.model, "model")->check(CLI::IsMember(models));
  auto* eval_weca =
      eval->add_option("--weca", o.weca, "rewrite system")->check(CLI::IsMember(wecas));
  eval->add_option("--member", member, "untyped term to test for membership");
  eval->add_option("--witness", o.witness, "JSON witness sets for intersections")
      ->check(CLI::ExistingFile);
  with_env(eval);
  common(eval);

  auto* refute = app.add_subcommand("refute", "run one countermodel certificate");
  refute->add_option("certificate", cert)->required()->check(CLI::ExistingFile);
  common(refute);

  auto* suite = app.add_subcommand("suite", "run the countermodel suite");
  suite->add_option("manifest", manifest)->check(CLI::ExistingFile);
  suite->add_flag("--verbose", verbose, "print obligations and transcripts");
  common(suite);

  auto* enumerate = app.add_subcommand("enumerate", "closed normal members of a type");
  std::string enum_model = "generated";
  enumerate->add_option("type", type)->required();
  enumerate->add_option("--file", o.files, "declaration files")->check(CLI::ExistingFile);
  enumerate->add_option("--model", enum_model, "model")->check(CLI::IsMember(models));
  auto* enum_weca =
      enumerate->add_option("--weca", o.weca, "rewrite system")->check(CLI::IsMember(wecas));
  enumerate->add_option("--bound", bound, "largest term size");
  with_env(enumerate);
  common(enumerate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto fuel_given = [&](CLI::App* sub) { return sub->count("--fuel") > 0; };
  try {
    if (*check) return cmd_check(o);
    if (*nf) return cmd_nf(o, term);
    if (*eq) return cmd_eq(o, lhs, rhs);
    if (*eval) return cmd_model_eval(o, eval_weca->count() > 0, type, member);
    if (*refute) return cmd_refute(o, cert);
    if (*suite) return cmd_suite(o, fuel_given(suite), manifest, verbose);
    if (*enumerate) {
      o.model = enum_model;
      return cmd_enumerate(o, enum_weca->count() > 0, type, bound);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ManifestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ImproperCertificate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
