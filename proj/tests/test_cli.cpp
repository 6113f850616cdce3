#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  std::string cmd = quote(POLYKERNEL_BIN);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string source(const std::string& rel) {
  return std::string(POLYKERNEL_SOURCE_DIR) + "/" + rel;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/polykernel_test_" + name;
  std::ofstream(path) << content;
  return path;
}

int count_lines(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("check") {
  Run ok = run({"check", source("corpus/core.lp2"), source("corpus/identity.lp2")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("ok:") == 0);

  std::string bad = temp_file("bad.lp2", "x : * := λy:*. y\n");
  Run fail = run({"check", bad});
  CHECK(fail.code == 1);
  CHECK(fail.out.find(bad + ":1:") == 0);

  Run j = run({"check", "--json", bad});
  CHECK(j.code == 1);
  json parsed = json::parse(j.out);
  CHECK(parsed["ok"] == false);
  CHECK(parsed["errors"][0]["line"] == 1);
  CHECK(parsed["errors"][0].contains("code"));

  std::string needs_id = temp_file("id.lp2", "r : Id(nat, O, O) := refl\n");
  CHECK(run({"check", "--corpus", needs_id}).code == 1);
  CHECK(run({"check", "--corpus", "--ext", "id", needs_id}).code == 0);
  CHECK(run({"check", "--ext", "uip", needs_id}).code == 1);
}

TEST_CASE("nf") {
  Run s1 = run({"nf", source("corpus/core.lp2"), "--term", "s1", "--weca", "betaeta"});
  CHECK(s1.code == 0);
  CHECK(s1.out ==
        "λk. k (λx y. x) (λb. b (λx y. y) (λx y. x)) (λb. b (λx y. y) (λx y. x))\n");
  Run s2 = run({"nf", "--term", "s2", "--weca", "betaeta"});
  CHECK(s2.out == "λk. k (λx y. y) (λb. b) (λb. b (λx y. y) (λx y. x))\n");
  Run j = run({"nf", "--term", "succ O", "--json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["normal_form"] == "λx f. f x");
  CHECK(parsed["weca"] == "beta");
  CHECK(parsed.contains("steps"));

  std::string open = temp_file("open.lp2",
                               "postulate D : *\n"
                               "postulate u : D → D → D\n"
                               "w : D → D := λx:D. u x x\n");
  CHECK(run({"nf", open, "--term", "w"}).code == 0);
  CHECK(run({"nf", "--term", "s1", "--fuel", "2"}).code == 2);
}

TEST_CASE("eq") {
  CHECK(run({"eq", "s1", "s2", "--weca", "betaeta"}).code == 1);
  CHECK(run({"eq", "succ O", "succ O"}).code == 0);
  Run r = run({"eq", "tl (tl s1)", "s1", "--json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "Yes");
}

TEST_CASE("model-eval") {
  Run e = run({"model-eval", "Πα:*.α", "--model", "pi"});
  CHECK(e.code == 0);
  CHECK(e.out == "Empty\n");
  CHECK(run({"model-eval", "ind_nat"}).out == "Inhabited\n");
  Run g = run({"model-eval", "funext_fg", "--model", "generated"});
  CHECK(g.code == 0);
  CHECK(g.out == "Empty\n");
  Run m = run({"model-eval", "nat", "--model", "generated", "--member", "refl"});
  CHECK(m.code == 0);
  CHECK(m.out == "Yes\n");
  CHECK(run({"model-eval", "nat", "--model", "generated", "--member", "λx y. y"}).code == 1);
  Run j = run({"model-eval", "bool", "--model", "generated", "--json"});
  CHECK(json::parse(j.out)["verdict"] == "Inhabited");

  std::string w = temp_file("w.json", R"({"family": "IsRefl"})");
  CHECK(run({"model-eval", "nat", "--model", "generated", "--witness", w}).code == 0);
  CHECK(run({"model-eval", "nat", "--member", "refl"}).code == 3);
}

TEST_CASE("refute") {
  Run r = run({"refute", source("certificates/no_induction.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("no-induction: Reproduced") == 0);
  Run j = run({"refute", "--json", source("certificates/no_induction.json")});
  json parsed = json::parse(j.out);
  for (auto key : {"id", "status", "obligations", "flags", "millis"})
    CHECK(parsed.contains(key));

  std::string pi = temp_file(
      "pi.json", R"({"id": "pi", "model": "pi", "target": "ind_nat", "expect": "Reproduced"})");
  CHECK(run({"refute", pi}).code == 1);
  std::string broken = temp_file("broken.json", R"({"model": "pi"})");
  CHECK(run({"refute", broken}).code == 3);
}

TEST_CASE("suite") {
  Run r = run({"suite"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out, ": Reproduced") == 7);

  Run j = run({"suite", "--json"});
  json parsed = json::parse(j.out);
  CHECK(parsed["ok"] == true);
  CHECK(parsed["reports"].size() == 7);

  std::string starved = temp_file("starved.json", R"({"fuel": 10, "checks": ["stream-coinduction"]})");
  Run s = run({"suite", starved});
  CHECK(s.code != 0);
  CHECK(s.out.find("Unknown") != std::string::npos);

  std::string unknown = temp_file("unknown.json", R"({"checks": ["nope"]})");
  CHECK(run({"suite", unknown}).code == 3);

  // same input, same verdict lines
  CHECK(run({"suite"}).out == r.out);
}

TEST_CASE("enumerate") {
  Run r = run({"enumerate", "bool", "--bound", "9"});
  CHECK(r.code == 0);
  for (auto m : {"λx y. x\n", "λx y. y\n", "refl\n", "λx. refl\n", "λx y. refl\n"})
    CHECK(r.out.find(m) != std::string::npos);
  CHECK(r.out.find("5 members") != std::string::npos);
  CHECK(run({"enumerate", "bool", "--model", "pi"}).code == 3);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"nf"}).code == 3);
  CHECK(run({"nf", "--term", "s1", "--weca", "sk"}).code == 3);
  CHECK(run({"model-eval", "nat", "--model", "boolean"}).code == 3);
  CHECK(run({"check", "/nonexistent.lp2"}).code == 3);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"nf", "--term", "((("}).code == 3);
}
