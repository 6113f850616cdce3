#include "polykernel/stdlib.hpp"

#include <chrono>

namespace polykernel {

namespace detail {
const std::map<std::string, std::string>& embedded_files();
}

std::vector<std::string> corpus_files() {
  return {"corpus/core.lp2", "corpus/identity.lp2"};
}

const std::string& embedded_file(const std::string& path) {
  const auto& files = detail::embedded_files();
  auto it = files.find(path);
  if (it == files.end())
    throw std::out_of_range("no embedded file '" + path + "'");
  return it->second;
}

const Corpus& Corpus::standard() {
  static const Corpus c = with_overrides({});
  return c;
}

Corpus Corpus::with_overrides(const Overrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  Corpus c;
  std::size_t used = 0;
  for (const auto& path : corpus_files()) {
    DeclarationFile file = parse(embedded_file(path));
    for (auto& d : file.decls) {
      auto it = overrides.find(d.name);
      if (it == overrides.end()) continue;
      // Earlier declarations are visible as constants, so a plain parse
      // is enough here.
      d.body = parse_term(it->second);
      ++used;
    }
    c.env_ = check_file(file, std::move(c.env_));
  }
  if (used != overrides.size()) {
    for (const auto& [name, body] : overrides)
      if (!c.env_.find(name)) throw UnknownName(name);
  }
  c.millis_ = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return c;
}

bool Corpus::contains(const std::string& name) const {
  return env_.find(name) != nullptr;
}

CorpusEntry Corpus::get(const std::string& name) const {
  const Global* g = env_.find(name);
  if (!g) throw UnknownName(name);
  return {g->name, g->body.value_or(Term::constant(name)), g->type, g->flags};
}

Term church_numeral(std::size_t n) {
  Term t = Term::constant("O");
  for (std::size_t i = 0; i < n; ++i) t = Term::app(Term::constant("succ"), t);
  return t;
}

}  // namespace polykernel
