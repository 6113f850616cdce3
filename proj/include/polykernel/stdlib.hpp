#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polykernel/syntax.hpp"
#include "polykernel/typecheck.hpp"

namespace polykernel {

class UnknownName : public std::out_of_range {
 public:
  explicit UnknownName(const std::string& name)
      : std::out_of_range("UnknownName: '" + name + "' is not in the corpus"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct CorpusEntry {
  std::string name;
  Term body;
  Term type;
  ExtensionFlags flags;
};

// Replacement bodies, keyed by entry name, in surface syntax.
using Overrides = std::map<std::string, std::string>;

class Corpus {
 public:
  // The shipped corpus (checked once, then shared).
  static const Corpus& standard();
  // Re-checks the shipped sources with some bodies replaced. Throws
  // TypeError if a replacement does not fit its declared type.
  static Corpus with_overrides(const Overrides& overrides);

  CorpusEntry get(const std::string& name) const;
  bool contains(const std::string& name) const;
  const Environment& env() const { return env_; }
  const std::vector<std::string>& names() const { return env_.order(); }
  double check_millis() const { return millis_; }

 private:
  Environment env_;
  double millis_ = 0;
};

// Names of the embedded corpus files, in load order.
std::vector<std::string> corpus_files();
const std::string& embedded_file(const std::string& path);

// succ (succ ... O), n times.
Term church_numeral(std::size_t n);

}  // namespace polykernel
