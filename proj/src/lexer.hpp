#pragma once

#include <string>
#include <vector>

#include "polykernel/syntax.hpp"

namespace polykernel::detail {

enum class Tok {
  Ident,
  Star,
  Kind,
  Pi,
  Lam,
  Sigma,
  Arrow,
  Dot,
  Colon,
  Assign,
  Comma,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Equals,
  LBrace,
  RBrace,
  Proj1,
  Proj2,
  IdKw,
  JKw,
  Refl,
  Postulate,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Span at;
};

std::string describe(Tok t);

// Strips comments and `#ext` pragmas. Pragma words are appended to `pragma`.
std::vector<Token> lex(const std::string& source,
                       std::vector<std::string>* pragma = nullptr);

bool is_reserved_word(const std::string& word);

}  // namespace polykernel::detail
