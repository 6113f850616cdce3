#include "lexer.hpp"

#include <cctype>
#include <sstream>

namespace polykernel::detail {

namespace {

// Decodes one UTF-8 code point starting at s[i]; returns its byte length.
std::size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

struct Symbol {
  const char* text;
  Tok kind;
};

// Longest spellings first where prefixes collide.
const Symbol kSymbols[] = {
    {"\xE2\x8B\x86", Tok::Star},   // ⋆
    {"\xE2\x96\xA1", Tok::Kind},   // □
    {"\xCE\xA0", Tok::Pi},         // Π
    {"\xE2\x88\x80", Tok::Pi},     // ∀
    {"\xCE\xBB", Tok::Lam},        // λ
    {"\xCE\xA3", Tok::Sigma},      // Σ
    {"\xE2\x86\x92", Tok::Arrow},  // →
    {"\xE2\x9F\xA8", Tok::LAngle}, // ⟨
    {"\xE2\x9F\xA9", Tok::RAngle}, // ⟩
    {"\xCF\x80" "1", Tok::Proj1},  // π1
    {"\xCF\x80" "2", Tok::Proj2},  // π2
    {"->", Tok::Arrow},
    {":=", Tok::Assign},
    {"*", Tok::Star},
    {"\\", Tok::Lam},
    {".", Tok::Dot},
    {":", Tok::Colon},
    {",", Tok::Comma},
    {"(", Tok::LParen},
    {")", Tok::RParen},
    {"<", Tok::LAngle},
    {">", Tok::RAngle},
    {"=", Tok::Equals},
    {"{", Tok::LBrace},
    {"}", Tok::RBrace},
};

Tok keyword(const std::string& w) {
  if (w == "KIND") return Tok::Kind;
  if (w == "forall") return Tok::Pi;
  if (w == "sig") return Tok::Sigma;
  if (w == "pi1") return Tok::Proj1;
  if (w == "pi2") return Tok::Proj2;
  if (w == "Id") return Tok::IdKw;
  if (w == "J") return Tok::JKw;
  if (w == "refl") return Tok::Refl;
  if (w == "postulate") return Tok::Postulate;
  return Tok::Ident;
}

bool is_ident_byte(const std::string& s, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c >= 0x80) {
    for (const auto& sym : kSymbols) {
      if (static_cast<unsigned char>(sym.text[0]) < 0x80) continue;
      if (s.compare(i, std::char_traits<char>::length(sym.text), sym.text) ==
          0) {
        // π alone (not followed by 1/2) is an ordinary letter.
        return false;
      }
    }
    return true;
  }
  return std::isalnum(c) || c == '_' || c == '\'';
}

}  // namespace

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Star: return "'*'";
    case Tok::Kind: return "'KIND'";
    case Tok::Pi: return "'Π'";
    case Tok::Lam: return "'λ'";
    case Tok::Sigma: return "'Σ'";
    case Tok::Arrow: return "'→'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LAngle: return "'⟨'";
    case Tok::RAngle: return "'⟩'";
    case Tok::Equals: return "'='";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Proj1: return "'π1'";
    case Tok::Proj2: return "'π2'";
    case Tok::IdKw: return "'Id'";
    case Tok::JKw: return "'J'";
    case Tok::Refl: return "'refl'";
    case Tok::Postulate: return "'postulate'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool is_reserved_word(const std::string& word) {
  return keyword(word) != Tok::Ident || word == "_";
}

std::vector<Token> lex(const std::string& source,
                       std::vector<std::string>* pragma) {
  std::vector<Token> out;
  std::istringstream lines(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#ext", 0) == 0) {
      std::istringstream words(line.substr(4));
      std::string w;
      while (words >> w) {
        if (pragma) pragma->push_back(w);
      }
      continue;
    }
    std::size_t i = 0;
    std::size_t col = 1;
    while (i < line.size()) {
      const Span at{lineno, col};
      unsigned char c = static_cast<unsigned char>(line[i]);
      if (c == ' ' || c == '\t') {
        ++i;
        ++col;
        continue;
      }
      if (line.compare(i, 2, "--") == 0) break;
      bool matched = false;
      // π followed by a digit must win over the identifier rule.
      for (const auto& sym : kSymbols) {
        const std::size_t n = std::char_traits<char>::length(sym.text);
        if (line.compare(i, n, sym.text) == 0) {
          out.push_back({sym.kind, sym.text, at});
          i += n;
          ++col;  // columns count code points loosely
          col += (n > 1 && static_cast<unsigned char>(sym.text[0]) < 0x80)
                     ? n - 1
                     : 0;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (is_ident_byte(line, i)) {
        std::size_t j = i;
        while (j < line.size() && is_ident_byte(line, j)) {
          std::size_t n = utf8_len(static_cast<unsigned char>(line[j]));
          j += n;
          ++col;
        }
        std::string word = line.substr(i, j - i);
        out.push_back({keyword(word), word, at});
        i = j;
        continue;
      }
      throw ParseError(at, {"token"},
                       "'" + line.substr(i, utf8_len(c)) + "'");
    }
  }
  out.push_back({Tok::End, "", Span{lineno + 1, 1}});
  return out;
}

}  // namespace polykernel::detail
