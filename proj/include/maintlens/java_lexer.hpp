#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace maintlens::java {

enum class TokenKind {
  Identifier,
  Keyword,
  Number,
  String,   // also covers text blocks
  Char,
  Operator, // arithmetic/logical/relational/assignment, '->', '::'
  Punct,    // ( ) { } [ ] ; , . @
};

struct Token {
  TokenKind kind;
  std::string_view text; // view into the lexed source
  int line = 0;          // 1-based line of the first character
  int end_line = 0;      // 1-based line of the last character
};

// Unterminated string/comment or an unexpected character.
struct LexError : std::runtime_error {
  int line;
  explicit LexError(int l, const std::string& what)
      : std::runtime_error(what), line(l) {}
};

struct LexResult {
  std::vector<Token> tokens;
  int line_count = 0;
  // 1-based, indexed [1..line_count]; entry 0 unused.
  std::vector<std::uint8_t> line_has_code;
  std::vector<std::uint8_t> line_has_comment;
};

// Tokenizes Java source. Comments are dropped from the token stream but
// recorded in line_has_comment. Throws LexError on malformed input.
LexResult lex(std::string_view source);

bool is_keyword(std::string_view word);

// Primitive and void type keywords, used by declaration scanning.
bool is_type_keyword(std::string_view word);

} // namespace maintlens::java
