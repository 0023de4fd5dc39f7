#include "maintlens/java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace maintlens::java {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "assert",    "boolean",  "break",     "byte",      "case",
    "catch",    "char",      "class",    "const",     "continue",  "default",
    "do",       "double",    "else",     "enum",      "extends",   "final",
    "finally",  "float",     "for",      "goto",      "if",        "implements",
    "import",   "instanceof", "int",     "interface", "long",      "native",
    "new",      "package",   "private",  "protected", "public",    "return",
    "short",    "static",    "strictfp", "super",     "switch",    "synchronized",
    "this",     "throw",     "throws",   "transient", "try",       "void",
    "volatile", "while",     "true",     "false",     "null",      "var",
    "yield",    "sealed",    "permits"};

// Multi-character operators, longest first so greedy matching works.
const std::array<std::string_view, 36> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=",
    ">=",   "&&",  "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=",
    "&=",   "|=",  "^=",  "<<",  ">>",  "+",  "-",  "*",  "/",  "%",
    "=",    "<",   ">",   "!",   "~",   "^"};

} // namespace

bool is_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

bool is_type_keyword(std::string_view word) {
  return word == "boolean" || word == "byte" || word == "char" ||
         word == "short" || word == "int" || word == "long" ||
         word == "float" || word == "double" || word == "void";
}

namespace {

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

} // namespace

LexResult lex(std::string_view src) {
  LexResult out;
  out.line_count = 1 + static_cast<int>(std::count(src.begin(), src.end(), '\n'));
  out.line_has_code.assign(out.line_count + 1, 0);
  out.line_has_comment.assign(out.line_count + 1, 0);

  std::size_t i = 0;
  int line = 1;
  const std::size_t n = src.size();

  auto mark_code = [&](int from, int to) {
    for (int l = from; l <= to; ++l) out.line_has_code[l] = 1;
  };
  auto push = [&](TokenKind k, std::size_t begin, std::size_t end, int start_line) {
    Token t;
    t.kind = k;
    t.text = src.substr(begin, end - begin);
    t.line = start_line;
    t.end_line = line;
    out.tokens.push_back(t);
    mark_code(start_line, line);
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    // line comment
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      out.line_has_comment[line] = 1;
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    // block comment
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      int start = line;
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= n) throw LexError(start, "unterminated block comment");
      i += 2;
      for (int l = start; l <= line; ++l) out.line_has_comment[l] = 1;
      continue;
    }
    // text block or string literal
    if (c == '"') {
      int start = line;
      std::size_t begin = i;
      if (i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
        i += 3;
        while (i + 2 < n && !(src[i] == '"' && src[i + 1] == '"' && src[i + 2] == '"')) {
          if (src[i] == '\n') ++line;
          if (src[i] == '\\') ++i;
          ++i;
        }
        if (i + 2 >= n) throw LexError(start, "unterminated text block");
        i += 3;
      } else {
        ++i;
        while (i < n && src[i] != '"') {
          if (src[i] == '\n') throw LexError(start, "unterminated string literal");
          if (src[i] == '\\') ++i;
          ++i;
        }
        if (i >= n) throw LexError(start, "unterminated string literal");
        ++i;
      }
      push(TokenKind::String, begin, i, start);
      continue;
    }
    // char literal
    if (c == '\'') {
      int start = line;
      std::size_t begin = i;
      ++i;
      while (i < n && src[i] != '\'') {
        if (src[i] == '\n') throw LexError(start, "unterminated char literal");
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw LexError(start, "unterminated char literal");
      ++i;
      push(TokenKind::Char, begin, i, start);
      continue;
    }
    // number
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t begin = i;
      ++i;
      while (i < n) {
        char d = src[i];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
          ++i;
        } else if ((d == '+' || d == '-') && i > begin &&
                   (src[i - 1] == 'e' || src[i - 1] == 'E' || src[i - 1] == 'p' ||
                    src[i - 1] == 'P')) {
          ++i; // exponent sign
        } else {
          break;
        }
      }
      push(TokenKind::Number, begin, i, line);
      continue;
    }
    // identifier / keyword
    if (is_ident_start(static_cast<unsigned char>(c))) {
      std::size_t begin = i;
      ++i;
      while (i < n && is_ident_part(static_cast<unsigned char>(src[i]))) ++i;
      std::string_view word = src.substr(begin, i - begin);
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, i, line);
      continue;
    }
    // punctuation
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
        c == ';' || c == ',' || c == '@' || c == '?' || c == ':') {
      // '::' is an operator, lone ':' stays punctuation
      if (c == ':' && i + 1 < n && src[i + 1] == ':') {
        push(TokenKind::Operator, i, i + 2, line);
        i += 2;
        continue;
      }
      push(TokenKind::Punct, i, i + 1, line);
      ++i;
      continue;
    }
    if (c == '.') {
      if (i + 2 < n && src[i + 1] == '.' && src[i + 2] == '.') {
        push(TokenKind::Operator, i, i + 3, line);
        i += 3;
        continue;
      }
      push(TokenKind::Punct, i, i + 1, line);
      ++i;
      continue;
    }
    // operators, greedy
    bool matched = false;
    for (std::string_view op : kOperators) {
      if (src.substr(i, op.size()) == op) {
        push(TokenKind::Operator, i, i + op.size(), line);
        i += op.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c == '&' || c == '|') { // single & or | (not caught above? they are)
      push(TokenKind::Operator, i, i + 1, line);
      ++i;
      continue;
    }
    throw LexError(line, std::string("unexpected character '") + c + "'");
  }
  return out;
}

} // namespace maintlens::java
