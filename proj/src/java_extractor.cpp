#include "maintlens/java_extractor.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

namespace maintlens::java {

namespace {

const std::unordered_set<std::string_view> kModifiers = {
    "public", "private",      "protected", "static",    "final",
    "abstract", "default",    "native",    "synchronized", "strictfp",
    "transient", "volatile",  "sealed"};

bool ident_boundary(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$';
}

// Joins type tokens without decorative whitespace: "Map < K , V >" becomes
// "Map<K,V>", "int [ ]" becomes "int[]", but "long" "value" keeps its space.
std::string join_type_tokens(const std::vector<std::string_view>& parts) {
  std::string out;
  for (std::string_view p : parts) {
    if (!out.empty() && ident_boundary(out.back()) && !p.empty() &&
        ident_boundary(p.front())) {
      out += ' ';
    }
    out.append(p);
  }
  return out;
}

bool all_gt(std::string_view s) {
  return !s.empty() && s.find_first_not_of('>') == std::string_view::npos;
}

struct Param {
  std::string type;
  std::string name;
};

class Scanner {
public:
  Scanner(std::string_view source, const LexResult& lex, std::string_view file_path,
          std::string_view project_id)
      : src_(source), toks_(lex.tokens), lex_(lex), file_path_(file_path),
        project_id_(project_id) {
    line_begin_.push_back(0);
    for (std::size_t k = 0; k < src_.size(); ++k) {
      if (src_[k] == '\n') line_begin_.push_back(k + 1);
    }
  }

  std::vector<MethodRecord> run() {
    scan_compilation_unit();
    std::sort(ordered_.begin(), ordered_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MethodRecord> out;
    out.reserve(ordered_.size());
    for (auto& [tok, rec] : ordered_) out.push_back(std::move(rec));
    return out;
  }

private:
  std::string_view src_;
  const std::vector<Token>& toks_;
  const LexResult& lex_;
  std::string_view file_path_;
  std::string_view project_id_;
  std::size_t i_ = 0;
  std::vector<std::size_t> line_begin_;
  std::vector<std::pair<std::size_t, MethodRecord>> ordered_; // keyed by first token

  bool at_end() const { return i_ >= toks_.size(); }
  const Token& tok(std::size_t off = 0) const { return toks_[i_ + off]; }
  bool have(std::size_t off = 0) const { return i_ + off < toks_.size(); }
  bool is(std::string_view text, std::size_t off = 0) const {
    return have(off) && toks_[i_ + off].text == text;
  }
  bool is_ident(std::size_t off = 0) const {
    return have(off) && toks_[i_ + off].kind == TokenKind::Identifier;
  }

  bool at_record_decl() const {
    return is("record") && is_ident(1) && is("(", 2);
  }
  // 'class' right after '.' is a class literal, not a declaration
  bool at_class_literal() const {
    return is("class") && i_ > 0 && toks_[i_ - 1].text == ".";
  }
  bool at_type_decl() const {
    return (is("class") && !at_class_literal()) || is("interface") || is("enum") ||
           (is("@") && is("interface", 1)) || at_record_decl();
  }

  void scan_compilation_unit() {
    while (!at_end()) {
      if (at_type_decl()) {
        scan_type_decl();
      } else {
        ++i_;
      }
    }
  }

  void scan_type_decl() {
    bool is_enum = is("enum");
    if (is("@")) {
      ++i_; // '@'
    }
    ++i_; // class/interface/enum/record keyword
    std::string type_name;
    if (is_ident()) {
      type_name = std::string(tok().text);
      ++i_;
    }
    // header: type params, extends/implements/permits, record components
    while (!at_end() && !is("{")) {
      if (is("(")) {
        skip_balanced("(", ")");
      } else if (is(";")) { // e.g. "record R(int x);" is invalid, but recover
        ++i_;
        return;
      } else {
        ++i_;
      }
    }
    if (at_end()) return;
    ++i_; // '{'
    if (is_enum) {
      scan_enum_body(type_name);
    } else {
      scan_type_body(type_name);
    }
  }

  // i_ is just past '{'; consumes through the matching '}'.
  void scan_type_body(const std::string& type_name) {
    while (!at_end()) {
      if (is("}")) {
        ++i_;
        return;
      }
      if (is(";")) {
        ++i_;
        continue;
      }
      scan_member(type_name);
    }
  }

  void scan_enum_body(const std::string& type_name) {
    // constant list, then regular members after ';'
    while (!at_end()) {
      if (is("}")) {
        ++i_;
        return;
      }
      if (is(";")) {
        ++i_;
        scan_type_body(type_name);
        return;
      }
      if (is("@")) {
        skip_annotation();
        continue;
      }
      if (is(",")) {
        ++i_;
        continue;
      }
      if (is_ident()) {
        ++i_;
        if (is("(")) scan_arguments();
        if (is("{")) {
          ++i_;
          scan_type_body(type_name); // constant class body
        }
        continue;
      }
      ++i_;
    }
  }

  void scan_member(const std::string& type_name) {
    std::size_t member_start = SIZE_MAX;
    bool is_static = false;
    auto note_start = [&] {
      if (member_start == SIZE_MAX) member_start = i_;
    };

    // annotations and modifiers
    while (!at_end()) {
      if (is("@")) {
        if (is("interface", 1)) {
          scan_type_decl();
          return;
        }
        skip_annotation();
        continue;
      }
      if (tok().kind == TokenKind::Keyword && kModifiers.count(tok().text)) {
        if (tok().text == "static") is_static = true;
        note_start();
        ++i_;
        continue;
      }
      break;
    }
    if (at_end()) return;

    if (at_type_decl()) {
      scan_type_decl();
      return;
    }
    if (is("{")) { // initializer block
      note_start();
      std::size_t open = i_;
      ++i_;
      std::size_t close = scan_statements();
      if (is_static && close != SIZE_MAX) {
        emit_record("<clinit>", {}, "", member_start, close);
      }
      (void)open;
      return;
    }
    if (is("<")) { // generic method/constructor type parameters
      note_start();
      skip_generics(nullptr);
    }

    // header: return type tokens then name, until '(' / '=' / ';'
    std::vector<std::size_t> header;
    while (!at_end()) {
      if (is("@")) {
        skip_annotation();
        continue;
      }
      if (is("<")) {
        note_start();
        skip_generics(&header); // generics belong to the return type
        continue;
      }
      if (at_type_decl()) { // recovery (e.g. after non-sealed)
        scan_type_decl();
        return;
      }
      if (is(";")) { // field without initializer
        ++i_;
        return;
      }
      if (is("}")) return; // malformed member; let the body loop close
      if (is("{")) {       // compact record constructor, or recovery
        ++i_;
        std::size_t close = scan_statements();
        if (close != SIZE_MAX && header.size() == 1 &&
            toks_[header[0]].kind == TokenKind::Identifier &&
            toks_[header[0]].text == type_name) {
          emit_record(std::string(toks_[header[0]].text), {}, "", member_start, close);
        }
        return;
      }
      if (is("=")) {       // field initializer
        ++i_;
        scan_field_initializer();
        return;
      }
      if (is("(")) {
        if (header.empty() || toks_[header.back()].kind != TokenKind::Identifier) {
          skip_balanced("(", ")");
          continue;
        }
        scan_method_tail(type_name, member_start, header);
        return;
      }
      note_start();
      header.push_back(i_);
      ++i_;
    }
  }

  // i_ is at '(' of a parameter list; header holds the tokens before it.
  void scan_method_tail(const std::string& type_name, std::size_t member_start,
                        const std::vector<std::size_t>& header) {
    std::string name(toks_[header.back()].text);
    std::vector<Param> params = parse_params();
    (void)type_name;

    bool is_ctor = header.size() == 1;
    std::string return_type;
    if (!is_ctor) {
      std::vector<std::string_view> parts;
      for (std::size_t k = 0; k + 1 < header.size(); ++k)
        parts.push_back(toks_[header[k]].text);
      return_type = join_type_tokens(parts);
    }

    // throws clause, annotation-member defaults
    while (!at_end() && !is("{") && !is(";")) {
      if (is("(")) {
        skip_balanced("(", ")");
      } else if (is("@")) {
        skip_annotation();
      } else {
        ++i_;
      }
    }
    if (at_end()) return;
    if (is(";")) { // no body: abstract, native, interface member
      ++i_;
      return;
    }
    ++i_; // '{'
    std::size_t close = scan_statements();
    if (close != SIZE_MAX) {
      emit_record(name, params, return_type, member_start, close);
    }
  }

  // After '{' of a statement block. Returns the index of the matching '}'.
  // Extracts records from anonymous class bodies and local type declarations.
  std::size_t scan_statements() {
    while (!at_end()) {
      if (is("}")) {
        std::size_t close = i_;
        ++i_;
        return close;
      }
      if (is("{")) {
        ++i_;
        scan_statements();
        continue;
      }
      if (is("new")) {
        scan_new();
        continue;
      }
      if (at_type_decl()) { // local class/interface/enum/record
        scan_type_decl();
        continue;
      }
      ++i_;
    }
    return SIZE_MAX;
  }

  // At 'new'. Detects "new Type(args) { body }" anonymous classes.
  void scan_new() {
    ++i_; // 'new'
    if (!at_end() && tok().kind == TokenKind::Keyword &&
        is_type_keyword(tok().text)) {
      ++i_; // primitive array creation; initializer handled generically
      return;
    }
    if (!is_ident()) return;
    ++i_;
    while (is(".") && is_ident(1)) i_ += 2;
    if (is("<")) skip_generics(nullptr);
    if (is("[")) return; // array creation
    if (!is("(")) return;
    scan_arguments();
    if (is("{")) {
      ++i_;
      scan_type_body("<anon>");
    }
  }

  // At '('. Consumes the balanced argument list, recursing into nested
  // 'new' expressions and lambda block bodies.
  void scan_arguments() {
    int depth = 0;
    while (!at_end()) {
      if (is("(")) {
        ++depth;
        ++i_;
      } else if (is(")")) {
        --depth;
        ++i_;
        if (depth == 0) return;
      } else if (is("new")) {
        scan_new();
      } else if (is("{")) {
        ++i_;
        scan_statements();
      } else {
        ++i_;
      }
    }
  }

  // After '=' of a field. Consumes through ';' at depth 0, extracting from
  // anonymous classes in the initializer expression.
  void scan_field_initializer() {
    int depth = 0; // parens + brackets + braces
    while (!at_end()) {
      if (is(";") && depth == 0) {
        ++i_;
        return;
      }
      if (is("(") || is("[") || is("{")) {
        ++depth;
        ++i_;
      } else if (is(")") || is("]") || is("}")) {
        --depth;
        ++i_;
      } else if (is("new")) {
        scan_new();
      } else {
        ++i_;
      }
    }
  }

  void skip_annotation() {
    ++i_; // '@'
    if (is_ident()) ++i_;
    while (is(".") && is_ident(1)) i_ += 2;
    if (is("(")) skip_balanced("(", ")");
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    while (!at_end()) {
      if (is(open)) ++depth;
      if (is(close)) {
        --depth;
        ++i_;
        if (depth == 0) return;
        continue;
      }
      ++i_;
    }
  }

  // At '<'. Consumes a generic section, tolerating '>>'-style tokens.
  // When sink is non-null the consumed token indices are appended to it.
  void skip_generics(std::vector<std::size_t>* sink) {
    int depth = 0;
    while (!at_end()) {
      if (is(";") || is("{")) return; // stray '<', bail out
      if (is("<")) {
        ++depth;
      } else if (all_gt(tok().text)) {
        depth -= static_cast<int>(tok().text.size());
      }
      if (sink) sink->push_back(i_);
      ++i_;
      if (depth <= 0) return;
    }
  }

  // At '('. Returns the parameter list; consumes through the matching ')'.
  std::vector<Param> parse_params() {
    ++i_; // '('
    std::vector<Param> params;
    std::vector<std::vector<std::size_t>> segments(1);
    int paren = 1;
    int angle = 0;
    while (!at_end() && paren > 0) {
      if (is("@")) {
        skip_annotation();
        continue;
      }
      if (is("(")) {
        ++paren;
      } else if (is(")")) {
        --paren;
        if (paren == 0) {
          ++i_;
          break;
        }
      } else if (is("<")) {
        ++angle;
      } else if (all_gt(tok().text)) {
        angle -= static_cast<int>(tok().text.size());
      } else if (is(",") && paren == 1 && angle == 0) {
        segments.emplace_back();
        ++i_;
        continue;
      }
      segments.back().push_back(i_);
      ++i_;
    }
    for (auto& seg : segments) {
      // drop 'final'
      std::vector<std::size_t> cleaned;
      for (std::size_t idx : seg) {
        if (toks_[idx].text == "final") continue;
        cleaned.push_back(idx);
      }
      if (cleaned.empty()) continue;
      if (toks_[cleaned.back()].text == "this") continue; // receiver parameter
      // name = last identifier; trailing "[]" pairs belong to the type
      std::size_t name_pos = SIZE_MAX;
      for (std::size_t k = cleaned.size(); k-- > 0;) {
        if (toks_[cleaned[k]].kind == TokenKind::Identifier) {
          name_pos = k;
          break;
        }
      }
      if (name_pos == SIZE_MAX) continue;
      Param p;
      p.name = std::string(toks_[cleaned[name_pos]].text);
      std::vector<std::string_view> type_parts;
      for (std::size_t k = 0; k < cleaned.size(); ++k) {
        if (k == name_pos) continue;
        type_parts.push_back(toks_[cleaned[k]].text);
      }
      p.type = join_type_tokens(type_parts);
      params.push_back(std::move(p));
    }
    return params;
  }

  void emit_record(const std::string& name, const std::vector<Param>& params,
                   const std::string& return_type, std::size_t start_tok,
                   std::size_t close_tok) {
    if (start_tok == SIZE_MAX) start_tok = close_tok;
    MethodRecord rec;
    rec.project_id = std::string(project_id_);
    rec.file_path = std::string(file_path_);
    rec.name = name;
    rec.return_type = return_type;
    rec.param_count = static_cast<int>(params.size());

    std::string sig = "(";
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (k) sig += ',';
      sig += params[k].type;
    }
    sig += ')';
    sig += return_type;
    rec.signature = sig;

    rec.start_line = toks_[start_tok].line;
    rec.end_line = toks_[close_tok].end_line;

    std::size_t begin = line_begin_[rec.start_line - 1];
    std::size_t end = rec.end_line < static_cast<int>(line_begin_.size())
                          ? line_begin_[rec.end_line] - 1 // excl. trailing '\n'
                          : src_.size();
    rec.body_text = std::string(src_.substr(begin, end - begin));

    rec.sloc_as_is = rec.end_line - rec.start_line + 1;
    int code_lines = 0;
    for (int l = rec.start_line; l <= rec.end_line; ++l) {
      if (lex_.line_has_code[l]) ++code_lines;
    }
    rec.sloc_standard = code_lines;

    std::vector<Token> range(toks_.begin() + start_tok, toks_.begin() + close_tok + 1);
    rec.sloc_pretty = pretty_line_count(range);

    rec.method_id = make_method_id(rec.file_path, rec.name, rec.signature, rec.start_line);
    rec.is_accessor = detect_accessor(rec);
    ordered_.emplace_back(start_tok, std::move(rec));
  }

public:
  static int pretty_line_count(const std::vector<Token>& tokens) {
    std::string text = pretty_format(tokens);
    if (text.empty()) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  }

  static std::string pretty_format(const std::vector<Token>& tokens) {
    std::string out;
    std::string line;
    std::vector<int> for_depths;
    int paren_depth = 0;
    bool pending_for = false;
    auto flush = [&] {
      if (line.empty()) return;
      if (!out.empty()) out += '\n';
      out += line;
      line.clear();
    };
    for (const Token& t : tokens) {
      if (t.text == "for") pending_for = true;
      if (t.text == "(") {
        ++paren_depth;
        if (pending_for) {
          for_depths.push_back(paren_depth);
          pending_for = false;
        }
      } else if (t.text == ")") {
        if (!for_depths.empty() && for_depths.back() == paren_depth)
          for_depths.pop_back();
        --paren_depth;
      }
      if (t.text == "}") flush(); // closing brace on its own line
      if (!line.empty()) line += ' ';
      line.append(t.text);
      bool in_for_header =
          !for_depths.empty() && paren_depth >= for_depths.back();
      if (t.text == "{" || t.text == "}" || (t.text == ";" && !in_for_header)) {
        flush();
      }
    }
    flush();
    return out;
  }
};

} // namespace

std::string make_method_id(std::string_view file_path, std::string_view name,
                           std::string_view signature, int start_line) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0x1f;
    h *= 1099511628211ULL;
  };
  feed(file_path);
  feed(name);
  feed(signature);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d", start_line);
  feed(buf);
  char out[20];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return std::string(out);
}

bool detect_accessor(const MethodRecord& r) {
  if (r.return_type.empty()) return false; // constructor or initializer
  bool getter = r.name.rfind("get", 0) == 0 && r.param_count == 0 &&
                r.return_type != "void";
  bool setter = r.name.rfind("set", 0) == 0 && r.param_count == 1 &&
                r.return_type == "void";
  return getter || setter;
}

ExtractResult extract_methods(std::string_view source, std::string_view file_path,
                              std::string_view project_id) {
  ExtractResult result;
  try {
    LexResult lexed = lex(source);
    Scanner scanner(source, lexed, file_path, project_id);
    result.records = scanner.run();
  } catch (const LexError& e) {
    result.records.clear();
    result.error = ExtractError{std::string(file_path), e.line, e.what()};
  }
  return result;
}

std::string pretty_print(std::string_view body) {
  LexResult lexed = lex(body);
  return Scanner::pretty_format(lexed.tokens);
}

int compute_sloc(std::string_view body, SlocMode mode) {
  if (mode == SlocMode::AsIs) {
    return 1 + static_cast<int>(std::count(body.begin(), body.end(), '\n'));
  }
  LexResult lexed = lex(body);
  if (mode == SlocMode::Pretty) {
    return Scanner::pretty_line_count(lexed.tokens);
  }
  int count = 0;
  for (int l = 1; l <= lexed.line_count; ++l) {
    if (lexed.line_has_code[l]) ++count;
  }
  return count;
}

const char* sloc_mode_name(SlocMode mode) {
  switch (mode) {
    case SlocMode::Standard: return "standard";
    case SlocMode::AsIs: return "as_is";
    case SlocMode::Pretty: return "pretty";
  }
  return "standard";
}

std::optional<SlocMode> parse_sloc_mode(std::string_view name) {
  if (name == "standard") return SlocMode::Standard;
  if (name == "as_is") return SlocMode::AsIs;
  if (name == "pretty") return SlocMode::Pretty;
  return std::nullopt;
}

int record_sloc(const MethodRecord& r, SlocMode mode) {
  switch (mode) {
    case SlocMode::Standard: return r.sloc_standard;
    case SlocMode::AsIs: return r.sloc_as_is;
    case SlocMode::Pretty: return r.sloc_pretty;
  }
  return r.sloc_standard;
}

} // namespace maintlens::java
