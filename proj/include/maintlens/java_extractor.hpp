#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maintlens/java_lexer.hpp"

namespace maintlens::java {

enum class SlocMode { Standard, AsIs, Pretty };

// One extracted method, constructor, or static initializer.
struct MethodRecord {
  std::string method_id; // stable hash of (file_path, name, signature, start_line)
  std::string project_id;
  std::string file_path;
  std::string name;        // "<clinit>" for static initializers
  std::string signature;   // "(T1,T2)R" with normalized type spellings
  int start_line = 0;      // 1-based, signature line (annotation-only lines excluded)
  int end_line = 0;        // 1-based, line of the closing brace
  std::string body_text;   // exact source slice [start_line, end_line]
  int sloc_standard = 0;
  int sloc_as_is = 0;
  int sloc_pretty = 0;
  bool is_accessor = false;
  std::int64_t birth_timestamp = 0; // filled by the history stage

  // needed by history matching and call resolution
  int param_count = 0;
  std::string return_type; // empty for constructors and initializers
};

struct ExtractError {
  std::string file_path;
  int line = 0;
  std::string message;
};

struct ExtractResult {
  std::vector<MethodRecord> records;
  std::optional<ExtractError> error; // set => file was skipped
};

// Parses one Java source file into method records, in source order.
// Lambdas are not separate records; anonymous/local class methods are.
ExtractResult extract_methods(std::string_view source, std::string_view file_path,
                              std::string_view project_id = "");

// Counts source lines of the given method text. Standard drops comment-only
// and blank lines; AsIs is the raw line count; Pretty counts lines after
// reformatting to the canonical style (one statement per line, opening brace
// on the declaring line, closing brace on its own line, comments stripped).
// Throws LexError for Standard/Pretty when the text does not tokenize.
int compute_sloc(std::string_view body, SlocMode mode);

// Canonical reformat used by the Pretty mode; depends only on the token stream.
std::string pretty_print(std::string_view body);

// Getter: name starts with "get", zero parameters, non-void return.
// Setter: name starts with "set", one parameter, void return.
// Constructors and initializers (empty return type) are never accessors.
bool detect_accessor(const MethodRecord& record);

// FNV-1a over the identity tuple; hex string.
std::string make_method_id(std::string_view file_path, std::string_view name,
                           std::string_view signature, int start_line);

const char* sloc_mode_name(SlocMode mode);
std::optional<SlocMode> parse_sloc_mode(std::string_view name);

int record_sloc(const MethodRecord& r, SlocMode mode);

} // namespace maintlens::java
