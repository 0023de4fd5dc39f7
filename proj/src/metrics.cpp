#include "maintlens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace maintlens::metrics {

using java::Token;
using java::TokenKind;

namespace {

// Tokens strictly inside the outermost braces of the method text.
std::vector<Token> body_tokens(std::string_view method_source) {
  java::LexResult lexed = java::lex(method_source);
  const auto& toks = lexed.tokens;
  std::size_t open = SIZE_MAX, close = SIZE_MAX;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (toks[k].text == "{") {
      open = k;
      break;
    }
  }
  for (std::size_t k = toks.size(); k-- > 0;) {
    if (toks[k].text == "}") {
      close = k;
      break;
    }
  }
  if (open == SIZE_MAX || close == SIZE_MAX || close <= open + 1) return {};
  return std::vector<Token>(toks.begin() + open + 1, toks.begin() + close);
}

bool is_ternary_question(const std::vector<Token>& toks, std::size_t k) {
  if (toks[k].text != "?") return false;
  if (k == 0) return false;
  const Token& prev = toks[k - 1];
  if (prev.kind == TokenKind::Identifier || prev.kind == TokenKind::Number ||
      prev.kind == TokenKind::String || prev.kind == TokenKind::Char) {
    return true;
  }
  return prev.text == ")" || prev.text == "]";
}

// Appends the token indices of the parenthesized expression that starts at
// or after `k` (the control keyword position). For 'for', only the middle
// clause between the two top-level ';' is taken.
void collect_predicate(const std::vector<Token>& toks, std::size_t k, bool is_for,
                       std::vector<std::size_t>& out) {
  std::size_t j = k + 1;
  while (j < toks.size() && toks[j].text != "(") ++j;
  if (j >= toks.size()) return;
  int depth = 0;
  int semis = 0;
  for (; j < toks.size(); ++j) {
    if (toks[j].text == "(") {
      ++depth;
      if (depth == 1) continue;
    } else if (toks[j].text == ")") {
      --depth;
      if (depth == 0) return;
    } else if (is_for && depth == 1 && toks[j].text == ";") {
      ++semis;
      continue;
    }
    if (depth >= 1 && (!is_for || semis == 1)) out.push_back(j);
  }
}

} // namespace

int mccabe(std::string_view source, bool extended) {
  std::vector<Token> toks = body_tokens(source);
  int predicates = 0;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    std::string_view t = toks[k].text;
    if (t == "if" || t == "for" || t == "while" || t == "case" || t == "catch") {
      ++predicates;
    } else if (is_ternary_question(toks, k)) {
      ++predicates;
    } else if (extended && (t == "&&" || t == "||")) {
      ++predicates;
    }
  }
  return 1 + predicates;
}

int mcclure(std::string_view source) {
  std::vector<Token> toks = body_tokens(source);
  std::vector<std::size_t> pred;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    std::string_view t = toks[k].text;
    if (t == "if" || t == "while" || t == "switch") {
      collect_predicate(toks, k, false, pred);
    } else if (t == "for") {
      collect_predicate(toks, k, true, pred);
    }
  }
  int comparisons = 0;
  std::set<std::string_view> variables;
  for (std::size_t idx : pred) {
    const Token& t = toks[idx];
    if (t.text == "==" || t.text == "!=" || t.text == "<" || t.text == ">" ||
        t.text == "<=" || t.text == ">=") {
      ++comparisons;
      continue;
    }
    if (t.kind != TokenKind::Identifier) continue;
    bool called = idx + 1 < toks.size() && toks[idx + 1].text == "(";
    bool member = idx > 0 && toks[idx - 1].text == ".";
    if (!called && !member) variables.insert(t.text);
  }
  return comparisons + static_cast<int>(variables.size());
}

bool halstead_is_operator(const Token& t) {
  switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::Number:
    case TokenKind::String:
    case TokenKind::Char:
      return false;
    case TokenKind::Keyword:
      // value-like keywords are operands
      return !(t.text == "true" || t.text == "false" || t.text == "null" ||
               t.text == "this");
    case TokenKind::Operator:
    case TokenKind::Punct:
      return true;
  }
  return true;
}

double halstead_volume_from_counts(long long total, long long distinct) {
  if (total <= 0 || distinct <= 0) return 0.0;
  return static_cast<double>(total) *
         std::log2(static_cast<double>(distinct));
}

double halstead_volume(std::string_view source) {
  std::vector<Token> toks = body_tokens(source);
  long long total = 0;
  std::set<std::string_view> distinct_ops, distinct_operands;
  for (const Token& t : toks) {
    ++total;
    if (halstead_is_operator(t)) {
      distinct_ops.insert(t.text);
    } else {
      distinct_operands.insert(t.text);
    }
  }
  return halstead_volume_from_counts(
      total, static_cast<long long>(distinct_ops.size() + distinct_operands.size()));
}

double maintainability_index(double hv, int cc, double sloc) {
  double v = hv <= 0.0 ? 1.0 : hv;
  return 171.0 - 5.2 * std::log(v) - 0.23 * cc - 16.2 * std::log(sloc);
}

ReadabilityFeatures readability_features(std::string_view body) {
  ReadabilityFeatures f;
  java::LexResult lexed = java::lex(body);

  int total = lexed.line_count;
  int code = 0, comment_only = 0, blank = 0;
  for (int l = 1; l <= total; ++l) {
    if (lexed.line_has_code[l]) {
      ++code;
    } else if (lexed.line_has_comment[l]) {
      ++comment_only;
    } else {
      ++blank;
    }
  }

  // per-line lengths over code lines only
  std::vector<int> lengths(total + 1, 0);
  int line = 1;
  int len = 0;
  auto note = [&] { lengths[line] = len; };
  for (char c : body) {
    if (c == '\n') {
      note();
      ++line;
      len = 0;
    } else {
      ++len;
    }
  }
  note();
  double sum_len = 0.0, max_len = 0.0;
  for (int l = 1; l <= total; ++l) {
    if (!lexed.line_has_code[l]) continue;
    sum_len += lengths[l];
    max_len = std::max(max_len, static_cast<double>(lengths[l]));
  }

  long long identifiers = 0;
  int depth = 0, max_depth = 0;
  for (const Token& t : lexed.tokens) {
    if (t.kind == TokenKind::Identifier) ++identifiers;
    if (t.text == "{") {
      ++depth;
      max_depth = std::max(max_depth, depth);
    } else if (t.text == "}") {
      --depth;
    }
  }

  f.comment_ratio = total > 0 ? static_cast<double>(comment_only) / total : 0.0;
  f.blank_ratio = (blank + code) > 0 ? static_cast<double>(blank) / (blank + code) : 0.0;
  f.avg_line_length = code > 0 ? sum_len / code : 0.0;
  f.max_line_length = max_len;
  f.identifiers_per_line = code > 0 ? static_cast<double>(identifiers) / code : 0.0;
  f.max_nesting = std::max(0, max_depth - 1); // method's own braces don't count
  return f;
}

double readability_score(std::string_view body, const ReadabilityWeights& w) {
  ReadabilityFeatures f = readability_features(body);
  double z = w.bias + w.comment_ratio * f.comment_ratio +
             w.blank_ratio * f.blank_ratio +
             w.avg_line_length * f.avg_line_length +
             w.max_line_length * f.max_line_length +
             w.identifiers_per_line * f.identifiers_per_line +
             w.max_nesting * f.max_nesting;
  double score = 1.0 / (1.0 + std::exp(-z));
  return std::clamp(score, 0.0, 1.0);
}

MetricVector compute_metrics(const java::MethodRecord& rec,
                             const MetricsOptions& opt) {
  MetricVector m;
  m.mccabe = mccabe(rec.body_text, opt.extended_mccabe);
  m.mcclure = mcclure(rec.body_text);
  m.halstead_volume = halstead_volume(rec.body_text);
  double sloc = std::max(1, java::record_sloc(rec, opt.mi_sloc_mode));
  m.maintainability_index = maintainability_index(m.halstead_volume, m.mccabe, sloc);
  m.readability = readability_score(rec.body_text, opt.weights);
  return m;
}

ReadabilityWeights load_readability_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  ReadabilityWeights w;
  w.bias = j.value("bias", w.bias);
  w.comment_ratio = j.value("comment_ratio", w.comment_ratio);
  w.blank_ratio = j.value("blank_ratio", w.blank_ratio);
  w.avg_line_length = j.value("avg_line_length", w.avg_line_length);
  w.max_line_length = j.value("max_line_length", w.max_line_length);
  w.identifiers_per_line = j.value("identifiers_per_line", w.identifiers_per_line);
  w.max_nesting = j.value("max_nesting", w.max_nesting);
  return w;
}

} // namespace maintlens::metrics
