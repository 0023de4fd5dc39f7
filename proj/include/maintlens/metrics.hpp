#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maintlens/java_extractor.hpp"

namespace maintlens::metrics {

struct MetricVector {
  int mccabe = 1;
  int mcclure = 0;
  double halstead_volume = 0.0;
  double maintainability_index = 0.0;
  double readability = 0.0;
};

// Feature weights for the readability score. Positive weights reward a
// feature, negative weights penalize it; the combination is squashed by a
// logistic and clamped to [0, 1].
struct ReadabilityWeights {
  double bias = 1.0;
  double comment_ratio = 2.0;    // comment-only lines / total lines
  double blank_ratio = 1.5;      // blank lines / (blank + code lines)
  double avg_line_length = -0.02;  // chars, over code lines
  double max_line_length = -0.012; // chars, over code lines
  double identifiers_per_line = -0.15;
  double max_nesting = -0.2;       // brace depth inside the body
};

struct MetricsOptions {
  bool extended_mccabe = false; // also count '&&' and '||'
  java::SlocMode mi_sloc_mode = java::SlocMode::Standard;
  ReadabilityWeights weights;
};

// 1 + number of predicate points: if, for, while (covers do-while), each
// non-default case label, each catch clause, each ternary conditional;
// '&&' and '||' only when extended is set. Operates on the tokens inside
// the method's outermost braces.
int mccabe(std::string_view body_tokens_source, bool extended = false);

// Comparisons plus distinct variables inside predicate expressions
// (conditions of if/while/do-while, the middle clause of for, and the
// switch selector). Variables are identifiers that are neither invoked
// nor member accesses; distinctness is method-wide.
int mcclure(std::string_view body_tokens_source);

// V = N * log2(eta) over the tokens inside the outermost braces; 0 when
// the body has no tokens. Classification: keywords, operators, and
// evaluation-governing punctuation are operators; identifiers and
// literals are operands (see halstead_is_operator).
double halstead_volume(std::string_view body_tokens_source);
double halstead_volume_from_counts(long long total, long long distinct);

// The token classification table, exposed for tests and documentation.
bool halstead_is_operator(const java::Token& token);

// 171 - 5.2*ln(hv) - 0.23*cc - 16.2*ln(sloc); hv == 0 is treated as 1.
double maintainability_index(double halstead_volume, int cyclomatic, double sloc);

// Logistic feature combination clamped to [0, 1]; deterministic for a
// fixed (body, weights) pair.
double readability_score(std::string_view body_text, const ReadabilityWeights& weights);

// Raw readability features, exposed so tests can recompute the score.
struct ReadabilityFeatures {
  double comment_ratio = 0.0;
  double blank_ratio = 0.0;
  double avg_line_length = 0.0;
  double max_line_length = 0.0;
  double identifiers_per_line = 0.0;
  double max_nesting = 0.0;
};
ReadabilityFeatures readability_features(std::string_view body_text);

// Full vector for one record; expects record.body_text as produced by the
// extractor (signature line through closing brace).
MetricVector compute_metrics(const java::MethodRecord& record,
                             const MetricsOptions& options = {});

ReadabilityWeights load_readability_weights(const std::string& json_path);

} // namespace maintlens::metrics
