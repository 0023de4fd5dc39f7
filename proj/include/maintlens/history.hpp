#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maintlens::history {

// One recorded change of a method's body.
struct Revision {
  std::string commit_id;
  std::int64_t timestamp = 0;
  int lines_added = 0;
  int lines_deleted = 0;
  long long edit_distance = 0;
  bool is_bugfix = false;
  std::string body_after; // may be empty for ingested histories
  int sloc_after = -1;    // <0 means unknown, derive from body_after

  int diff_size() const { return lines_added + lines_deleted; }
};

struct MethodHistory {
  std::string method_id;
  std::string birth_commit;
  std::int64_t birth_timestamp = 0;
  std::int64_t end_of_observation = 0;
  std::string birth_body;
  int birth_sloc = -1;
  bool truncated = false; // tracing stopped at an unbridged rename
  std::vector<Revision> revisions; // chronological
};

// One SLOC-stable slice of a method's lifetime.
struct MethodVersion {
  int sloc = 0;
  int n_revisions = 0;
  int n_additions = 0;
  int diff_size_sum = 0;
  long long edit_distance_sum = 0;
  int n_buggy_commits = 0;
};

struct IndicatorTotals {
  int n_revisions = 0;
  int n_additions_sum = 0;
  int diff_size_sum = 0;
  long long edit_distance_sum = 0;
  int n_buggy_commits = 0;

  bool operator==(const IndicatorTotals&) const = default;
};

// The five maintenance indicators, in report order.
enum class Indicator { Revisions, Additions, DiffSize, EditDistance, BuggyCommits };
inline constexpr Indicator kIndicators[] = {
    Indicator::Revisions, Indicator::Additions, Indicator::DiffSize,
    Indicator::EditDistance, Indicator::BuggyCommits};
const char* indicator_name(Indicator ind);
double indicator_value(const IndicatorTotals& totals, Indicator ind);
double indicator_value(const MethodVersion& version, Indicator ind);

const std::vector<std::string>& default_bug_keywords();
std::vector<std::string> load_keywords(const std::string& path);

// True iff any case-insensitive whole-word alphabetic token of the message
// equals a keyword.
bool classify_bugfix(std::string_view message,
                     const std::vector<std::string>& keywords = default_bug_keywords());

// Character-level insert/delete/substitute distance.
long long levenshtein(std::string_view a, std::string_view b);

// Line-level diff counts (zero context), via longest common subsequence.
struct LineDiff {
  int added = 0;
  int deleted = 0;
};
LineDiff line_diff(std::string_view before, std::string_view after);

inline constexpr double kSecondsPerYear = 365.25 * 86400.0;

// Drops methods younger than the window and truncates revisions past
// birth + window; the window boundary is inclusive. Returns nullopt when
// the method is excluded. Idempotent.
std::optional<MethodHistory> normalize_age(const MethodHistory& history,
                                           double window_years = 2.0);

// Collapses consecutive equal-SLOC snapshots into versions; each revision
// is attributed to the version whose SLOC was current when it happened.
using SlocOf = std::function<int(std::string_view body)>;
std::vector<MethodVersion> versionize(const MethodHistory& history,
                                      const SlocOf& sloc_of);

IndicatorTotals compute_indicators(const MethodHistory& history);
IndicatorTotals sum_versions(const std::vector<MethodVersion>& versions);

} // namespace maintlens::history
