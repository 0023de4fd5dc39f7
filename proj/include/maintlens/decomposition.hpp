#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "maintlens/history.hpp"
#include "maintlens/java_extractor.hpp"
#include "maintlens/stats.hpp"

namespace maintlens::decomp {

struct CallGraph {
  std::vector<std::string> nodes; // method_ids, sorted
  // caller -> distinct callees, deterministic order
  std::map<std::string, std::vector<std::string>> callees;
  std::map<std::string, int> in_degree; // distinct callers

  struct Diagnostics {
    int resolved_calls = 0;
    int unresolved_calls = 0; // no project method with that name/arity
    // caller method_id, callee name, arity; name/arity matched more than one method
    std::vector<std::tuple<std::string, std::string, int>> ambiguous;
  };
  Diagnostics diagnostics;
};

// Edge (A -> B) iff A's body contains an invocation whose name and argument
// count match exactly one method of the project. No type resolution.
CallGraph build_call_graph(std::span<const java::MethodRecord> records);

// A call chain of small methods treated as one decomposed large method.
struct MergeCandidate {
  std::vector<std::string> member_ids; // root first
  int total_sloc = 0;
  history::IndicatorTotals totals;
  bool selected = false;
};

struct EnumerateResult {
  std::vector<MergeCandidate> candidates;
  std::vector<std::string> cycle_nodes; // nodes where a chain would revisit
};

// All chains M0 -> M1 -> ... -> Mk (k >= 1) where every non-root member has
// in-degree exactly 1 (its sole caller is the predecessor) and every
// member's own SLOC <= limit. Prefixes of longer chains are included.
EnumerateResult enumerate_merge_candidates(
    const CallGraph& graph, const std::map<std::string, int>& sloc,
    const std::map<std::string, history::IndicatorTotals>& totals,
    int limit = 24);

struct IndividualEntry {
  std::string method_id;
  int sloc = 0;
  history::IndicatorTotals totals;
  bool selected = false;
};

// Keeps only entries whose SLOC value occurs in the other group; afterwards
// the distinct-SLOC sets of the two selected groups are equal.
void sloc_match_filter(std::vector<IndividualEntry>& individuals,
                       std::vector<MergeCandidate>& merged);

struct GroupComparison {
  std::string indicator;
  std::vector<double> individual;
  std::vector<double> merged;
  bool insufficient = false; // fewer than 2 selected entries on a side
  double p_value = 1.0;
  double delta = 0.0;
  stats::EffectClass effect_class = stats::EffectClass::Negligible;
  std::string direction; // "merged_lower", "individual_lower", or "none"
};

// Wilcoxon rank-sum plus Cliff's delta (individual vs merged) over the
// selected entries of both groups.
GroupComparison compare_groups(const std::vector<IndividualEntry>& individuals,
                               const std::vector<MergeCandidate>& merged,
                               history::Indicator indicator,
                               const stats::StatOptions& options = {});

} // namespace maintlens::decomp
