#include "maintlens/decomposition.hpp"

#include <algorithm>

namespace maintlens::decomp {

using java::Token;
using java::TokenKind;

namespace {

struct CallSite {
  std::string name;
  int argc = 0;
};

// Invocation sites in a method body: identifier followed by '(' that is not
// a declaration (previous token is not a type-ish token) plus constructor
// invocations 'new Name(...)'. Argument count = top-level commas + 1.
std::vector<CallSite> find_call_sites(std::string_view body) {
  std::vector<CallSite> sites;
  java::LexResult lexed;
  try {
    lexed = java::lex(body);
  } catch (const java::LexError&) {
    return sites;
  }
  const auto& toks = lexed.tokens;

  auto count_args = [&](std::size_t open) {
    int depth = 0;
    int commas = 0;
    bool any = false;
    for (std::size_t k = open; k < toks.size(); ++k) {
      std::string_view t = toks[k].text;
      if (t == "(" || t == "[" || t == "{") {
        ++depth;
      } else if (t == ")" || t == "]" || t == "}") {
        --depth;
        if (depth == 0) break;
      } else if (depth == 1) {
        any = true;
        if (t == ",") ++commas;
      }
    }
    return any ? commas + 1 : 0;
  };

  for (std::size_t k = 0; k + 1 < toks.size(); ++k) {
    if (toks[k].kind != TokenKind::Identifier) continue;
    if (toks[k + 1].text != "(") continue;
    if (k > 0) {
      const Token& prev = toks[k - 1];
      if (prev.text == "new") {
        // constructor call; argument count still applies
      } else if (prev.kind == TokenKind::Identifier ||
                 (prev.kind == TokenKind::Keyword && java::is_type_keyword(prev.text)) ||
                 prev.text == ">" || prev.text == "]" || prev.text == "@") {
        continue; // declaration, annotation, or cast-like context
      }
    }
    sites.push_back({std::string(toks[k].text), count_args(k + 1)});
  }
  return sites;
}

} // namespace

CallGraph build_call_graph(std::span<const java::MethodRecord> records) {
  CallGraph g;
  std::map<std::pair<std::string, int>, std::vector<const java::MethodRecord*>> by_key;
  for (const java::MethodRecord& r : records) {
    g.nodes.push_back(r.method_id);
    by_key[{r.name, r.param_count}].push_back(&r);
  }
  std::sort(g.nodes.begin(), g.nodes.end());

  std::map<std::string, std::set<std::string>> edge_sets;
  for (const java::MethodRecord& caller : records) {
    for (const CallSite& site : find_call_sites(caller.body_text)) {
      auto it = by_key.find({site.name, site.argc});
      if (it == by_key.end()) {
        ++g.diagnostics.unresolved_calls;
        continue;
      }
      if (it->second.size() > 1) {
        g.diagnostics.ambiguous.emplace_back(caller.method_id, site.name, site.argc);
        continue;
      }
      ++g.diagnostics.resolved_calls;
      edge_sets[caller.method_id].insert(it->second.front()->method_id);
    }
  }

  std::map<std::string, std::set<std::string>> callers;
  for (auto& [from, tos] : edge_sets) {
    g.callees[from] = std::vector<std::string>(tos.begin(), tos.end());
    for (const std::string& to : tos) callers[to].insert(from);
  }
  for (const std::string& node : g.nodes) {
    auto it = callers.find(node);
    g.in_degree[node] = it == callers.end() ? 0 : static_cast<int>(it->second.size());
  }
  return g;
}

EnumerateResult enumerate_merge_candidates(
    const CallGraph& graph, const std::map<std::string, int>& sloc,
    const std::map<std::string, history::IndicatorTotals>& totals, int limit) {
  EnumerateResult result;
  std::set<std::string> cycles;

  auto sloc_of = [&](const std::string& id) {
    auto it = sloc.find(id);
    return it == sloc.end() ? 0 : it->second;
  };
  auto totals_of = [&](const std::string& id) {
    auto it = totals.find(id);
    return it == totals.end() ? history::IndicatorTotals{} : it->second;
  };

  std::vector<std::string> chain;
  std::set<std::string> on_chain;

  auto extend = [&](auto&& self, const std::string& tip) -> void {
    auto it = graph.callees.find(tip);
    if (it == graph.callees.end()) return;
    for (const std::string& callee : it->second) {
      if (on_chain.count(callee)) {
        cycles.insert(callee);
        continue;
      }
      auto deg = graph.in_degree.find(callee);
      if (deg == graph.in_degree.end() || deg->second != 1) continue;
      if (sloc_of(callee) > limit) continue;

      chain.push_back(callee);
      on_chain.insert(callee);

      MergeCandidate cand;
      cand.member_ids = chain;
      for (const std::string& id : chain) {
        cand.total_sloc += sloc_of(id);
        history::IndicatorTotals t = totals_of(id);
        cand.totals.n_revisions += t.n_revisions;
        cand.totals.n_additions_sum += t.n_additions_sum;
        cand.totals.diff_size_sum += t.diff_size_sum;
        cand.totals.edit_distance_sum += t.edit_distance_sum;
        cand.totals.n_buggy_commits += t.n_buggy_commits;
      }
      result.candidates.push_back(std::move(cand));

      self(self, callee);
      on_chain.erase(callee);
      chain.pop_back();
    }
  };

  for (const std::string& root : graph.nodes) {
    if (sloc_of(root) > limit) continue;
    chain = {root};
    on_chain = {root};
    extend(extend, root);
  }
  result.cycle_nodes.assign(cycles.begin(), cycles.end());
  return result;
}

void sloc_match_filter(std::vector<IndividualEntry>& individuals,
                       std::vector<MergeCandidate>& merged) {
  std::set<int> ind_slocs, merged_slocs;
  for (const IndividualEntry& e : individuals) ind_slocs.insert(e.sloc);
  for (const MergeCandidate& c : merged) merged_slocs.insert(c.total_sloc);

  for (IndividualEntry& e : individuals) {
    e.selected = merged_slocs.count(e.sloc) > 0;
  }
  for (MergeCandidate& c : merged) {
    c.selected = ind_slocs.count(c.total_sloc) > 0;
  }
}

GroupComparison compare_groups(const std::vector<IndividualEntry>& individuals,
                               const std::vector<MergeCandidate>& merged,
                               history::Indicator indicator,
                               const stats::StatOptions& options) {
  GroupComparison cmp;
  cmp.indicator = history::indicator_name(indicator);
  for (const IndividualEntry& e : individuals) {
    if (e.selected) cmp.individual.push_back(history::indicator_value(e.totals, indicator));
  }
  for (const MergeCandidate& c : merged) {
    if (c.selected) cmp.merged.push_back(history::indicator_value(c.totals, indicator));
  }
  if (cmp.individual.size() < 2 || cmp.merged.size() < 2) {
    cmp.insufficient = true;
    cmp.direction = "none";
    return cmp;
  }
  stats::StatResult rank = stats::rank_sum_test(cmp.individual, cmp.merged, options);
  stats::StatResult delta = stats::cliffs_delta(cmp.individual, cmp.merged);
  cmp.p_value = rank.p_value.value_or(1.0);
  cmp.delta = delta.statistic;
  cmp.effect_class = *delta.effect_class;
  if (cmp.delta > 0) {
    cmp.direction = "merged_lower";
  } else if (cmp.delta < 0) {
    cmp.direction = "individual_lower";
  } else {
    cmp.direction = "none";
  }
  return cmp;
}

} // namespace maintlens::decomp
