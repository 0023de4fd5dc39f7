#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "maintlens/decomposition.hpp"
#include "oracles.hpp"

using namespace maintlens;
using namespace maintlens::decomp;

namespace {

// One synthetic method with an exact standard SLOC: signature line, one line
// per call, filler statements, closing brace.
std::string make_method(const std::string& name, int sloc,
                        const std::vector<std::string>& calls) {
  std::string out = "  void " + name + "() {\n";
  for (const std::string& c : calls) out += "    " + c + "();\n";
  int fillers = sloc - 2 - static_cast<int>(calls.size());
  for (int i = 0; i < fillers; ++i) {
    out += "    int v" + std::to_string(i) + " = " + std::to_string(i) + ";\n";
  }
  out += "  }\n";
  return out;
}

struct GraphFixture {
  std::vector<java::MethodRecord> records;
  std::map<std::string, std::string> id_by_name;
  std::map<std::string, int> sloc;
  std::map<std::string, history::IndicatorTotals> totals;

  std::string id(const std::string& name) const { return id_by_name.at(name); }
};

// The call-graph example: m1..m4 large, m5..m9 small; m4 calls m5; m5 calls
// m6 and m7; m7 calls m9; m8 has two callers (m1 and m2).
GraphFixture build_fixture() {
  std::string src = "class G {\n";
  src += make_method("m1", 40, {"m8"});
  src += make_method("m2", 36, {"m8"});
  src += make_method("m3", 28, {});
  src += make_method("m4", 80, {"m5"});
  src += make_method("m5", 20, {"m6", "m7"});
  src += make_method("m6", 20, {});
  src += make_method("m7", 8, {"m9"});
  src += make_method("m8", 8, {});
  src += make_method("m9", 8, {});
  src += "}\n";

  GraphFixture f;
  java::ExtractResult ex = java::extract_methods(src, "G.java", "demo");
  REQUIRE(!ex.error);
  f.records = std::move(ex.records);

  std::map<std::string, int> revisions = {{"m1", 3}, {"m2", 4}, {"m3", 1},
                                          {"m4", 3}, {"m5", 1}, {"m6", 1},
                                          {"m7", 0}, {"m8", 1}, {"m9", 0}};
  for (const java::MethodRecord& r : f.records) {
    REQUIRE(r.sloc_standard == r.sloc_as_is); // generator emits no blanks
    f.id_by_name[r.name] = r.method_id;
    f.sloc[r.method_id] = r.sloc_standard;
    history::IndicatorTotals t;
    t.n_revisions = revisions.at(r.name);
    t.n_additions_sum = t.n_revisions * 2; // arbitrary but fixed
    t.diff_size_sum = t.n_revisions * 3;
    t.edit_distance_sum = t.n_revisions * 10;
    t.n_buggy_commits = t.n_revisions > 1 ? 1 : 0;
    f.totals[r.method_id] = t;
  }
  return f;
}

std::set<std::pair<std::string, std::string>> edge_set(const CallGraph& g) {
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& [from, tos] : g.callees) {
    for (const std::string& to : tos) edges.emplace(from, to);
  }
  return edges;
}

} // namespace

TEST_CASE("call graph resolves name+arity call sites") {
  GraphFixture f = build_fixture();
  CallGraph g = build_call_graph(f.records);

  auto edges = edge_set(g);
  CHECK(edges.size() == 6);
  CHECK(edges.count({f.id("m4"), f.id("m5")}));
  CHECK(edges.count({f.id("m5"), f.id("m6")}));
  CHECK(edges.count({f.id("m5"), f.id("m7")}));
  CHECK(edges.count({f.id("m7"), f.id("m9")}));
  CHECK(edges.count({f.id("m1"), f.id("m8")}));
  CHECK(edges.count({f.id("m2"), f.id("m8")}));
  CHECK(g.in_degree.at(f.id("m8")) == 2);
  CHECK(g.in_degree.at(f.id("m6")) == 1);
  CHECK(g.in_degree.at(f.id("m1")) == 0);
}

TEST_CASE("library calls resolve to no edge; arity picks among same names") {
  std::string src =
      "class A {\n"
      "  void caller() {\n"
      "    helper(1, 2);\n"
      "    System.out.println(unknownHelper(3));\n"
      "  }\n"
      "  void helper(int a) { }\n"
      "  void helper(int a, int b) { }\n"
      "}\n";
  java::ExtractResult ex = java::extract_methods(src, "A.java", "p");
  REQUIRE(!ex.error);
  CallGraph g = build_call_graph(ex.records);

  const java::MethodRecord* two_arg = nullptr;
  const java::MethodRecord* caller = nullptr;
  for (const auto& r : ex.records) {
    if (r.name == "helper" && r.param_count == 2) two_arg = &r;
    if (r.name == "caller") caller = &r;
  }
  REQUIRE(two_arg);
  REQUIRE(caller);
  auto edges = edge_set(g);
  CHECK(edges.size() == 1);
  CHECK(edges.count({caller->method_id, two_arg->method_id}));
  CHECK(g.diagnostics.unresolved_calls >= 1); // println, unknownHelper
}

TEST_CASE("ambiguous same-name same-arity calls are reported, not edged") {
  std::string src =
      "class A {\n"
      "  void caller() { dup(1); }\n"
      "  void dup(int a) { }\n"
      "  void dup(long a) { }\n"
      "}\n";
  java::ExtractResult ex = java::extract_methods(src, "A.java", "p");
  CallGraph g = build_call_graph(ex.records);
  CHECK(edge_set(g).empty());
  REQUIRE(g.diagnostics.ambiguous.size() == 1);
  CHECK(std::get<1>(g.diagnostics.ambiguous[0]) == "dup");
}

TEST_CASE("merge candidates reproduce the published example chains") {
  GraphFixture f = build_fixture();
  CallGraph g = build_call_graph(f.records);
  EnumerateResult e = enumerate_merge_candidates(g, f.sloc, f.totals, 24);

  REQUIRE(e.candidates.size() == 4);
  std::map<std::vector<std::string>, const MergeCandidate*> by_members;
  for (const MergeCandidate& c : e.candidates) {
    std::vector<std::string> names;
    for (const std::string& id : c.member_ids) {
      for (const auto& [name, mid] : f.id_by_name) {
        if (mid == id) names.push_back(name);
      }
    }
    by_members[names] = &c;
  }
  REQUIRE(by_members.count({"m5", "m6"}));
  REQUIRE(by_members.count({"m5", "m7"}));
  REQUIRE(by_members.count({"m7", "m9"}));
  REQUIRE(by_members.count({"m5", "m7", "m9"}));
  CHECK(by_members.at({"m5", "m6"})->total_sloc == 40);
  CHECK(by_members.at({"m5", "m7"})->total_sloc == 28);
  CHECK(by_members.at({"m7", "m9"})->total_sloc == 16);
  CHECK(by_members.at({"m5", "m7", "m9"})->total_sloc == 36);
  CHECK(by_members.at({"m5", "m6"})->totals.n_revisions == 2);
  CHECK(by_members.at({"m5", "m7"})->totals.n_revisions == 1);
  CHECK(by_members.at({"m7", "m9"})->totals.n_revisions == 0);
  CHECK(by_members.at({"m5", "m7", "m9"})->totals.n_revisions == 1);

  // m8 never appears: two callers
  for (const MergeCandidate& c : e.candidates) {
    for (const std::string& id : c.member_ids) CHECK(id != f.id("m8"));
  }
}

TEST_CASE("chains are prefix-closed and respect the member SLOC limit") {
  GraphFixture f = build_fixture();
  CallGraph g = build_call_graph(f.records);
  EnumerateResult e = enumerate_merge_candidates(g, f.sloc, f.totals, 24);

  std::set<std::vector<std::string>> chains;
  for (const MergeCandidate& c : e.candidates) chains.insert(c.member_ids);
  for (const MergeCandidate& c : e.candidates) {
    for (const std::string& id : c.member_ids) CHECK(f.sloc.at(id) <= 24);
    for (std::size_t cut = 2; cut < c.member_ids.size(); ++cut) {
      std::vector<std::string> prefix(c.member_ids.begin(), c.member_ids.begin() + cut);
      CHECK(chains.count(prefix));
    }
    // every non-root member has in-degree 1
    for (std::size_t i = 1; i < c.member_ids.size(); ++i) {
      CHECK(g.in_degree.at(c.member_ids[i]) == 1);
    }
  }
}

TEST_CASE("cycles are skipped and reported") {
  std::string src =
      "class A {\n"
      "  void ping() { pong(); }\n"
      "  void pong() { ping(); }\n"
      "}\n";
  java::ExtractResult ex = java::extract_methods(src, "A.java", "p");
  CallGraph g = build_call_graph(ex.records);
  std::map<std::string, int> sloc;
  std::map<std::string, history::IndicatorTotals> totals;
  for (const auto& r : ex.records) {
    sloc[r.method_id] = 3;
    totals[r.method_id] = {};
  }
  EnumerateResult e = enumerate_merge_candidates(g, sloc, totals, 24);
  CHECK(!e.cycle_nodes.empty());
  for (const MergeCandidate& c : e.candidates) {
    std::set<std::string> unique(c.member_ids.begin(), c.member_ids.end());
    CHECK(unique.size() == c.member_ids.size());
  }
}

TEST_CASE("the SLOC-match filter keeps exactly the common sizes") {
  GraphFixture f = build_fixture();
  CallGraph g = build_call_graph(f.records);
  EnumerateResult e = enumerate_merge_candidates(g, f.sloc, f.totals, 24);

  std::vector<IndividualEntry> individuals;
  for (const java::MethodRecord& r : f.records) {
    if (f.sloc.at(r.method_id) > 24) {
      individuals.push_back(
          {r.method_id, f.sloc.at(r.method_id), f.totals.at(r.method_id), false});
    }
  }
  REQUIRE(individuals.size() == 4); // m1, m2, m3, m4

  sloc_match_filter(individuals, e.candidates);

  std::map<int, bool> individual_selected;
  for (const IndividualEntry& entry : individuals) {
    individual_selected[entry.sloc] = entry.selected;
  }
  CHECK(individual_selected.at(40));
  CHECK(individual_selected.at(36));
  CHECK(individual_selected.at(28));
  CHECK(!individual_selected.at(80)); // m4 dropped

  std::map<int, bool> merged_selected;
  for (const MergeCandidate& c : e.candidates) merged_selected[c.total_sloc] = c.selected;
  CHECK(merged_selected.at(40));
  CHECK(merged_selected.at(28));
  CHECK(merged_selected.at(36));
  CHECK(!merged_selected.at(16)); // {m7, m9} dropped

  std::set<int> ind_set, mrg_set;
  for (const IndividualEntry& entry : individuals) {
    if (entry.selected) ind_set.insert(entry.sloc);
  }
  for (const MergeCandidate& c : e.candidates) {
    if (c.selected) mrg_set.insert(c.total_sloc);
  }
  CHECK(ind_set == mrg_set);
}

TEST_CASE("the SLOC-match filter is symmetric and handles edge cases") {
  auto entry = [](int sloc) { return IndividualEntry{"x", sloc, {}, false}; };
  auto cand = [](int sloc) {
    MergeCandidate c;
    c.total_sloc = sloc;
    return c;
  };

  SUBCASE("disjoint sets select nothing") {
    std::vector<IndividualEntry> ind = {entry(30), entry(40)};
    std::vector<MergeCandidate> mrg = {cand(25), cand(35)};
    sloc_match_filter(ind, mrg);
    for (auto& e : ind) CHECK(!e.selected);
    for (auto& c : mrg) CHECK(!c.selected);
  }
  SUBCASE("identical multisets select everything") {
    std::vector<IndividualEntry> ind = {entry(30), entry(30), entry(40)};
    std::vector<MergeCandidate> mrg = {cand(40), cand(30)};
    sloc_match_filter(ind, mrg);
    for (auto& e : ind) CHECK(e.selected);
    for (auto& c : mrg) CHECK(c.selected);
  }
}

TEST_CASE("compare_groups wires rank-sum and delta with direction") {
  auto entries = [](std::vector<int> revs) {
    std::vector<IndividualEntry> out;
    for (int r : revs) {
      IndividualEntry e;
      e.method_id = "m" + std::to_string(r);
      e.sloc = 30;
      e.totals.n_revisions = r;
      e.selected = true;
      out.push_back(e);
    }
    return out;
  };
  auto cands = [](std::vector<int> revs) {
    std::vector<MergeCandidate> out;
    for (int r : revs) {
      MergeCandidate c;
      c.total_sloc = 30;
      c.totals.n_revisions = r;
      c.selected = true;
      out.push_back(c);
    }
    return out;
  };

  SUBCASE("identical distributions: delta 0, negligible") {
    auto cmp = compare_groups(entries({2, 3, 4}), cands({2, 3, 4}),
                              maintlens::history::Indicator::Revisions);
    CHECK(!cmp.insufficient);
    CHECK(cmp.delta == doctest::Approx(0.0));
    CHECK(cmp.effect_class == stats::EffectClass::Negligible);
    CHECK(cmp.direction == "none");
  }
  SUBCASE("complete separation: delta +1, large, merged lower") {
    auto cmp = compare_groups(entries({5, 6, 7}), cands({1, 2, 2}),
                              maintlens::history::Indicator::Revisions);
    CHECK(cmp.delta == doctest::Approx(1.0));
    CHECK(cmp.effect_class == stats::EffectClass::Large);
    CHECK(cmp.direction == "merged_lower");
  }
  SUBCASE("published fixture values against the brute-force oracles") {
    auto cmp = compare_groups(entries({3, 4, 1}), cands({2, 1, 1}),
                              maintlens::history::Indicator::Revisions);
    std::vector<double> a = {3, 4, 1}, b = {2, 1, 1};
    CHECK(cmp.delta == doctest::Approx(oracles::cliffs_delta_direct(a, b)).epsilon(1e-12));
    CHECK(cmp.p_value == doctest::Approx(oracles::rank_sum_exact_p(a, b)).epsilon(1e-9));
  }
  SUBCASE("fewer than two entries on a side is insufficient") {
    auto cmp = compare_groups(entries({3}), cands({2, 1}),
                              maintlens::history::Indicator::Revisions);
    CHECK(cmp.insufficient);
  }
}
