#include "maintlens/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "maintlens/git_repo.hpp"

namespace maintlens::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void sort_records(std::vector<java::MethodRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const java::MethodRecord& a, const java::MethodRecord& b) {
              return std::tie(a.project_id, a.file_path, a.start_line) <
                     std::tie(b.project_id, b.file_path, b.start_line);
            });
}

std::vector<std::string> sorted_projects(const io::RecordSet& set) {
  std::set<std::string> projects;
  for (const auto& r : set.records) projects.insert(r.project_id);
  return {projects.begin(), projects.end()};
}

} // namespace

int run_extract(const ExtractConfig& cfg) {
  io::RecordSet set;
  int skipped = 0;

  auto handle = [&](const std::string& rel_path, const std::string& content) {
    java::ExtractResult res = java::extract_methods(content, rel_path, cfg.project_id);
    if (res.error) {
      std::cerr << "warning: skipped " << res.error->file_path << ":"
                << res.error->line << ": " << res.error->message << "\n";
      ++skipped;
      return;
    }
    for (java::MethodRecord& r : res.records) {
      if (cfg.exclude_accessors && r.is_accessor) continue;
      set.records.push_back(std::move(r));
    }
  };

  if (!cfg.root_dir.empty()) {
    std::vector<std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(cfg.root_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".java") {
        files.push_back(fs::relative(entry.path(), cfg.root_dir).generic_string());
      }
    }
    std::sort(files.begin(), files.end());
    for (const std::string& rel : files) {
      handle(rel, io::read_text_file((fs::path(cfg.root_dir) / rel).string()));
    }
  } else if (!cfg.repo_dir.empty()) {
    git::GitRepo repo(cfg.repo_dir);
    std::vector<std::string> files = repo.ls_files(cfg.snapshot);
    std::sort(files.begin(), files.end());
    for (const std::string& path : files) {
      if (!path.ends_with(".java")) continue;
      auto content = repo.show_file(cfg.snapshot, path);
      if (content) handle(path, *content);
    }
  } else {
    std::cerr << "error: extract needs --root or --repo\n";
    return kExitFatal;
  }

  sort_records(set.records);
  io::write_records(cfg.out_path, set);
  return skipped > 0 ? kExitPartial : kExitOk;
}

int run_metrics(const MetricsConfig& cfg) {
  io::RecordSet set = io::read_records(cfg.in_path);
  for (const java::MethodRecord& r : set.records) {
    set.metric_vectors[r.method_id] = metrics::compute_metrics(r, cfg.options);
  }
  io::write_records(cfg.out_path, set);

  if (!cfg.csv_path.empty()) {
    std::string csv =
        "method_id,project_id,file_path,name,sloc_standard,sloc_as_is,"
        "sloc_pretty,mccabe,mcclure,halstead_volume,maintainability_index,"
        "readability\n";
    for (const java::MethodRecord& r : set.records) {
      const metrics::MetricVector& m = set.metric_vectors[r.method_id];
      csv += r.method_id + "," + r.project_id + "," + r.file_path + "," + r.name +
             "," + std::to_string(r.sloc_standard) + "," +
             std::to_string(r.sloc_as_is) + "," + std::to_string(r.sloc_pretty) +
             "," + std::to_string(m.mccabe) + "," + std::to_string(m.mcclure) +
             "," + io::format_fixed(m.halstead_volume) + "," +
             io::format_fixed(m.maintainability_index) + "," +
             io::format_fixed(m.readability) + "\n";
    }
    io::write_text_file(cfg.csv_path, csv);
  }
  return kExitOk;
}

int run_history(const HistoryConfig& cfg) {
  io::RecordSet set = io::read_records(cfg.records_path);
  sort_records(set.records);

  std::vector<history::MethodHistory> histories;

  if (!cfg.history_in.empty()) {
    std::vector<history::MethodHistory> ingested = io::read_histories(cfg.history_in);
    std::map<std::string, history::MethodHistory> by_id;
    for (auto& h : ingested) by_id[h.method_id] = std::move(h);
    for (const java::MethodRecord& r : set.records) {
      auto it = by_id.find(r.method_id);
      if (it != by_id.end()) histories.push_back(it->second);
    }
  } else if (!cfg.repo_dir.empty()) {
    git::GitRepo repo(cfg.repo_dir);
    git::TraceOptions topt;
    topt.rename_similarity = cfg.rename_similarity;
    topt.bug_keywords = cfg.bug_keywords;
    topt.sloc_mode = cfg.sloc_mode;
    git::MethodTracer tracer(repo, cfg.snapshot, topt);
    for (const java::MethodRecord& r : set.records) {
      histories.push_back(tracer.trace(r));
    }
  } else {
    std::cerr << "error: history needs --repo or --history-in\n";
    return kExitFatal;
  }

  if (cfg.age_filter) {
    std::vector<history::MethodHistory> kept;
    for (const history::MethodHistory& h : histories) {
      if (auto normalized = history::normalize_age(h, cfg.window_years)) {
        kept.push_back(std::move(*normalized));
      }
    }
    histories = std::move(kept);
  }

  io::write_histories(cfg.out_path, histories);
  return kExitOk;
}

int run_thresholds(const ThresholdsConfig& cfg) {
  json out;
  if (cfg.fixed) {
    out["t70"] = cfg.fixed->t70;
    out["t80"] = cfg.fixed->t80;
    out["t90"] = cfg.fixed->t90;
    out["x_axis"] = json::array();
    out["y_axis"] = json::array();
  } else {
    io::RecordSet set = io::read_records(cfg.records_path);
    std::map<std::string, std::vector<int>> by_project;
    for (const java::MethodRecord& r : set.records) {
      by_project[r.project_id].push_back(r.sloc_standard);
    }
    std::vector<std::vector<int>> projects;
    for (auto& [id, slocs] : by_project) projects.push_back(std::move(slocs));
    thresholds::Derivation d = thresholds::derive_thresholds(projects, cfg.percentiles);
    out["t70"] = d.thresholds.t70;
    out["t80"] = d.thresholds.t80;
    out["t90"] = d.thresholds.t90;
    out["x_axis"] = d.x_axis;
    out["y_axis"] = d.y_axis;
  }
  io::write_text_file(cfg.out_path, out.dump() + "\n");
  return kExitOk;
}

thresholds::SizeThresholds load_thresholds_json(const std::string& path) {
  json j = json::parse(io::read_text_file(path));
  thresholds::SizeThresholds t;
  t.t70 = j.at("t70").get<int>();
  t.t80 = j.at("t80").get<int>();
  t.t90 = j.at("t90").get<int>();
  return t;
}

std::vector<AnalysisUnit> build_analysis_units(
    const io::RecordSet& set, const std::vector<history::MethodHistory>& histories,
    java::SlocMode mode) {
  std::map<std::string, const java::MethodRecord*> records_by_id;
  for (const java::MethodRecord& r : set.records) records_by_id[r.method_id] = &r;

  std::vector<AnalysisUnit> units;
  for (const history::MethodHistory& h : histories) {
    auto it = records_by_id.find(h.method_id);
    if (it == records_by_id.end()) continue;
    const java::MethodRecord& rec = *it->second;
    auto sloc_of = [&](std::string_view body) {
      if (body.empty()) return java::record_sloc(rec, mode);
      return java::compute_sloc(body, mode);
    };
    for (const history::MethodVersion& v : history::versionize(h, sloc_of)) {
      AnalysisUnit u;
      u.project_id = rec.project_id;
      u.method_id = rec.method_id;
      u.sloc = v.sloc;
      u.version = v;
      units.push_back(std::move(u));
    }
  }
  return units;
}

std::vector<ReportRow> correlation_rows(const std::vector<AnalysisUnit>& units,
                                        const stats::StatOptions& opt) {
  std::map<std::string, std::vector<const AnalysisUnit*>> by_project;
  for (const AnalysisUnit& u : units) by_project[u.project_id].push_back(&u);

  std::vector<ReportRow> rows;
  for (const auto& [project, list] : by_project) {
    for (history::Indicator ind : history::kIndicators) {
      ReportRow row;
      row.project_id = project;
      row.grouping = std::string("sloc_vs_") + history::indicator_name(ind);
      row.n_a = static_cast<long long>(list.size());
      row.n_b = row.n_a;
      std::vector<double> x, y;
      for (const AnalysisUnit* u : list) {
        x.push_back(u->sloc);
        y.push_back(history::indicator_value(u->version, ind));
      }
      try {
        stats::StatResult r = stats::kendall_tau(x, y, opt);
        row.statistic = r.statistic;
        row.p_value = r.p_value.value_or(std::numeric_limits<double>::quiet_NaN());
      } catch (const stats::StatError&) {
        // constant side: leave the row as "na"
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ReportRow> category_rows(const std::vector<AnalysisUnit>& units,
                                     const thresholds::SizeThresholds& cutoffs,
                                     const stats::StatOptions& opt) {
  using thresholds::SizeCategory;
  static constexpr std::pair<SizeCategory, SizeCategory> kPairs[] = {
      {SizeCategory::Small, SizeCategory::Medium},
      {SizeCategory::Medium, SizeCategory::Large},
      {SizeCategory::Large, SizeCategory::VeryLarge}};

  std::map<std::string, std::vector<const AnalysisUnit*>> by_project;
  for (const AnalysisUnit& u : units) by_project[u.project_id].push_back(&u);

  std::vector<ReportRow> rows;
  for (const auto& [project, list] : by_project) {
    std::map<SizeCategory, std::vector<const AnalysisUnit*>> buckets;
    for (const AnalysisUnit* u : list) {
      buckets[thresholds::categorize(u->sloc, cutoffs)].push_back(u);
    }
    for (const auto& [lo, hi] : kPairs) {
      for (history::Indicator ind : history::kIndicators) {
        ReportRow row;
        row.project_id = project;
        row.grouping = std::string(thresholds::size_category_name(lo)) + "-" +
                       thresholds::size_category_name(hi) + ":" +
                       history::indicator_name(ind);
        std::vector<double> a, b;
        for (const AnalysisUnit* u : buckets[lo]) {
          a.push_back(history::indicator_value(u->version, ind));
        }
        for (const AnalysisUnit* u : buckets[hi]) {
          b.push_back(history::indicator_value(u->version, ind));
        }
        row.n_a = static_cast<long long>(a.size());
        row.n_b = static_cast<long long>(b.size());
        if (a.size() >= 2 && b.size() >= 2) {
          stats::StatResult rank = stats::rank_sum_test(a, b, opt);
          stats::StatResult delta = stats::cliffs_delta(a, b);
          row.statistic = rank.statistic;
          row.p_value = rank.p_value.value_or(std::numeric_limits<double>::quiet_NaN());
          row.effect_size = delta.statistic;
          row.effect_class = stats::effect_class_name(*delta.effect_class);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string emit_report(std::vector<ReportRow> rows, const std::string& format) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.project_id, a.grouping) < std::tie(b.project_id, b.grouping);
  });
  if (format == "json") {
    json arr = json::array();
    for (const ReportRow& r : rows) {
      json j;
      j["project"] = r.project_id;
      j["grouping"] = r.grouping;
      if (!std::isnan(r.statistic)) j["statistic"] = r.statistic;
      if (!std::isnan(r.p_value)) j["p_value"] = r.p_value;
      if (!std::isnan(r.effect_size)) j["effect_size"] = r.effect_size;
      j["effect_class"] = r.effect_class;
      j["n_a"] = r.n_a;
      j["n_b"] = r.n_b;
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::string out = "project,grouping,statistic,p_value,effect_size,effect_class,n_a,n_b\n";
  for (const ReportRow& r : rows) {
    out += r.project_id + "," + r.grouping + "," + io::format_fixed(r.statistic) +
           "," + io::format_fixed(r.p_value) + "," + io::format_fixed(r.effect_size) +
           "," + r.effect_class + "," + std::to_string(r.n_a) + "," +
           std::to_string(r.n_b) + "\n";
  }
  return out;
}

int run_analyze(const AnalyzeConfig& cfg) {
  io::RecordSet set = io::read_records(cfg.records_path);
  std::vector<history::MethodHistory> histories = io::read_histories(cfg.histories_path);

  thresholds::SizeThresholds cutoffs;
  if (cfg.fixed) {
    cutoffs = *cfg.fixed;
  } else if (!cfg.thresholds_path.empty()) {
    cutoffs = load_thresholds_json(cfg.thresholds_path);
  } else {
    cutoffs = thresholds::kDefaultThresholds;
  }

  std::vector<AnalysisUnit> units = build_analysis_units(set, histories, cfg.sloc_mode);

  fs::create_directories(cfg.out_dir);
  std::string ext = cfg.format == "json" ? ".json" : ".csv";
  io::write_text_file((fs::path(cfg.out_dir) / ("correlations" + ext)).string(),
                      emit_report(correlation_rows(units, cfg.stat_options), cfg.format));
  io::write_text_file((fs::path(cfg.out_dir) / ("categories" + ext)).string(),
                      emit_report(category_rows(units, cutoffs, cfg.stat_options), cfg.format));
  return kExitOk;
}

int run_decompose(const DecomposeConfig& cfg) {
  io::RecordSet set = io::read_records(cfg.records_path);
  sort_records(set.records);
  std::vector<history::MethodHistory> histories = io::read_histories(cfg.histories_path);

  std::map<std::string, history::IndicatorTotals> totals;
  for (const history::MethodHistory& h : histories) {
    totals[h.method_id] = history::compute_indicators(h);
  }

  std::string candidates_jsonl;
  std::vector<ReportRow> rows;

  for (const std::string& project : sorted_projects(set)) {
    std::vector<java::MethodRecord> project_records;
    for (const java::MethodRecord& r : set.records) {
      if (r.project_id == project) project_records.push_back(r);
    }
    decomp::CallGraph graph = decomp::build_call_graph(project_records);

    std::map<std::string, int> sloc;
    for (const java::MethodRecord& r : project_records) {
      sloc[r.method_id] = java::record_sloc(r, cfg.sloc_mode);
    }

    decomp::EnumerateResult enumerated =
        decomp::enumerate_merge_candidates(graph, sloc, totals, cfg.sloc_limit);

    // only methods with history participate in the comparison
    std::erase_if(enumerated.candidates, [&](const decomp::MergeCandidate& c) {
      return std::any_of(c.member_ids.begin(), c.member_ids.end(),
                         [&](const std::string& id) { return !totals.count(id); });
    });

    std::vector<decomp::IndividualEntry> individuals;
    for (const java::MethodRecord& r : project_records) {
      int s = sloc[r.method_id];
      if (s <= cfg.sloc_limit) continue;
      auto it = totals.find(r.method_id);
      if (it == totals.end()) continue;
      individuals.push_back({r.method_id, s, it->second, false});
    }

    decomp::sloc_match_filter(individuals, enumerated.candidates);

    for (const decomp::MergeCandidate& c : enumerated.candidates) {
      json j;
      j["project"] = project;
      j["member_ids"] = c.member_ids;
      j["total_sloc"] = c.total_sloc;
      j["selected"] = c.selected;
      json t;
      t["n_revisions"] = c.totals.n_revisions;
      t["n_additions_sum"] = c.totals.n_additions_sum;
      t["diff_size_sum"] = c.totals.diff_size_sum;
      t["edit_distance_sum"] = c.totals.edit_distance_sum;
      t["n_buggy_commits"] = c.totals.n_buggy_commits;
      j["totals"] = std::move(t);
      candidates_jsonl += j.dump() + "\n";
    }

    for (history::Indicator ind : history::kIndicators) {
      decomp::GroupComparison cmp = decomp::compare_groups(
          individuals, enumerated.candidates, ind, cfg.stat_options);
      ReportRow row;
      row.project_id = project;
      row.grouping = cmp.indicator;
      row.n_a = static_cast<long long>(cmp.individual.size());
      row.n_b = static_cast<long long>(cmp.merged.size());
      if (!cmp.insufficient) {
        row.p_value = cmp.p_value;
        row.effect_size = cmp.delta;
        row.statistic = cmp.delta;
        row.effect_class = stats::effect_class_name(cmp.effect_class);
      }
      row.effect_class += std::string(":") + cmp.direction;
      rows.push_back(std::move(row));
    }
  }

  io::write_text_file(cfg.out_candidates, candidates_jsonl);

  // comparison CSV mirrors the report row format with explicit columns
  std::string csv = "project,indicator,n_individual,n_merged,p_value,delta,class,direction\n";
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.project_id, a.grouping) < std::tie(b.project_id, b.grouping);
  });
  for (const ReportRow& r : rows) {
    std::size_t colon = r.effect_class.find(':');
    std::string cls = r.effect_class.substr(0, colon);
    std::string direction = r.effect_class.substr(colon + 1);
    csv += r.project_id + "," + r.grouping + "," + std::to_string(r.n_a) + "," +
           std::to_string(r.n_b) + "," + io::format_fixed(r.p_value) + "," +
           io::format_fixed(r.effect_size) + "," + cls + "," + direction + "\n";
  }
  io::write_text_file(cfg.out_comparison, csv);
  return kExitOk;
}

int run_report(const ReportConfig& cfg) {
  std::vector<ReportRow> rows;
  auto num = [](const std::string& s) {
    return s == "na" ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
  };
  for (const std::string& path : cfg.in_paths) {
    std::string text = io::read_text_file(path);
    std::istringstream in(text);
    std::string line;
    bool decompose_layout = false;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (header) {
        header = false;
        decompose_layout = line.rfind("project,indicator,", 0) == 0;
        continue;
      }
      std::vector<std::string> f = io::split_csv_line(line);
      if (f.size() < 8) continue;
      ReportRow row;
      if (decompose_layout) {
        // project,indicator,n_individual,n_merged,p_value,delta,class,direction
        row.project_id = f[0];
        row.grouping = "individual_vs_merged:" + f[1];
        row.n_a = std::stoll(f[2]);
        row.n_b = std::stoll(f[3]);
        row.p_value = num(f[4]);
        row.effect_size = num(f[5]);
        row.statistic = row.effect_size;
        row.effect_class = f[6];
      } else {
        row.project_id = f[0];
        row.grouping = f[1];
        row.statistic = num(f[2]);
        row.p_value = num(f[3]);
        row.effect_size = num(f[4]);
        row.effect_class = f[5];
        row.n_a = std::stoll(f[6]);
        row.n_b = std::stoll(f[7]);
      }
      rows.push_back(std::move(row));
    }
  }
  io::write_text_file(cfg.out_path, emit_report(std::move(rows), cfg.format));
  return kExitOk;
}

} // namespace maintlens::pipeline
