#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maintlens/pipeline.hpp"

using namespace maintlens;

namespace {

struct SharedDefaults {
  std::string sloc_mode = "standard";
  double window_years = 2.0;
  std::string keywords_file;
  bool exclude_accessors = true;
  std::string thresholds; // "fixed:24,36,63" or empty
  bool extended_mccabe = false;
  double rename_similarity = 0.6;
};

// MAINTLENS_CONFIG points at a JSON file with defaults for the flags below;
// command-line options override it.
SharedDefaults load_env_config() {
  SharedDefaults d;
  const char* path = std::getenv("MAINTLENS_CONFIG");
  if (!path || !*path) return d;
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(std::string("MAINTLENS_CONFIG: cannot open ") + path);
  }
  nlohmann::json j = nlohmann::json::parse(in);
  d.sloc_mode = j.value("sloc_mode", d.sloc_mode);
  d.window_years = j.value("window_years", d.window_years);
  d.keywords_file = j.value("keywords_file", d.keywords_file);
  d.exclude_accessors = j.value("exclude_accessors", d.exclude_accessors);
  d.thresholds = j.value("thresholds", d.thresholds);
  d.extended_mccabe = j.value("extended_mccabe", d.extended_mccabe);
  d.rename_similarity = j.value("rename_similarity", d.rename_similarity);
  return d;
}

java::SlocMode sloc_mode_or_die(const std::string& name) {
  auto mode = java::parse_sloc_mode(name);
  if (!mode) throw std::runtime_error("invalid sloc mode: " + name);
  return *mode;
}

// "fixed:24,36,63" -> thresholds triple
thresholds::SizeThresholds parse_fixed_thresholds(const std::string& spec) {
  std::string s = spec;
  if (s.rfind("fixed:", 0) == 0) s = s.substr(6);
  thresholds::SizeThresholds t;
  if (std::sscanf(s.c_str(), "%d,%d,%d", &t.t70, &t.t80, &t.t90) != 3) {
    throw std::runtime_error("invalid thresholds spec: " + spec +
                             " (expected fixed:T70,T80,T90)");
  }
  if (!(t.t70 <= t.t80 && t.t80 <= t.t90)) {
    throw std::runtime_error("thresholds must be ordered: " + spec);
  }
  return t;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"maintlens: method-level maintainability mining for Java repositories"};
  app.require_subcommand(1);

  SharedDefaults defaults;
  try {
    defaults = load_env_config();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pipeline::kExitFatal;
  }

  // extract
  auto* extract = app.add_subcommand("extract", "Parse Java sources into method records");
  pipeline::ExtractConfig ec;
  ec.exclude_accessors = defaults.exclude_accessors;
  extract->add_option("--project", ec.project_id, "Project identifier")->required();
  extract->add_option("--root", ec.root_dir, "Directory to scan for .java files");
  extract->add_option("--repo", ec.repo_dir, "Git repository to read instead of --root");
  extract->add_option("--snapshot", ec.snapshot, "Commit to read when using --repo");
  extract->add_option("--out", ec.out_path, "Output records JSONL")->required();
  extract->add_flag("--exclude-accessors,!--include-accessors", ec.exclude_accessors,
                    "Drop getter/setter records (default on)");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Compute static quality metrics");
  pipeline::MetricsConfig mc;
  std::string mi_mode = defaults.sloc_mode;
  std::string weights_path;
  mc.options.extended_mccabe = defaults.extended_mccabe;
  metrics_cmd->add_option("--in", mc.in_path, "Input records JSONL")->required();
  metrics_cmd->add_option("--out", mc.out_path, "Output records JSONL with metrics")->required();
  metrics_cmd->add_option("--csv", mc.csv_path, "Also write a per-method CSV");
  metrics_cmd->add_flag("--extended-mccabe", mc.options.extended_mccabe,
                        "Count '&&' and '||' as predicates");
  metrics_cmd->add_option("--mi-sloc-mode", mi_mode,
                          "SLOC variant used in the maintainability index");
  metrics_cmd->add_option("--weights", weights_path, "Readability weights JSON");

  // history
  auto* history_cmd = app.add_subcommand("history", "Trace or ingest per-method change history");
  pipeline::HistoryConfig hc;
  hc.window_years = defaults.window_years;
  hc.rename_similarity = defaults.rename_similarity;
  std::string history_sloc_mode = defaults.sloc_mode;
  std::string keywords_file = defaults.keywords_file;
  history_cmd->add_option("--records", hc.records_path, "Input records JSONL")->required();
  history_cmd->add_option("--repo", hc.repo_dir, "Git repository to trace");
  history_cmd->add_option("--snapshot", hc.snapshot, "Snapshot commit for tracing");
  history_cmd->add_option("--history-in", hc.history_in,
                          "Precomputed history JSONL (skips tracing)");
  history_cmd->add_option("--out", hc.out_path, "Output histories JSONL")->required();
  history_cmd->add_option("--window-years", hc.window_years, "Age normalization window");
  history_cmd->add_flag("!--no-age-filter", hc.age_filter, "Disable age normalization");
  history_cmd->add_option("--keywords-file", keywords_file, "Bug keyword list, one per line");
  history_cmd->add_option("--similarity", hc.rename_similarity,
                          "Body similarity needed to bridge a rename");
  history_cmd->add_option("--sloc-mode", history_sloc_mode, "SLOC variant for snapshots");

  // thresholds
  auto* thresholds_cmd = app.add_subcommand("thresholds", "Derive corpus SLOC thresholds");
  pipeline::ThresholdsConfig tc;
  std::string thresholds_spec = defaults.thresholds;
  thresholds_cmd->add_option("--in", tc.records_path, "Input records JSONL");
  thresholds_cmd->add_option("--out", tc.out_path, "Output thresholds JSON")->required();
  thresholds_cmd->add_option("--thresholds", thresholds_spec,
                             "fixed:T70,T80,T90 bypasses derivation");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Correlations and size-category comparisons");
  pipeline::AnalyzeConfig ac;
  std::string analyze_sloc_mode = defaults.sloc_mode;
  std::string analyze_thresholds = defaults.thresholds;
  analyze_cmd->add_option("--records", ac.records_path, "Input records JSONL")->required();
  analyze_cmd->add_option("--histories", ac.histories_path, "Input histories JSONL")->required();
  analyze_cmd->add_option("--thresholds-file", ac.thresholds_path, "Thresholds JSON");
  analyze_cmd->add_option("--thresholds", analyze_thresholds, "fixed:T70,T80,T90");
  analyze_cmd->add_option("--out-dir", ac.out_dir, "Output directory")->required();
  analyze_cmd->add_option("--format", ac.format, "csv or json");
  analyze_cmd->add_option("--sloc-mode", analyze_sloc_mode, "SLOC variant");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Merge-candidate enumeration and comparison");
  pipeline::DecomposeConfig dc;
  std::string decompose_sloc_mode = defaults.sloc_mode;
  decompose_cmd->add_option("--records", dc.records_path, "Input records JSONL")->required();
  decompose_cmd->add_option("--histories", dc.histories_path, "Input histories JSONL")->required();
  decompose_cmd->add_option("--limit", dc.sloc_limit, "Member SLOC limit (default 24)");
  decompose_cmd->add_option("--out-candidates", dc.out_candidates,
                            "Merge candidate JSONL")->required();
  decompose_cmd->add_option("--out-comparison", dc.out_comparison,
                            "Group comparison CSV")->required();
  decompose_cmd->add_option("--sloc-mode", decompose_sloc_mode, "SLOC variant");

  // report
  auto* report_cmd = app.add_subcommand("report", "Merge row CSVs into a final report");
  pipeline::ReportConfig rc;
  report_cmd->add_option("--in", rc.in_paths, "Input row CSVs")->required();
  report_cmd->add_option("--out", rc.out_path, "Output file")->required();
  report_cmd->add_option("--format", rc.format, "csv or json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) {
      return pipeline::run_extract(ec);
    }
    if (*metrics_cmd) {
      mc.options.mi_sloc_mode = sloc_mode_or_die(mi_mode);
      if (!weights_path.empty()) {
        mc.options.weights = metrics::load_readability_weights(weights_path);
      }
      return pipeline::run_metrics(mc);
    }
    if (*history_cmd) {
      hc.sloc_mode = sloc_mode_or_die(history_sloc_mode);
      if (!keywords_file.empty()) {
        hc.bug_keywords = history::load_keywords(keywords_file);
      }
      return pipeline::run_history(hc);
    }
    if (*thresholds_cmd) {
      if (!thresholds_spec.empty()) {
        tc.fixed = parse_fixed_thresholds(thresholds_spec);
      } else if (tc.records_path.empty()) {
        std::cerr << "error: thresholds needs --in or --thresholds fixed:...\n";
        return pipeline::kExitFatal;
      }
      return pipeline::run_thresholds(tc);
    }
    if (*analyze_cmd) {
      ac.sloc_mode = sloc_mode_or_die(analyze_sloc_mode);
      if (!analyze_thresholds.empty()) {
        ac.fixed = parse_fixed_thresholds(analyze_thresholds);
      }
      return pipeline::run_analyze(ac);
    }
    if (*decompose_cmd) {
      dc.sloc_mode = sloc_mode_or_die(decompose_sloc_mode);
      return pipeline::run_decompose(dc);
    }
    if (*report_cmd) {
      return pipeline::run_report(rc);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pipeline::kExitFatal;
  }
  return pipeline::kExitOk;
}
