#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "maintlens/decomposition.hpp"
#include "maintlens/history.hpp"
#include "maintlens/java_extractor.hpp"
#include "maintlens/metrics.hpp"
#include "maintlens/records_io.hpp"
#include "maintlens/stats.hpp"
#include "maintlens/thresholds.hpp"

namespace maintlens::pipeline {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2; // some files skipped, pipeline continued

struct ExtractConfig {
  std::string project_id;
  std::string root_dir;  // walk *.java under this directory, or
  std::string repo_dir;  // read the tree of `snapshot` in this repository
  std::string snapshot;
  std::string out_path;
  bool exclude_accessors = true;
};
int run_extract(const ExtractConfig& config);

struct MetricsConfig {
  std::string in_path;
  std::string out_path;
  std::string csv_path; // optional
  metrics::MetricsOptions options;
};
int run_metrics(const MetricsConfig& config);

struct HistoryConfig {
  std::string records_path;
  std::string repo_dir; // trace from this repository, or
  std::string snapshot;
  std::string history_in; // ingest a precomputed history file
  std::string out_path;
  double window_years = 2.0;
  bool age_filter = true;
  double rename_similarity = 0.6;
  std::vector<std::string> bug_keywords = history::default_bug_keywords();
  java::SlocMode sloc_mode = java::SlocMode::Standard;
};
int run_history(const HistoryConfig& config);

struct ThresholdsConfig {
  std::string records_path;
  std::string out_path;
  std::optional<thresholds::SizeThresholds> fixed; // bypass derivation
  std::array<double, 3> percentiles = {0.70, 0.80, 0.90};
};
int run_thresholds(const ThresholdsConfig& config);

struct AnalyzeConfig {
  std::string records_path;
  std::string histories_path;
  std::string thresholds_path; // JSON produced by run_thresholds, or
  std::optional<thresholds::SizeThresholds> fixed;
  std::string out_dir; // writes correlations.csv and categories.csv
  std::string format = "csv"; // or "json"
  java::SlocMode sloc_mode = java::SlocMode::Standard;
  stats::StatOptions stat_options;
};
int run_analyze(const AnalyzeConfig& config);

struct DecomposeConfig {
  std::string records_path;
  std::string histories_path;
  int sloc_limit = 24;
  java::SlocMode sloc_mode = java::SlocMode::Standard;
  std::string out_candidates; // MergeCandidate JSON lines
  std::string out_comparison; // GroupComparison CSV
  stats::StatOptions stat_options;
};
int run_decompose(const DecomposeConfig& config);

struct ReportConfig {
  std::vector<std::string> in_paths; // row CSVs from analyze/decompose
  std::string out_path;
  std::string format = "csv"; // or "json"
};
int run_report(const ReportConfig& config);

// One row of an emitted report table.
struct ReportRow {
  std::string project_id;
  std::string grouping;
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
  double effect_size = std::numeric_limits<double>::quiet_NaN();
  std::string effect_class = "na";
  long long n_a = 0;
  long long n_b = 0;
};

// Deterministic bytes: rows sorted by (project_id, grouping), CSV floats at
// 4 decimals, JSON at full precision.
std::string emit_report(std::vector<ReportRow> rows, const std::string& format);

// Analysis units: one per method version, carrying the version SLOC and
// indicator values. Exposed for tests.
struct AnalysisUnit {
  std::string project_id;
  std::string method_id;
  int sloc = 0;
  history::MethodVersion version;
};
std::vector<AnalysisUnit> build_analysis_units(
    const io::RecordSet& records, const std::vector<history::MethodHistory>& histories,
    java::SlocMode sloc_mode);

std::vector<ReportRow> correlation_rows(const std::vector<AnalysisUnit>& units,
                                        const stats::StatOptions& options = {});
std::vector<ReportRow> category_rows(const std::vector<AnalysisUnit>& units,
                                     const thresholds::SizeThresholds& cutoffs,
                                     const stats::StatOptions& options = {});

thresholds::SizeThresholds load_thresholds_json(const std::string& path);

} // namespace maintlens::pipeline
