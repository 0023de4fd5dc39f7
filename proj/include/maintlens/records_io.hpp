#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maintlens/history.hpp"
#include "maintlens/java_extractor.hpp"
#include "maintlens/metrics.hpp"

namespace maintlens::io {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct RecordSet {
  std::vector<java::MethodRecord> records;
  // present when a metrics stage ran; keyed by method_id
  std::map<std::string, metrics::MetricVector> metric_vectors;
};

std::string record_to_json_line(const java::MethodRecord& record,
                                const metrics::MetricVector* metric_vector = nullptr);
void write_records(const std::string& path, const RecordSet& set);
RecordSet read_records(const std::string& path);

std::string history_to_json_line(const history::MethodHistory& history);
void write_histories(const std::string& path,
                     const std::vector<history::MethodHistory>& histories);
std::vector<history::MethodHistory> read_histories(const std::string& path);

// Fixed-point formatting used by every CSV emitter (4 decimals).
std::string format_fixed(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Minimal CSV splitting for the row files this tool writes (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace maintlens::io
