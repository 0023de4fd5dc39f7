#include "maintlens/records_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maintlens::io {

using nlohmann::json;

std::string record_to_json_line(const java::MethodRecord& r,
                                const metrics::MetricVector* mv) {
  json j;
  j["method_id"] = r.method_id;
  j["project_id"] = r.project_id;
  j["file_path"] = r.file_path;
  j["name"] = r.name;
  j["signature"] = r.signature;
  j["start_line"] = r.start_line;
  j["end_line"] = r.end_line;
  j["body_text"] = r.body_text;
  j["sloc_standard"] = r.sloc_standard;
  j["sloc_as_is"] = r.sloc_as_is;
  j["sloc_pretty"] = r.sloc_pretty;
  j["is_accessor"] = r.is_accessor;
  j["birth_timestamp"] = r.birth_timestamp;
  j["param_count"] = r.param_count;
  j["return_type"] = r.return_type;
  if (mv) {
    json m;
    m["mccabe"] = mv->mccabe;
    m["mcclure"] = mv->mcclure;
    m["halstead_volume"] = mv->halstead_volume;
    m["maintainability_index"] = mv->maintainability_index;
    m["readability"] = mv->readability;
    j["metrics"] = m;
  }
  return j.dump();
}

void write_records(const std::string& path, const RecordSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const java::MethodRecord& r : set.records) {
    auto it = set.metric_vectors.find(r.method_id);
    const metrics::MetricVector* mv =
        it == set.metric_vectors.end() ? nullptr : &it->second;
    out << record_to_json_line(r, mv) << '\n';
  }
}

RecordSet read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  RecordSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    java::MethodRecord r;
    r.method_id = j.at("method_id").get<std::string>();
    r.project_id = j.value("project_id", "");
    r.file_path = j.value("file_path", "");
    r.name = j.value("name", "");
    r.signature = j.value("signature", "");
    r.start_line = j.value("start_line", 0);
    r.end_line = j.value("end_line", 0);
    r.body_text = j.value("body_text", "");
    r.sloc_standard = j.value("sloc_standard", 0);
    r.sloc_as_is = j.value("sloc_as_is", 0);
    r.sloc_pretty = j.value("sloc_pretty", 0);
    r.is_accessor = j.value("is_accessor", false);
    r.birth_timestamp = j.value("birth_timestamp", static_cast<std::int64_t>(0));
    r.param_count = j.value("param_count", 0);
    r.return_type = j.value("return_type", "");
    if (j.contains("metrics")) {
      const json& m = j["metrics"];
      metrics::MetricVector mv;
      mv.mccabe = m.value("mccabe", 1);
      mv.mcclure = m.value("mcclure", 0);
      mv.halstead_volume = m.value("halstead_volume", 0.0);
      mv.maintainability_index = m.value("maintainability_index", 0.0);
      mv.readability = m.value("readability", 0.0);
      set.metric_vectors[r.method_id] = mv;
    }
    set.records.push_back(std::move(r));
  }
  return set;
}

std::string history_to_json_line(const history::MethodHistory& h) {
  json j;
  j["method_id"] = h.method_id;
  j["birth_commit"] = h.birth_commit;
  j["birth_timestamp"] = h.birth_timestamp;
  j["end_of_observation"] = h.end_of_observation;
  if (h.birth_sloc >= 0) j["birth_sloc"] = h.birth_sloc;
  if (h.truncated) j["truncated"] = true;
  json revs = json::array();
  for (const history::Revision& r : h.revisions) {
    json jr;
    jr["commit_id"] = r.commit_id;
    jr["timestamp"] = r.timestamp;
    jr["lines_added"] = r.lines_added;
    jr["lines_deleted"] = r.lines_deleted;
    jr["edit_distance"] = r.edit_distance;
    jr["is_bugfix"] = r.is_bugfix;
    if (r.sloc_after >= 0) jr["sloc_after"] = r.sloc_after;
    revs.push_back(std::move(jr));
  }
  j["revisions"] = std::move(revs);
  return j.dump();
}

void write_histories(const std::string& path,
                     const std::vector<history::MethodHistory>& histories) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const history::MethodHistory& h : histories) {
    out << history_to_json_line(h) << '\n';
  }
}

std::vector<history::MethodHistory> read_histories(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::vector<history::MethodHistory> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    history::MethodHistory h;
    h.method_id = j.at("method_id").get<std::string>();
    h.birth_commit = j.value("birth_commit", "");
    h.birth_timestamp = j.value("birth_timestamp", static_cast<std::int64_t>(0));
    h.end_of_observation = j.value("end_of_observation", static_cast<std::int64_t>(0));
    h.birth_sloc = j.value("birth_sloc", -1);
    h.truncated = j.value("truncated", false);
    for (const json& jr : j.value("revisions", json::array())) {
      history::Revision r;
      r.commit_id = jr.value("commit_id", "");
      r.timestamp = jr.value("timestamp", static_cast<std::int64_t>(0));
      r.lines_added = jr.value("lines_added", 0);
      r.lines_deleted = jr.value("lines_deleted", 0);
      r.edit_distance = jr.value("edit_distance", static_cast<long long>(0));
      r.is_bugfix = jr.value("is_bugfix", false);
      r.sloc_after = jr.value("sloc_after", -1);
      h.revisions.push_back(std::move(r));
    }
    std::stable_sort(h.revisions.begin(), h.revisions.end(),
                     [](const history::Revision& a, const history::Revision& b) {
                       return a.timestamp < b.timestamp;
                     });
    out.push_back(std::move(h));
  }
  return out;
}

std::string format_fixed(double value) {
  if (std::isnan(value)) return "na";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

} // namespace maintlens::io
