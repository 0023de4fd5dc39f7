#include "maintlens/git_repo.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace maintlens::git {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

} // namespace

GitRepo::GitRepo(std::string directory) : dir_(std::move(directory)) {}

std::string GitRepo::run(const std::vector<std::string>& args, int* exit_code) const {
  std::string cmd = "git -C " + shell_quote(dir_);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";

  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run git");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  int status = pclose(pipe);
  int code = status >= 0 ? WEXITSTATUS(status) : -1;
  if (exit_code) {
    *exit_code = code;
  } else if (code != 0) {
    throw std::runtime_error("git command failed: " + cmd);
  }
  return out;
}

std::vector<CommitInfo> GitRepo::rev_list_first_parent(const std::string& ref) const {
  // \x01 separates fields, \x02 terminates a record (messages span lines)
  std::string out =
      run({"log", "--first-parent", "--format=%H%x01%ct%x01%B%x02", ref});
  std::vector<CommitInfo> commits;
  std::size_t pos = 0;
  while (pos < out.size()) {
    std::size_t end = out.find('\x02', pos);
    if (end == std::string::npos) break;
    std::string record = out.substr(pos, end - pos);
    pos = end + 1;
    while (pos < out.size() && out[pos] == '\n') ++pos;
    std::size_t a = record.find('\x01');
    std::size_t b = record.find('\x01', a + 1);
    if (a == std::string::npos || b == std::string::npos) continue;
    CommitInfo c;
    c.id = record.substr(0, a);
    c.timestamp = std::stoll(record.substr(a + 1, b - a - 1));
    c.message = record.substr(b + 1);
    commits.push_back(std::move(c));
  }
  return commits;
}

std::optional<std::string> GitRepo::show_file(const std::string& commit,
                                              const std::string& path) const {
  int code = 0;
  std::string out = run({"show", commit + ":" + path}, &code);
  if (code != 0) return std::nullopt;
  return out;
}

std::vector<std::pair<std::string, std::string>> GitRepo::renames(
    const std::string& parent, const std::string& child) const {
  int code = 0;
  std::string out =
      run({"diff", "--name-status", "-M", "--diff-filter=R", parent, child}, &code);
  std::vector<std::pair<std::string, std::string>> result;
  if (code != 0) return result;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != 'R') continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) continue;
    result.emplace_back(line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1));
  }
  return result;
}

std::vector<std::string> GitRepo::ls_files(const std::string& commit) const {
  std::string out = run({"ls-tree", "-r", "--name-only", commit});
  std::vector<std::string> files;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) files.push_back(line);
  }
  return files;
}

MethodTracer::MethodTracer(const GitRepo& repo, std::string snapshot, TraceOptions options)
    : repo_(repo), snapshot_(std::move(snapshot)), opt_(std::move(options)) {
  commits_ = repo_.rev_list_first_parent(snapshot_);
  if (commits_.empty()) {
    throw std::runtime_error("no commits reachable from " + snapshot_);
  }
}

const std::optional<std::vector<java::MethodRecord>>& MethodTracer::methods_at(
    const std::string& commit, const std::string& path) const {
  auto key = std::make_pair(commit, path);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::optional<std::vector<java::MethodRecord>> value;
  if (auto content = repo_.show_file(commit, path)) {
    java::ExtractResult ex = java::extract_methods(*content, path);
    if (!ex.error) value = std::move(ex.records);
    // a file that fails to parse at an ancestor ends the trace there
  }
  return cache_.emplace(std::move(key), std::move(value)).first->second;
}

const java::MethodRecord* MethodTracer::find_match(
    const std::optional<std::vector<java::MethodRecord>>& records,
    const std::string& name, int arity, const std::string& current_body) const {
  if (!records) return nullptr;
  const java::MethodRecord* best = nullptr;
  long long best_distance = -1;
  for (const java::MethodRecord& r : *records) {
    if (r.name != name || r.param_count != arity) continue;
    long long d = history::levenshtein(r.body_text, current_body);
    if (!best || d < best_distance ||
        (d == best_distance && r.start_line < best->start_line)) {
      best = &r;
      best_distance = d;
    }
  }
  return best;
}

history::MethodHistory MethodTracer::trace(const java::MethodRecord& record) {
  history::MethodHistory h;
  h.method_id = record.method_id;
  h.end_of_observation = commits_.front().timestamp;

  std::string path = record.file_path;
  std::string body = record.body_text;
  std::string birth_commit = commits_.front().id;
  std::int64_t birth_ts = commits_.front().timestamp;

  std::vector<history::Revision> reversed; // newest change first

  for (std::size_t i = 0; i + 1 < commits_.size(); ++i) {
    const CommitInfo& child = commits_[i];
    const CommitInfo& parent = commits_[i + 1];

    const java::MethodRecord* match = nullptr;
    const auto& parent_methods = methods_at(parent.id, path);
    if (parent_methods) {
      match = find_match(parent_methods, record.name, record.param_count, body);
    } else {
      // file missing at the parent: bridge a rename if the body is similar
      for (const auto& [old_path, new_path] : repo_.renames(parent.id, child.id)) {
        if (new_path != path) continue;
        const auto& old_methods = methods_at(parent.id, old_path);
        const java::MethodRecord* candidate =
            find_match(old_methods, record.name, record.param_count, body);
        if (candidate) {
          long long dist = history::levenshtein(candidate->body_text, body);
          std::size_t longest = std::max(candidate->body_text.size(), body.size());
          double similarity =
              longest == 0 ? 1.0 : 1.0 - static_cast<double>(dist) / longest;
          if (similarity >= opt_.rename_similarity) {
            match = candidate;
            path = old_path;
          } else {
            h.truncated = true;
          }
        }
        break;
      }
    }

    if (!match) { // born in `child`
      birth_commit = child.id;
      birth_ts = child.timestamp;
      break;
    }

    if (match->body_text != body) {
      history::Revision rev;
      rev.commit_id = child.id;
      rev.timestamp = child.timestamp;
      history::LineDiff d = history::line_diff(match->body_text, body);
      rev.lines_added = d.added;
      rev.lines_deleted = d.deleted;
      rev.edit_distance = history::levenshtein(match->body_text, body);
      rev.is_bugfix = history::classify_bugfix(child.message, opt_.bug_keywords);
      rev.body_after = body;
      rev.sloc_after = java::compute_sloc(body, opt_.sloc_mode);
      reversed.push_back(std::move(rev));
    }

    body = match->body_text;
    birth_commit = parent.id;
    birth_ts = parent.timestamp;
  }

  h.birth_commit = birth_commit;
  h.birth_timestamp = birth_ts;
  h.birth_body = body;
  h.birth_sloc = java::compute_sloc(body, opt_.sloc_mode);
  h.revisions.assign(reversed.rbegin(), reversed.rend());
  return h;
}

} // namespace maintlens::git
