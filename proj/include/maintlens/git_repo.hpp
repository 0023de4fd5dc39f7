#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maintlens/history.hpp"
#include "maintlens/java_extractor.hpp"

namespace maintlens::git {

struct CommitInfo {
  std::string id;
  std::int64_t timestamp = 0; // committer time
  std::string message;
};

// Read-only access to a local repository through the git binary.
class GitRepo {
public:
  explicit GitRepo(std::string directory);

  // first-parent ancestry, newest first, starting at `ref`
  std::vector<CommitInfo> rev_list_first_parent(const std::string& ref) const;

  // file content at a commit; nullopt when the path does not exist there
  std::optional<std::string> show_file(const std::string& commit,
                                       const std::string& path) const;

  // renames between parent and child (old path -> new path)
  std::vector<std::pair<std::string, std::string>> renames(
      const std::string& parent, const std::string& child) const;

  std::vector<std::string> ls_files(const std::string& commit) const;

  const std::string& directory() const { return dir_; }

private:
  std::string dir_;
  std::string run(const std::vector<std::string>& args, int* exit_code = nullptr) const;
};

struct TraceOptions {
  double rename_similarity = 0.6; // accept a rename when similarity >= this
  std::vector<std::string> bug_keywords = history::default_bug_keywords();
  java::SlocMode sloc_mode = java::SlocMode::Standard;
};

// Walks first-parent ancestry backward from `snapshot`, recording a revision
// whenever the method's body changes between adjacent commits. Identity is
// (file_path, name, parameter arity); across file renames a match needs body
// similarity >= rename_similarity. A pure move with an identical body is not
// a revision.
class MethodTracer {
public:
  MethodTracer(const GitRepo& repo, std::string snapshot, TraceOptions options = {});

  history::MethodHistory trace(const java::MethodRecord& record);

private:
  const GitRepo& repo_;
  std::string snapshot_;
  TraceOptions opt_;
  std::vector<CommitInfo> commits_; // commits_[0] == snapshot
  // (commit, path) -> extracted records; nullopt marks a missing file
  mutable std::map<std::pair<std::string, std::string>,
                   std::optional<std::vector<java::MethodRecord>>>
      cache_;

  const std::optional<std::vector<java::MethodRecord>>& methods_at(
      const std::string& commit, const std::string& path) const;
  const java::MethodRecord* find_match(
      const std::optional<std::vector<java::MethodRecord>>& records,
      const std::string& name, int arity, const std::string& current_body) const;
};

} // namespace maintlens::git
