#include "maintlens/history.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace maintlens::history {

const char* indicator_name(Indicator ind) {
  switch (ind) {
    case Indicator::Revisions: return "revisions";
    case Indicator::Additions: return "additions";
    case Indicator::DiffSize: return "diff_size";
    case Indicator::EditDistance: return "edit_distance";
    case Indicator::BuggyCommits: return "buggy_commits";
  }
  return "revisions";
}

double indicator_value(const IndicatorTotals& t, Indicator ind) {
  switch (ind) {
    case Indicator::Revisions: return t.n_revisions;
    case Indicator::Additions: return t.n_additions_sum;
    case Indicator::DiffSize: return t.diff_size_sum;
    case Indicator::EditDistance: return static_cast<double>(t.edit_distance_sum);
    case Indicator::BuggyCommits: return t.n_buggy_commits;
  }
  return 0.0;
}

double indicator_value(const MethodVersion& v, Indicator ind) {
  switch (ind) {
    case Indicator::Revisions: return v.n_revisions;
    case Indicator::Additions: return v.n_additions;
    case Indicator::DiffSize: return v.diff_size_sum;
    case Indicator::EditDistance: return static_cast<double>(v.edit_distance_sum);
    case Indicator::BuggyCommits: return v.n_buggy_commits;
  }
  return 0.0;
}

const std::vector<std::string>& default_bug_keywords() {
  static const std::vector<std::string> kWords = {
      "error", "bug",  "fixes",     "fixing", "fix",    "fixed",
      "mistake", "incorrect", "fault", "defect", "flaw"};
  return kWords;
}

std::vector<std::string> load_keywords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open keywords file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::size_t start = line.find_first_not_of(' ');
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::string w = line.substr(start);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    words.push_back(w);
  }
  return words;
}

bool classify_bugfix(std::string_view message, const std::vector<std::string>& keywords) {
  std::unordered_set<std::string_view> set(keywords.begin(), keywords.end());
  std::string word;
  auto check = [&]() {
    if (word.empty()) return false;
    bool hit = set.count(word) > 0;
    word.clear();
    return hit;
  };
  for (char c : message) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (check()) {
      return true;
    }
  }
  return check();
}

long long levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b); // keep the row small
  const std::size_t n = b.size();
  std::vector<long long> row(n + 1);
  for (std::size_t j = 0; j <= n; ++j) row[j] = static_cast<long long>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    long long diagonal = row[0];
    row[0] = static_cast<long long>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      long long up = row[j];
      long long cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j - 1] + 1, row[j] + 1, diagonal + cost});
      diagonal = up;
    }
  }
  return row[n];
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

} // namespace

LineDiff line_diff(std::string_view before, std::string_view after) {
  std::vector<std::string_view> a = split_lines(before);
  std::vector<std::string_view> b = split_lines(after);
  const std::size_t n = a.size(), m = b.size();
  // LCS length with a rolling row
  std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  int lcs = prev[m];
  LineDiff d;
  d.deleted = static_cast<int>(n) - lcs;
  d.added = static_cast<int>(m) - lcs;
  return d;
}

std::optional<MethodHistory> normalize_age(const MethodHistory& h, double window_years) {
  const auto window = static_cast<std::int64_t>(std::llround(window_years * kSecondsPerYear));
  const std::int64_t age = h.end_of_observation - h.birth_timestamp;
  if (age < window) return std::nullopt;
  MethodHistory out = h;
  const std::int64_t cutoff = h.birth_timestamp + window;
  std::erase_if(out.revisions,
                [&](const Revision& r) { return r.timestamp > cutoff; });
  out.end_of_observation = cutoff;
  return out;
}

std::vector<MethodVersion> versionize(const MethodHistory& h, const SlocOf& sloc_of) {
  auto sloc_at = [&](const Revision& r) {
    return r.sloc_after >= 0 ? r.sloc_after : sloc_of(r.body_after);
  };
  int initial = h.birth_sloc >= 0 ? h.birth_sloc : sloc_of(h.birth_body);

  std::vector<MethodVersion> versions;
  MethodVersion cur;
  cur.sloc = initial;
  for (const Revision& r : h.revisions) {
    cur.n_revisions += 1;
    cur.n_additions += r.lines_added;
    cur.diff_size_sum += r.diff_size();
    cur.edit_distance_sum += r.edit_distance;
    if (r.is_bugfix) cur.n_buggy_commits += 1;
    int next_sloc = sloc_at(r);
    if (next_sloc != cur.sloc) {
      versions.push_back(cur);
      cur = MethodVersion{};
      cur.sloc = next_sloc;
    }
  }
  versions.push_back(cur);
  return versions;
}

IndicatorTotals compute_indicators(const MethodHistory& h) {
  IndicatorTotals t;
  for (const Revision& r : h.revisions) {
    t.n_revisions += 1;
    t.n_additions_sum += r.lines_added;
    t.diff_size_sum += r.diff_size();
    t.edit_distance_sum += r.edit_distance;
    if (r.is_bugfix) t.n_buggy_commits += 1;
  }
  return t;
}

IndicatorTotals sum_versions(const std::vector<MethodVersion>& versions) {
  IndicatorTotals t;
  for (const MethodVersion& v : versions) {
    t.n_revisions += v.n_revisions;
    t.n_additions_sum += v.n_additions;
    t.diff_size_sum += v.diff_size_sum;
    t.edit_distance_sum += v.edit_distance_sum;
    t.n_buggy_commits += v.n_buggy_commits;
  }
  return t;
}

} // namespace maintlens::history
