// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the library's own algorithms: full-matrix DP for
// edit distance, exhaustive permutation/subset enumeration for the tests,
// and a direct re-derivation of the threshold aggregation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace oracles {

// Full-matrix Levenshtein (the library uses a rolling row).
inline long long levenshtein_matrix(const std::string& a, const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<long long>> d(n + 1, std::vector<long long>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<long long>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<long long>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      long long cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
    }
  }
  return d[n][m];
}

// Kendall tau-b by direct O(n^2) pair counting.
inline double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  long long concordant = 0, discordant = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = (x[i] - x[j]) * (y[i] - y[j]);
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }
  auto tie_adjust = [&](const std::vector<double>& v) {
    std::map<double, long long> groups;
    for (double e : v) ++groups[e];
    double sum = 0;
    for (auto& [val, t] : groups) {
      (void)val;
      sum += 0.5 * t * (t - 1);
    }
    return sum;
  };
  double n0 = 0.5 * n * (n - 1);
  double denom = std::sqrt((n0 - tie_adjust(x)) * (n0 - tie_adjust(y)));
  return (concordant - discordant) / denom;
}

// Exact two-sided Kendall p by enumerating every permutation of y.
inline double kendall_exact_p(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  auto t_statistic = [&](const std::vector<double>& ys) {
    long long c = 0, d = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double s = (x[i] - x[j]) * (ys[i] - ys[j]);
        if (s > 0) ++c;
        if (s < 0) ++d;
      }
    }
    return c - d;
  };
  long long observed = std::llabs(t_statistic(y));
  std::vector<double> perm = y;
  std::sort(perm.begin(), perm.end());
  long long hits = 0, total = 0;
  do {
    ++total;
    if (std::llabs(t_statistic(perm)) >= observed) ++hits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline std::vector<double> pooled_midranks(std::vector<double> values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
    double first = static_cast<double>(lo - sorted.begin()) + 1.0;
    double last = static_cast<double>(hi - sorted.begin());
    ranks[i] = 0.5 * (first + last);
  }
  return ranks;
}

// Exact two-sided rank-sum p via recursive subset enumeration.
inline double rank_sum_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = pooled_midranks(pooled);
  const int n = static_cast<int>(pooled.size());
  const int na = static_cast<int>(a.size());
  double w = 0;
  for (int i = 0; i < na; ++i) w += ranks[i];
  double mean = na * (n + 1) / 2.0;
  double observed = std::abs(w - mean);

  long long hits = 0, total = 0;
  std::vector<int> chosen;
  auto recurse = [&](auto&& self, int next, int remaining) -> void {
    if (remaining == 0) {
      double ws = 0;
      for (int i : chosen) ws += ranks[i];
      ++total;
      if (std::abs(ws - mean) >= observed - 1e-12) ++hits;
      return;
    }
    if (n - next < remaining) return;
    chosen.push_back(next);
    self(self, next + 1, remaining - 1);
    chosen.pop_back();
    self(self, next + 1, remaining);
  };
  recurse(recurse, 0, na);
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Exact two-sided signed-rank p by enumerating sign assignments recursively.
inline double signed_rank_exact_p(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<double> diffs;
  for (auto& [before, after] : pairs) {
    if (after != before) diffs.push_back(after - before);
  }
  std::vector<double> mags;
  for (double d : diffs) mags.push_back(std::abs(d));
  std::vector<double> ranks = pooled_midranks(mags);
  double w_plus = 0, total_rank = 0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0) w_plus += ranks[i];
    total_rank += ranks[i];
  }
  double mean = total_rank / 2.0;
  double observed = std::abs(w_plus - mean);

  long long hits = 0, total = 0;
  auto recurse = [&](auto&& self, std::size_t i, double ws) -> void {
    if (i == ranks.size()) {
      ++total;
      if (std::abs(ws - mean) >= observed - 1e-12) ++hits;
      return;
    }
    self(self, i + 1, ws);
    self(self, i + 1, ws + ranks[i]);
  };
  recurse(recurse, 0, 0.0);
  return static_cast<double>(hits) / static_cast<double>(total);
}

inline double cliffs_delta_direct(const std::vector<double>& a, const std::vector<double>& b) {
  long long gt = 0, lt = 0;
  for (double va : a) {
    for (double vb : b) {
      if (va > vb) ++gt;
      if (va < vb) ++lt;
    }
  }
  return static_cast<double>(gt - lt) / (static_cast<double>(a.size()) * b.size());
}

// Spreadsheet-style re-derivation of the threshold aggregation: merge the
// per-project normalized masses, then walk the cumulative curve.
struct ThresholdOracle {
  std::vector<int> x;
  std::vector<double> y;
  int t70 = 0, t80 = 0, t90 = 0;
};

inline ThresholdOracle thresholds_by_hand(const std::vector<std::vector<int>>& projects) {
  std::map<int, double> mass;
  double phi = static_cast<double>(projects.size());
  for (const auto& slocs : projects) {
    double total = std::accumulate(slocs.begin(), slocs.end(), 0.0);
    for (int s : slocs) mass[s] += (s / total) / phi;
  }
  ThresholdOracle o;
  double cum = 0;
  for (auto& [s, m] : mass) {
    o.x.push_back(s);
    o.y.push_back(m);
  }
  bool d70 = false, d80 = false, d90 = false;
  for (std::size_t i = 0; i < o.x.size(); ++i) {
    cum += o.y[i];
    if (!d70 && cum >= 0.70 - 1e-12) { o.t70 = o.x[i]; d70 = true; }
    if (!d80 && cum >= 0.80 - 1e-12) { o.t80 = o.x[i]; d80 = true; }
    if (!d90 && cum >= 0.90 - 1e-12) { o.t90 = o.x[i]; d90 = true; }
  }
  if (!d70) o.t70 = o.x.back();
  if (!d80) o.t80 = o.x.back();
  if (!d90) o.t90 = o.x.back();
  return o;
}

} // namespace oracles
