#include "maintlens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace maintlens::stats {

const char* effect_class_name(EffectClass c) {
  switch (c) {
    case EffectClass::Negligible: return "Negligible";
    case EffectClass::Small: return "Small";
    case EffectClass::Medium: return "Medium";
    case EffectClass::Large: return "Large";
  }
  return "Negligible";
}

EffectClass classify_effect(double delta) {
  double d = std::abs(delta);
  if (d < 0.147) return EffectClass::Negligible;
  if (d < 0.330) return EffectClass::Small;
  if (d < 0.474) return EffectClass::Medium;
  return EffectClass::Large;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

double two_sided_normal_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

// Midranks of the pooled values, returned per input position.
std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = 0.5 * static_cast<double>(i + j) + 1.0; // average of i..j, 1-based
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::map<double, long long> tie_groups(std::span<const double> values) {
  std::map<double, long long> groups;
  for (double v : values) ++groups[v];
  return groups;
}

// P(inversions of a random n-permutation == k), for the exact Kendall null.
std::vector<double> inversion_distribution(int n) {
  std::vector<double> p = {1.0};
  for (int m = 2; m <= n; ++m) {
    std::vector<double> next(p.size() + m - 1, 0.0);
    // convolve with Uniform{0..m-1}/m via a sliding window
    double window = 0.0;
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (k < p.size()) window += p[k];
      if (k >= static_cast<std::size_t>(m) && k - m < p.size()) window -= p[k - m];
      next[k] = window / m;
    }
    p = std::move(next);
  }
  return p;
}

} // namespace

StatResult kendall_tau(std::span<const double> x, std::span<const double> y,
                       const StatOptions& opt) {
  if (x.size() != y.size()) throw StatError("kendall_tau: length mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw StatError("kendall_tau: need at least 2 observations");

  long long concordant = 0, discordant = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j];
      double dy = y[i] - y[j];
      double s = dx * dy;
      if (s > 0) ++concordant;
      if (s < 0) ++discordant;
    }
  }

  const double n0 = 0.5 * n * (n - 1);
  double n1 = 0, n2 = 0;
  double vt = 0, vu = 0, t2x = 0, t2y = 0, t3x = 0, t3y = 0;
  bool ties = false;
  for (auto& [v, t] : tie_groups(x)) {
    (void)v;
    if (t > 1) ties = true;
    n1 += 0.5 * t * (t - 1);
    vt += static_cast<double>(t) * (t - 1) * (2 * t + 5);
    t2x += static_cast<double>(t) * (t - 1);
    t3x += static_cast<double>(t) * (t - 1) * (t - 2);
  }
  for (auto& [v, t] : tie_groups(y)) {
    (void)v;
    if (t > 1) ties = true;
    n2 += 0.5 * t * (t - 1);
    vu += static_cast<double>(t) * (t - 1) * (2 * t + 5);
    t2y += static_cast<double>(t) * (t - 1);
    t3y += static_cast<double>(t) * (t - 1) * (t - 2);
  }
  if (n0 - n1 <= 0 || n0 - n2 <= 0) {
    throw StatError("kendall_tau: constant input");
  }

  StatResult r;
  const double diff = static_cast<double>(concordant - discordant);
  r.statistic = diff / std::sqrt((n0 - n1) * (n0 - n2));

  if (!ties && n <= opt.kendall_exact_max_n) {
    // exact: discordant pairs distribute as inversions of a random permutation
    std::vector<double> dist = inversion_distribution(n);
    double lower = 0.0, upper = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      if (static_cast<long long>(k) <= discordant) lower += dist[k];
      if (static_cast<long long>(k) >= discordant) upper += dist[k];
    }
    r.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
  } else {
    const double dn = n;
    double v0 = dn * (dn - 1) * (2 * dn + 5);
    double var = (v0 - vt - vu) / 18.0 +
                 t2x * t2y / (2.0 * dn * (dn - 1)) +
                 t3x * t3y / (9.0 * dn * (dn - 1) * (dn - 2));
    if (var <= 0) throw StatError("kendall_tau: degenerate variance");
    r.p_value = two_sided_normal_p(diff / std::sqrt(var));
  }
  return r;
}

StatResult rank_sum_test(std::span<const double> a, std::span<const double> b,
                         const StatOptions& opt) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if (na == 0 || nb == 0) throw StatError("rank_sum_test: empty sample");
  const int n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<double> ranks = midranks(pooled);

  double w = 0.0;
  for (int i = 0; i < na; ++i) w += ranks[i];
  const double mean = na * (n + 1) / 2.0;

  StatResult r;
  r.statistic = w;

  if (n <= opt.rank_sum_exact_max) {
    // enumerate all C(n, na) assignments of ranks to the first sample
    const double observed = std::abs(w - mean);
    long long hits = 0, total = 0;
    std::vector<int> idx(na);
    for (int i = 0; i < na; ++i) idx[i] = i;
    while (true) {
      double ws = 0.0;
      for (int i : idx) ws += ranks[i];
      ++total;
      if (std::abs(ws - mean) >= observed - 1e-12) ++hits;
      // next combination
      int k = na - 1;
      while (k >= 0 && idx[k] == n - na + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < na; ++j) idx[j] = idx[j - 1] + 1;
    }
    r.p_value = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    double tie_term = 0.0;
    for (auto& [v, t] : tie_groups(pooled)) {
      (void)v;
      tie_term += static_cast<double>(t) * t * t - t;
    }
    double var = (static_cast<double>(na) * nb / 12.0) *
                 ((n + 1) - tie_term / (static_cast<double>(n) * (n - 1)));
    if (var <= 0) {
      r.p_value = 1.0; // every pooled value tied
      return r;
    }
    double num = w - mean;
    if (opt.continuity_correction) {
      num -= 0.5 * (num > 0 ? 1.0 : (num < 0 ? -1.0 : 0.0));
    }
    r.p_value = two_sided_normal_p(num / std::sqrt(var));
  }
  return r;
}

StatResult signed_rank_test(std::span<const std::pair<double, double>> pairs,
                            const StatOptions& opt) {
  std::vector<double> diffs;
  for (const auto& [before, after] : pairs) {
    double d = after - before;
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) throw StatError("signed_rank_test: degenerate (all differences zero)");
  const int m = static_cast<int>(diffs.size());

  std::vector<double> abs_diffs(m);
  for (int i = 0; i < m; ++i) abs_diffs[i] = std::abs(diffs[i]);
  std::vector<double> ranks = midranks(abs_diffs);

  double w_plus = 0.0, rank_total = 0.0, rank_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    if (diffs[i] > 0) w_plus += ranks[i];
    rank_total += ranks[i];
    rank_sq += ranks[i] * ranks[i];
  }
  const double mean = rank_total / 2.0;

  StatResult r;
  r.statistic = w_plus;

  if (m <= opt.signed_rank_exact_max) {
    const double observed = std::abs(w_plus - mean);
    const std::uint64_t total = 1ULL << m;
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      double ws = 0.0;
      for (int i = 0; i < m; ++i) {
        if (mask & (1ULL << i)) ws += ranks[i];
      }
      if (std::abs(ws - mean) >= observed - 1e-12) ++hits;
    }
    r.p_value = static_cast<double>(hits) / static_cast<double>(total);
  } else {
    double var = rank_sq / 4.0;
    double num = w_plus - mean;
    if (opt.continuity_correction) {
      num -= 0.5 * (num > 0 ? 1.0 : (num < 0 ? -1.0 : 0.0));
    }
    r.p_value = two_sided_normal_p(num / std::sqrt(var));
  }
  return r;
}

StatResult cliffs_delta(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw StatError("cliffs_delta: empty sample");
  long long greater = 0, less = 0;
  for (double va : a) {
    for (double vb : b) {
      if (va > vb) ++greater;
      if (va < vb) ++less;
    }
  }
  StatResult r;
  double delta = static_cast<double>(greater - less) /
                 (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  r.statistic = delta;
  r.effect_size = delta;
  r.effect_class = classify_effect(delta);
  return r;
}

} // namespace maintlens::stats
