#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maintlens::stats {

enum class EffectClass { Negligible, Small, Medium, Large };

const char* effect_class_name(EffectClass c);

// |delta| cutpoints 0.147 / 0.330 / 0.474, lower bound inclusive.
EffectClass classify_effect(double delta);

struct StatResult {
  double statistic = 0.0;
  std::optional<double> p_value;
  std::optional<double> effect_size;
  std::optional<EffectClass> effect_class;
};

struct StatError : std::runtime_error {
  explicit StatError(const std::string& what) : std::runtime_error(what) {}
};

struct StatOptions {
  bool continuity_correction = true; // rank tests, normal path only
  int kendall_exact_max_n = 40;      // exact null only without ties
  int rank_sum_exact_max = 12;       // |a| + |b|
  int signed_rank_exact_max = 12;    // nonzero pairs
};

// Tie-corrected Kendall tau-b with a two-sided p-value: the exact pair
// distribution when n <= kendall_exact_max_n and neither side has ties,
// the tie-corrected normal approximation otherwise.
// Throws StatError on length mismatch or an all-constant side.
StatResult kendall_tau(std::span<const double> x, std::span<const double> y,
                       const StatOptions& options = {});

// Two-sided Wilcoxon rank-sum test; statistic is the rank sum of `a`.
// Exact permutation distribution when |a|+|b| <= rank_sum_exact_max.
StatResult rank_sum_test(std::span<const double> a, std::span<const double> b,
                         const StatOptions& options = {});

// Two-sided Wilcoxon signed-rank test over (before, after) pairs; zero
// differences are dropped; statistic is W+ (rank sum of positive
// differences). Throws StatError("degenerate") when every difference is 0.
StatResult signed_rank_test(std::span<const std::pair<double, double>> pairs,
                            const StatOptions& options = {});

// delta = (#pairs a>b - #pairs a<b) / (|a|*|b|), with the effect class.
StatResult cliffs_delta(std::span<const double> a, std::span<const double> b);

double normal_cdf(double z);

} // namespace maintlens::stats
