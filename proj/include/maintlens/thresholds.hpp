#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace maintlens::thresholds {

struct SizeThresholds {
  int t70 = 24;
  int t80 = 36;
  int t90 = 63;

  bool operator==(const SizeThresholds&) const = default;
};

// The corpus-derived defaults.
inline constexpr SizeThresholds kDefaultThresholds{24, 36, 63};

enum class SizeCategory { Small, Medium, Large, VeryLarge };
const char* size_category_name(SizeCategory c);

struct ThresholdError : std::runtime_error {
  explicit ThresholdError(const std::string& what) : std::runtime_error(what) {}
};

// Full derivation output, including the intermediates of the aggregation.
struct Derivation {
  // per project, group order = first appearance of each SLOC value
  std::vector<std::vector<int>> list_slocs;
  std::vector<std::vector<double>> list_norms;
  // merged cumulative curve, x ascending; sum(y_axis) == 1
  std::vector<int> x_axis;
  std::vector<double> y_axis;
  SizeThresholds thresholds;
};

// Weight ratio per method (sloc / project total), identical-SLOC grouping,
// normalization by the project count, then the smallest x whose cumulative
// y reaches each percentile (ties resolve to the smaller SLOC).
Derivation derive_thresholds(
    const std::vector<std::vector<int>>& project_slocs,
    const std::array<double, 3>& percentiles = {0.70, 0.80, 0.90});

// Small iff sloc <= t70; Medium iff <= t80; Large iff <= t90; else VeryLarge.
SizeCategory categorize(int sloc, const SizeThresholds& thresholds);

} // namespace maintlens::thresholds
