#include "maintlens/thresholds.hpp"

#include <algorithm>
#include <map>

namespace maintlens::thresholds {

const char* size_category_name(SizeCategory c) {
  switch (c) {
    case SizeCategory::Small: return "Small";
    case SizeCategory::Medium: return "Medium";
    case SizeCategory::Large: return "Large";
    case SizeCategory::VeryLarge: return "VeryLarge";
  }
  return "Small";
}

Derivation derive_thresholds(const std::vector<std::vector<int>>& project_slocs,
                             const std::array<double, 3>& percentiles) {
  if (project_slocs.empty()) {
    throw ThresholdError("derive_thresholds: no projects");
  }
  for (double p : percentiles) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw ThresholdError("derive_thresholds: percentile outside (0,1]");
    }
  }
  const double phi = static_cast<double>(project_slocs.size());

  Derivation d;
  std::map<int, double> merged; // sloc -> summed normalized aggregation

  for (const std::vector<int>& slocs : project_slocs) {
    if (slocs.empty()) {
      throw ThresholdError("derive_thresholds: empty project");
    }
    double total = 0.0;
    for (int s : slocs) {
      if (s < 1) throw ThresholdError("derive_thresholds: sloc < 1");
      total += s;
    }
    // group identical SLOCs, keeping first-appearance order
    std::vector<int> group_slocs;
    std::vector<double> group_norms;
    std::map<int, std::size_t> position;
    for (int s : slocs) {
      double weight = static_cast<double>(s) / total;
      auto [it, inserted] = position.emplace(s, group_slocs.size());
      if (inserted) {
        group_slocs.push_back(s);
        group_norms.push_back(0.0);
      }
      group_norms[it->second] += weight / phi;
    }
    for (std::size_t g = 0; g < group_slocs.size(); ++g) {
      merged[group_slocs[g]] += group_norms[g];
    }
    d.list_slocs.push_back(std::move(group_slocs));
    d.list_norms.push_back(std::move(group_norms));
  }

  for (auto& [sloc, mass] : merged) {
    d.x_axis.push_back(sloc);
    d.y_axis.push_back(mass);
  }

  std::array<int, 3> cut{};
  double cumulative = 0.0;
  std::array<bool, 3> done{};
  for (std::size_t i = 0; i < d.x_axis.size(); ++i) {
    cumulative += d.y_axis[i];
    for (std::size_t k = 0; k < 3; ++k) {
      if (!done[k] && cumulative >= percentiles[k] - 1e-12) {
        cut[k] = d.x_axis[i];
        done[k] = true;
      }
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    if (!done[k]) cut[k] = d.x_axis.back(); // float drift at 100%
  }
  d.thresholds = SizeThresholds{cut[0], cut[1], cut[2]};
  return d;
}

SizeCategory categorize(int sloc, const SizeThresholds& t) {
  if (sloc <= t.t70) return SizeCategory::Small;
  if (sloc <= t.t80) return SizeCategory::Medium;
  if (sloc <= t.t90) return SizeCategory::Large;
  return SizeCategory::VeryLarge;
}

} // namespace maintlens::thresholds
