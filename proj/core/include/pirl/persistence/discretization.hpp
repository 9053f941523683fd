#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pirl/env/environment.hpp"

namespace pirl::persistence {

struct BinRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 1;
};

// Per-dimension clip range and bin count mapping a continuous observation
// onto a finite grid of rule keys.
struct DiscretizationScheme {
  std::vector<BinRange> dims;

  static DiscretizationScheme cartpole_default();
  // 8 bins per dimension over each feature's natural range.
  static DiscretizationScheme homenav_default(const env::HomeNavParams& params);
  static DiscretizationScheme default_for(const env::EnvSpec& spec);

  // Number of distinct keys, saturating at UINT64_MAX.
  std::uint64_t cell_count() const;

  void validate(const std::string& prefix = "discretization") const;
};

// Bin indices, one per observation dimension.
struct RuleKey {
  std::vector<std::uint32_t> bins;

  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
  friend bool operator==(const RuleKey&, const RuleKey&) = default;
};

// Clips each component to [lo, hi] and maps it to floor((x-lo)/(hi-lo)*bins),
// with x == hi landing in the last bin. Throws UsageError on a dimension
// mismatch.
RuleKey discretize(std::span<const double> obs, const DiscretizationScheme& scheme);

}  // namespace pirl::persistence
