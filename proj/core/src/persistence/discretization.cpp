#include "pirl/persistence/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pirl/env/homenav.hpp"
#include "pirl/error.hpp"

namespace pirl::persistence {

DiscretizationScheme DiscretizationScheme::cartpole_default() {
  return {{{-2.4, 2.4, 10}, {-3.0, 3.0, 10}, {-0.21, 0.21, 10}, {-3.5, 3.5, 10}}};
}

DiscretizationScheme DiscretizationScheme::homenav_default(const env::HomeNavParams& h) {
  DiscretizationScheme s;
  s.dims.push_back({0.0, h.width, 8});
  s.dims.push_back({0.0, h.height, 8});
  s.dims.push_back({-h.width, h.width, 8});
  s.dims.push_back({-h.height, h.height, 8});
  for (std::size_t i = 0; i < env::kRayCount; ++i) s.dims.push_back({0.0, h.ray_clip, 8});
  return s;
}

DiscretizationScheme DiscretizationScheme::default_for(const env::EnvSpec& spec) {
  return spec.kind == env::EnvKind::CartPole ? cartpole_default() : homenav_default(spec.homenav);
}

std::uint64_t DiscretizationScheme::cell_count() const {
  std::uint64_t n = 1;
  for (const auto& d : dims) {
    if (d.bins != 0 && n > std::numeric_limits<std::uint64_t>::max() / d.bins)
      return std::numeric_limits<std::uint64_t>::max();
    n *= d.bins;
  }
  return n;
}

void DiscretizationScheme::validate(const std::string& prefix) const {
  if (dims.empty()) throw ValidationError(prefix, "needs at least one dimension");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::string path = prefix + "[" + std::to_string(i) + "]";
    if (!(std::isfinite(dims[i].lo) && std::isfinite(dims[i].hi) && dims[i].lo < dims[i].hi))
      throw ValidationError(path + ".lo", "requires finite lo < hi");
    if (dims[i].bins < 1) throw ValidationError(path + ".bins", "must be >= 1");
  }
}

RuleKey discretize(std::span<const double> obs, const DiscretizationScheme& scheme) {
  if (obs.size() != scheme.dims.size())
    throw UsageError("discretize: observation has " + std::to_string(obs.size()) +
                     " values, scheme has " + std::to_string(scheme.dims.size()));
  RuleKey key;
  key.bins.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const BinRange& d = scheme.dims[i];
    const double x = std::clamp(obs[i], d.lo, d.hi);
    const double scaled = (x - d.lo) / (d.hi - d.lo) * static_cast<double>(d.bins);
    const auto bin = std::min(static_cast<std::size_t>(std::floor(scaled)), d.bins - 1);
    key.bins.push_back(static_cast<std::uint32_t>(bin));
  }
  return key;
}

}  // namespace pirl::persistence
