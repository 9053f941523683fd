#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pirl/harness/metrics.hpp"

namespace pirl::harness {

inline constexpr std::size_t kMovingWindow = 50;

struct Summary {
  std::string run_id;
  std::string agent_kind;
  std::size_t seeds = 0;
  std::size_t episodes = 0;
  std::vector<double> mean_reward;    // per episode, across seeds
  std::vector<double> stddev_reward;  // population stddev across seeds
  // Trailing mean of mean_reward over up to 50 episodes (partial windows at
  // the start).
  std::vector<double> moving_average;
  double threshold = 400.0;
  // First 1-based episode whose full trailing 50-episode mean reaches the
  // threshold, on the seed-averaged curve.
  std::optional<int> convergence_episode;
  std::vector<std::optional<int>> seed_convergence;
  std::uint64_t total_advisor_queries = 0;
  std::uint64_t total_advice_given = 0;
  std::uint64_t total_rule_hits = 0;
  std::uint64_t total_rule_inserts = 0;
  double total_reward = 0.0;  // summed over seeds and episodes
};

// First 1-based episode whose full trailing window mean is >= threshold.
std::optional<int> convergence_episode(std::span<const double> rewards, double threshold,
                                       std::size_t window = kMovingWindow);

// Throws UsageError when runs have different episode counts.
Summary summarize(const MetricsTable& table, double threshold = 400.0);

// Mean of per-seed convergence episodes; a seed that never converges counts
// as episodes + 1.
double mean_seed_convergence(const Summary& s);

nlohmann::json summary_to_json(const Summary& s);

// Reward-vs-episode learning curves (moving average), one polyline per
// summary.
std::string learning_curve_svg(std::span<const Summary> summaries);

}  // namespace pirl::harness
