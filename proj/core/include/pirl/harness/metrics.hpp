#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pirl::harness {

struct EpisodeMetrics {
  int episode = 0;  // 1-based
  int steps = 0;
  double reward = 0.0;
  std::uint64_t advisor_queries = 0;
  std::uint64_t advice_given = 0;
  std::uint64_t rule_hits = 0;
  std::uint64_t rule_inserts = 0;
  double epsilon = 0.0;
  double reuse_prob = 0.0;

  friend bool operator==(const EpisodeMetrics&, const EpisodeMetrics&) = default;
};

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<EpisodeMetrics> episodes;

  friend bool operator==(const SeedRun&, const SeedRun&) = default;
};

// One block of CSV rows: a run id and agent kind with its seeded runs.
struct MetricsTable {
  std::string run_id;
  std::string agent_kind;
  std::vector<SeedRun> runs;
};

inline constexpr const char* kCsvHeader =
    "run_id,seed,agent_kind,episode,steps,reward,advisor_queries,advice_given,rule_hits,"
    "rule_inserts,epsilon,reuse_prob";

// Doubles are written in shortest round-trip form.
void write_csv(const MetricsTable& table, std::ostream& out);
void write_csv(const MetricsTable& table, const std::filesystem::path& path);

// Rows grouped by (run_id, agent_kind) in file order, seeds in file order.
std::vector<MetricsTable> read_csv(std::istream& in);
std::vector<MetricsTable> read_csv(const std::filesystem::path& path);

}  // namespace pirl::harness
