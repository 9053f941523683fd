#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "pirl/advice/advisor.hpp"
#include "pirl/harness/config.hpp"
#include "pirl/harness/metrics.hpp"
#include "pirl/persistence/rule_store.hpp"

namespace pirl::harness {

struct ExperimentOptions {
  bool write_files = true;
  // Seeds run concurrently on up to this many threads; results are merged
  // in seed order either way.
  unsigned jobs = 1;
  // Preloaded oracle; when empty it is read from cfg.oracle_path() on demand.
  std::shared_ptr<const advice::OracleAgent> oracle;
};

struct ExperimentResult {
  MetricsTable table;
  std::vector<persistence::RuleStore> rule_stores;  // per seed, persistent kinds only
  std::optional<std::filesystem::path> csv_path;
};

// Fresh networks, buffers and rule stores per seed; `cfg.episodes` episodes
// each. Writes <out_dir>/<run_id>.csv (and a rule snapshot per seed for
// persistent kinds) when enabled.
ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& options = {});

// Runs a single seed without touching disk.
SeedRun run_seed(const RunConfig& cfg, std::uint64_t seed, const advice::OracleAgent* oracle,
                 persistence::RuleStore* rules_out = nullptr);

std::shared_ptr<const advice::OracleAgent> load_oracle(const std::filesystem::path& path);

}  // namespace pirl::harness
