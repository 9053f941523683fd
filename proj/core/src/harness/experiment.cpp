#include "pirl/harness/experiment.hpp"

#include <future>
#include <system_error>

#include "pirl/error.hpp"
#include "pirl/harness/agent.hpp"
#include "pirl/qnet/checkpoint.hpp"

namespace pirl::harness {

std::shared_ptr<const advice::OracleAgent> load_oracle(const std::filesystem::path& path) {
  return std::make_shared<const advice::OracleAgent>(qnet::load_network(path));
}

SeedRun run_seed(const RunConfig& cfg, std::uint64_t seed, const advice::OracleAgent* oracle,
                 persistence::RuleStore* rules_out) {
  auto environment = env::make_environment(cfg.env);
  std::unique_ptr<advice::SimulatedAdvisor> advisor;
  if (uses_advisor(cfg.agent)) {
    if (oracle == nullptr) throw UsageError("advised agent kinds need an oracle");
    if (oracle->network().input_size() != environment->observation_size() ||
        oracle->network().output_size() != environment->action_count())
      throw ValidationError("oracle", "checkpoint dimensions do not match the environment");
    advisor = std::make_unique<advice::SimulatedAdvisor>(cfg.effective_profile(), *oracle);
  }
  Agent agent({cfg.agent, cfg.hyperparams, cfg.discretization, cfg.ppr}, environment->observation_size(),
              environment->action_count(), seed, advisor.get());

  SeedRun run{seed, {}};
  run.episodes.reserve(static_cast<std::size_t>(cfg.episodes));
  for (int e = 0; e < cfg.episodes; ++e) run.episodes.push_back(agent.run_episode(*environment));
  if (rules_out) *rules_out = agent.rules();
  return run;
}

ExperimentResult run_experiment(const RunConfig& cfg, const ExperimentOptions& options) {
  cfg.validate();

  std::shared_ptr<const advice::OracleAgent> oracle = options.oracle;
  if (uses_advisor(cfg.agent) && !oracle) oracle = load_oracle(cfg.oracle_path());

  if (options.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec || !std::filesystem::is_directory(cfg.out_dir))
      throw IoError("cannot create output directory '" + cfg.out_dir.string() + "'");
  }

  ExperimentResult result;
  result.table.run_id = cfg.run_id();
  result.table.agent_kind = std::string(to_string(cfg.agent));
  const std::size_t n = cfg.seeds.size();
  result.table.runs.resize(n);
  std::vector<persistence::RuleStore> stores(n);

  auto one = [&](std::size_t i) {
    result.table.runs[i] = run_seed(cfg, cfg.seeds[i], oracle.get(), &stores[i]);
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::size_t start = 0; start < n; start += jobs) {
      std::vector<std::future<void>> pending;
      for (std::size_t i = start; i < std::min(n, start + jobs); ++i)
        pending.push_back(std::async(std::launch::async, one, i));
      for (auto& f : pending) f.get();
    }
  }

  if (is_persistent(cfg.agent)) result.rule_stores = std::move(stores);

  if (options.write_files) {
    const auto csv = cfg.out_dir / (cfg.run_id() + ".csv");
    write_csv(result.table, csv);
    result.csv_path = csv;
    for (std::size_t i = 0; i < result.rule_stores.size(); ++i)
      result.rule_stores[i].save(cfg.out_dir /
                                 (cfg.run_id() + "_seed" + std::to_string(cfg.seeds[i]) + "_rules.json"));
  }
  return result;
}

}  // namespace pirl::harness
