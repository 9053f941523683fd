#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pirl/advice/advisor.hpp"
#include "pirl/env/environment.hpp"
#include "pirl/harness/agent_kind.hpp"
#include "pirl/persistence/discretization.hpp"
#include "pirl/persistence/policy_reuse.hpp"
#include "pirl/qnet/hyper_params.hpp"

namespace pirl::harness {

struct RunConfig {
  env::EnvSpec env = env::EnvSpec::cartpole_default();
  AgentKind agent = AgentKind::RL;
  qnet::HyperParams hyperparams;
  // Overrides the profile implied by `agent` when set.
  std::optional<advice::AdvisorProfile> advisor;
  persistence::DiscretizationScheme discretization = persistence::DiscretizationScheme::cartpole_default();
  persistence::PprParams ppr;
  int episodes = 300;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::filesystem::path out_dir = "runs";
  // Frozen oracle checkpoint; defaults to the bundled one for the env.
  std::optional<std::filesystem::path> oracle;

  advice::AdvisorProfile effective_profile() const;
  // "<agent>_<env>", e.g. "PO_cartpole".
  std::string run_id() const;
  std::filesystem::path oracle_path() const;

  void validate() const;
};

// Default oracle checkpoint location for an environment.
std::filesystem::path default_oracle_path(env::EnvKind kind);

// Parses the JSON config. `agent` may be a single kind or an array of kinds;
// one RunConfig is produced per kind. Omitted fields take their defaults;
// unknown fields and out-of-range values raise ValidationError naming the
// field path.
std::vector<RunConfig> parse_configs(const nlohmann::json& j);
std::vector<RunConfig> load_configs(const std::filesystem::path& path);
// Single-agent convenience; throws if the file lists several kinds.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json env_spec_to_json(const env::EnvSpec& spec);
env::EnvSpec env_spec_from_json(const nlohmann::json& j, const std::string& prefix = "env");

}  // namespace pirl::harness
