#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "pirl/advice/advisor.hpp"
#include "pirl/env/environment.hpp"
#include "pirl/harness/agent_kind.hpp"
#include "pirl/harness/metrics.hpp"
#include "pirl/persistence/policy_reuse.hpp"
#include "pirl/persistence/rule_store.hpp"
#include "pirl/qnet/hyper_params.hpp"
#include "pirl/qnet/network.hpp"
#include "pirl/qnet/replay_buffer.hpp"

namespace pirl::harness {

// What happened on one environment step, for live observers.
struct StepEvent {
  int episode = 0;  // 1-based
  int step = 0;     // 1-based within the episode
  const env::Observation* observation = nullptr;  // post-step observation
  std::size_t action = 0;
  double reward = 0.0;
  double episode_reward = 0.0;
  double epsilon = 0.0;
  double reuse_probability = 0.0;
  std::size_t rules = 0;
  persistence::Provenance provenance = persistence::Provenance::Policy;
  bool done = false;
};

using StepObserver = std::function<void(const StepEvent&)>;

// Every random concern of one seeded run draws from its own stream.
struct AgentStreams {
  Rng env;
  Rng init;
  Rng policy;
  Rng advisor;
  Rng reuse;
  Rng replay;

  static AgentStreams from_seed(std::uint64_t seed);
};

struct AgentSetup {
  AgentKind kind = AgentKind::RL;
  qnet::HyperParams hyperparams;
  persistence::DiscretizationScheme discretization;
  persistence::PprParams ppr;
};

// Learning state for one seeded run: online and target networks, replay,
// rule store, random streams and counters. `advisor` may be null only for RL.
class Agent {
 public:
  Agent(AgentSetup setup, std::size_t observation_size, std::size_t action_count,
        std::uint64_t seed, advice::Advisor* advisor);

  // reset -> step loop to termination or truncation, training per the
  // replay schedule. Action source depends on the agent kind.
  EpisodeMetrics run_episode(env::Environment& environment, const StepObserver& observer = {});

  int episodes_completed() const noexcept { return episode_; }
  std::uint64_t total_steps() const noexcept { return total_steps_; }
  const qnet::QNetwork& network() const noexcept { return net_; }
  const qnet::QNetwork& target_network() const noexcept { return target_; }
  const persistence::RuleStore& rules() const noexcept { return rules_; }
  persistence::RuleStore& rules() noexcept { return rules_; }
  const std::vector<double>& losses() const noexcept { return losses_; }
  const AgentSetup& setup() const noexcept { return setup_; }

 private:
  AgentSetup setup_;
  AgentStreams streams_;
  advice::Advisor* advisor_;
  qnet::QNetwork net_;
  qnet::QNetwork target_;
  qnet::ReplayBuffer replay_;
  persistence::RuleStore rules_;
  int episode_ = 0;
  std::uint64_t total_steps_ = 0;
  std::vector<double> losses_;
};

}  // namespace pirl::harness
