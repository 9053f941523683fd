#pragma once

#include <cstdint>

#include "pirl/env/environment.hpp"
#include "pirl/qnet/hyper_params.hpp"
#include "pirl/qnet/network.hpp"

namespace pirl::harness {

struct OracleTrainingOptions {
  env::EnvSpec env = env::EnvSpec::cartpole_default();
  qnet::HyperParams hyperparams;
  std::uint64_t seed = 7;
  int max_episodes = 1000;
  int eval_every = 10;
  int eval_episodes = 20;
  double gate = 400.0;  // mean greedy reward required to accept the oracle
};

struct OracleTrainingResult {
  qnet::QNetwork network;  // best greedy snapshot seen
  double score = 0.0;      // its mean greedy reward
  int episodes = 0;        // training episodes consumed
  bool passed = false;
};

// Trains a plain RL agent, periodically evaluating the greedy policy, and
// stops at the first snapshot whose mean reward reaches the gate.
OracleTrainingResult train_oracle(const OracleTrainingOptions& options);

}  // namespace pirl::harness
