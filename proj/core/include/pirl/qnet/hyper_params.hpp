#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pirl::qnet {

struct HyperParams {
  double gamma = 0.99;
  double learning_rate = 0.001;
  double epsilon_start = 1.0;
  double epsilon_decay = 0.995;  // per episode
  double epsilon_min = 0.01;
  std::size_t batch_size = 64;
  std::size_t target_sync_steps = 200;
  std::size_t train_start = 500;  // replay size before training begins
  std::size_t buffer_capacity = 10000;
  std::vector<std::size_t> hidden_layers{64, 64};

  void validate(const std::string& prefix = "hyperparams") const;
};

// max(epsilon_min, epsilon_start * epsilon_decay^episode), episode counted
// from zero.
double epsilon_at(const HyperParams& hp, int episode);

}  // namespace pirl::qnet
