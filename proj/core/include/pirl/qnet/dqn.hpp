#pragma once

#include <span>
#include <vector>

#include "pirl/qnet/hyper_params.hpp"
#include "pirl/qnet/network.hpp"
#include "pirl/qnet/replay_buffer.hpp"
#include "pirl/rng.hpp"

namespace pirl::qnet {

struct LossGradient {
  double loss = 0.0;
  std::vector<DenseLayer> grads;  // same shapes as the network's layers
};

// Mean squared TD error over the batch and its gradient with respect to
// `net`'s parameters. Targets are r for terminal transitions and
// r + gamma * max_a target(s')[a] otherwise; only the taken action's output
// carries error.
LossGradient td_loss_gradient(const QNetwork& net, const QNetwork& target,
                              std::span<const Transition> batch, double gamma);

// One plain gradient-descent step on the TD loss. Returns the pre-update loss.
double train_batch(QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
                   const HyperParams& hp);

// With probability epsilon a uniformly random action, otherwise the argmax
// (lowest index on ties).
std::size_t epsilon_greedy(std::span<const double> qvalues, double epsilon, Rng& rng);

inline void sync_target(const QNetwork& net, QNetwork& target) { target = net; }

}  // namespace pirl::qnet
