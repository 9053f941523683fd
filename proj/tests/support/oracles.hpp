#pragma once

// Reference implementations used only by tests. They deliberately avoid the
// library's Eigen code paths: plain loops over std::vector.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "pirl/qnet/dqn.hpp"
#include "pirl/qnet/network.hpp"

namespace pirl::check {

inline std::vector<double> naive_forward(const qnet::QNetwork& net, std::span<const double> x) {
  std::vector<double> a(x.begin(), x.end());
  const auto& layers = net.layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& w = layers[k].weights;
    std::vector<double> z(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      double s = layers[k].bias(r);
      for (Eigen::Index c = 0; c < w.cols(); ++c) s += w(r, c) * a[static_cast<std::size_t>(c)];
      z[static_cast<std::size_t>(r)] = (k + 1 < layers.size()) ? std::max(0.0, s) : s;
    }
    a = std::move(z);
  }
  return a;
}

// TD loss recomputed from scratch with the naive forward pass.
inline double naive_td_loss(const qnet::QNetwork& net, const qnet::QNetwork& target,
                            std::span<const qnet::Transition> batch, double gamma) {
  double loss = 0.0;
  for (const auto& t : batch) {
    double y = t.reward;
    if (!t.terminal) {
      const auto nq = naive_forward(target, t.next_observation);
      y += gamma * *std::max_element(nq.begin(), nq.end());
    }
    const double err = naive_forward(net, t.observation)[t.action] - y;
    loss += err * err;
  }
  return loss / static_cast<double>(batch.size());
}

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t parameters = 0;
};

// Central finite differences on every weight and bias.
// Relative error = |analytic - numeric| / max(|analytic|, |numeric|, floor);
// the floor keeps round-off on vanishing gradients from dominating.
inline GradientCheck finite_difference_check(const qnet::QNetwork& net, const qnet::QNetwork& target,
                                             std::span<const qnet::Transition> batch, double gamma,
                                             double h = 1e-5, double floor = 1e-6) {
  const auto analytic = qnet::td_loss_gradient(net, target, batch, gamma);
  qnet::QNetwork probe = net;
  GradientCheck out;
  auto compare = [&](double a, double& param) {
    const double saved = param;
    param = saved + h;
    const double up = naive_td_loss(probe, target, batch, gamma);
    param = saved - h;
    const double down = naive_td_loss(probe, target, batch, gamma);
    param = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(a), std::abs(numeric), floor});
    out.max_relative_error = std::max(out.max_relative_error, std::abs(a - numeric) / denom);
    ++out.parameters;
  };
  for (std::size_t k = 0; k < probe.layers().size(); ++k) {
    auto& layer = probe.layers()[k];
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) compare(analytic.grads[k].weights(r, c), layer.weights(r, c));
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) compare(analytic.grads[k].bias(r), layer.bias(r));
  }
  return out;
}

inline std::vector<qnet::Transition> random_batch(Rng& rng, std::size_t n, std::size_t obs_dim, std::size_t actions) {
  std::vector<qnet::Transition> batch;
  for (std::size_t i = 0; i < n; ++i) {
    qnet::Transition t;
    for (std::size_t d = 0; d < obs_dim; ++d) {
      t.observation.push_back(rng.uniform(-1, 1));
      t.next_observation.push_back(rng.uniform(-1, 1));
    }
    t.action = rng.below(actions);
    t.reward = rng.uniform(-1, 1);
    t.terminal = rng.bernoulli(0.3);
    batch.push_back(std::move(t));
  }
  return batch;
}

// Random 4->8->2 network with non-zero biases so every code path is live.
inline qnet::QNetwork random_small_net(Rng& rng) {
  auto net = qnet::QNetwork::create({4, 8, 2}, rng);
  for (auto& l : net.layers())
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias(i) = rng.uniform(-0.5, 0.5);
  return net;
}

}  // namespace pirl::check
