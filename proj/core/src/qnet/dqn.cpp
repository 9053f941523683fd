#include "pirl/qnet/dqn.hpp"

#include "pirl/error.hpp"

namespace pirl::qnet {

namespace {

Eigen::MatrixXd stack_columns(std::span<const Transition> batch, bool next, std::size_t rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& obs = next ? batch[j].next_observation : batch[j].observation;
    if (obs.size() != rows) throw UsageError("transition observation has the wrong dimension");
    for (std::size_t i = 0; i < rows; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = obs[i];
  }
  return m;
}

}  // namespace

LossGradient td_loss_gradient(const QNetwork& net, const QNetwork& target,
                              std::span<const Transition> batch, double gamma) {
  if (batch.empty()) throw UsageError("train on an empty batch");
  const auto& layers = net.layers();
  const std::size_t n_layers = layers.size();
  const auto n = static_cast<Eigen::Index>(batch.size());

  // Bootstrapped targets from the frozen network.
  Eigen::VectorXd y(n);
  {
    bool any_bootstrap = false;
    for (const auto& t : batch) any_bootstrap |= !t.terminal;
    Eigen::MatrixXd next_q;
    if (any_bootstrap && gamma != 0.0)
      next_q = target.forward_batch(stack_columns(batch, true, target.input_size()));
    for (Eigen::Index j = 0; j < n; ++j) {
      const Transition& t = batch[static_cast<std::size_t>(j)];
      y(j) = t.reward;
      if (!t.terminal && gamma != 0.0) y(j) += gamma * next_q.col(j).maxCoeff();
    }
  }

  // Forward pass keeping every layer's activation.
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(n_layers + 1);
  acts.push_back(stack_columns(batch, false, net.input_size()));
  for (std::size_t i = 0; i < n_layers; ++i) {
    Eigen::MatrixXd z = layers[i].weights * acts.back();
    z.colwise() += layers[i].bias;
    if (i + 1 < n_layers) z = z.cwiseMax(0.0);
    acts.push_back(std::move(z));
  }

  const Eigen::MatrixXd& q = acts.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  double loss = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto a = static_cast<Eigen::Index>(batch[static_cast<std::size_t>(j)].action);
    if (a >= q.rows()) throw UsageError("transition action out of range");
    const double err = q(a, j) - y(j);
    loss += err * err;
    delta(a, j) = 2.0 * err / static_cast<double>(n);
  }
  loss /= static_cast<double>(n);

  LossGradient out;
  out.loss = loss;
  out.grads.resize(n_layers);
  for (std::size_t k = n_layers; k-- > 0;) {
    out.grads[k].weights = delta * acts[k].transpose();
    out.grads[k].bias = delta.rowwise().sum();
    if (k == 0) break;
    Eigen::MatrixXd back = layers[k].weights.transpose() * delta;
    // Rectifier derivative: pass-through where the activation was positive.
    delta = (acts[k].array() > 0.0).select(back, 0.0);
  }
  return out;
}

double train_batch(QNetwork& net, const QNetwork& target, std::span<const Transition> batch,
                   const HyperParams& hp) {
  LossGradient lg = td_loss_gradient(net, target, batch, hp.gamma);
  auto& layers = net.layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    layers[k].weights.noalias() -= hp.learning_rate * lg.grads[k].weights;
    layers[k].bias.noalias() -= hp.learning_rate * lg.grads[k].bias;
  }
  return lg.loss;
}

std::size_t epsilon_greedy(std::span<const double> qvalues, double epsilon, Rng& rng) {
  if (qvalues.empty()) throw UsageError("epsilon_greedy on empty q-values");
  if (rng.bernoulli(epsilon)) return rng.below(qvalues.size());
  return argmax(qvalues);
}

}  // namespace pirl::qnet
