#include "pirl/qnet/network.hpp"

#include <cmath>

#include "pirl/error.hpp"

namespace pirl::qnet {

QNetwork QNetwork::create(const std::vector<std::size_t>& layer_sizes, Rng& rng) {
  if (layer_sizes.size() < 2) throw UsageError("QNetwork needs at least input and output sizes");
  for (std::size_t s : layer_sizes)
    if (s == 0) throw UsageError("QNetwork layer sizes must be >= 1");

  QNetwork net;
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const auto fan_in = static_cast<Eigen::Index>(layer_sizes[i]);
    const auto fan_out = static_cast<Eigen::Index>(layer_sizes[i + 1]);
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer{Eigen::MatrixXd(fan_out, fan_in), Eigen::VectorXd::Zero(fan_out)};
    // Row-major fill order keeps the draw sequence independent of storage.
    for (Eigen::Index r = 0; r < fan_out; ++r)
      for (Eigen::Index c = 0; c < fan_in; ++c) layer.weights(r, c) = rng.uniform(-bound, bound);
    net.layers_.push_back(std::move(layer));
  }
  return net;
}

QNetwork QNetwork::from_layers(std::vector<DenseLayer> layers) {
  if (layers.empty()) throw UsageError("QNetwork needs at least one layer");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].weights.rows() != layers[i].bias.size() || layers[i].weights.size() == 0)
      throw UsageError("layer " + std::to_string(i) + ": weight/bias shape mismatch");
    if (i > 0 && layers[i].weights.cols() != layers[i - 1].weights.rows())
      throw UsageError("layer " + std::to_string(i) + ": fan-in does not match previous layer");
  }
  QNetwork net;
  net.layers_ = std::move(layers);
  return net;
}

std::vector<double> QNetwork::forward(std::span<const double> input) const {
  if (input.size() != input_size())
    throw UsageError("forward: input has " + std::to_string(input.size()) + " values, network expects " +
                     std::to_string(input_size()));
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(input.data(), static_cast<Eigen::Index>(input.size()));
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::VectorXd z = layers_[i].weights * a + layers_[i].bias;
    if (i + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return {a.data(), a.data() + a.size()};
}

Eigen::MatrixXd QNetwork::forward_batch(const Eigen::MatrixXd& inputs) const {
  if (static_cast<std::size_t>(inputs.rows()) != input_size())
    throw UsageError("forward_batch: input dimension mismatch");
  Eigen::MatrixXd a = inputs;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = layers_[i].weights * a;
    z.colwise() += layers_[i].bias;
    if (i + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

std::vector<std::size_t> QNetwork::layer_sizes() const {
  std::vector<std::size_t> sizes;
  if (layers_.empty()) return sizes;
  sizes.push_back(static_cast<std::size_t>(layers_.front().weights.cols()));
  for (const auto& l : layers_) sizes.push_back(static_cast<std::size_t>(l.weights.rows()));
  return sizes;
}

std::size_t QNetwork::input_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weights.cols());
}

std::size_t QNetwork::output_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weights.rows());
}

std::size_t QNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
  return n;
}

bool QNetwork::all_finite() const {
  for (const auto& l : layers_)
    if (!l.weights.allFinite() || !l.bias.allFinite()) return false;
  return true;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw UsageError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

}  // namespace pirl::qnet
