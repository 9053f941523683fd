#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pirl/rng.hpp"

namespace pirl::qnet {

struct DenseLayer {
  Eigen::MatrixXd weights;  // fan_out x fan_in
  Eigen::VectorXd bias;     // fan_out

  friend bool operator==(const DenseLayer& a, const DenseLayer& b) {
    return a.weights == b.weights && a.bias == b.bias;
  }
};

// Feedforward action-value approximator: affine layers with rectifiers on
// every hidden layer and an identity output layer.
class QNetwork {
 public:
  QNetwork() = default;

  // Glorot-uniform weights (bound sqrt(6 / (fan_in + fan_out))), zero biases.
  // `layer_sizes` = {inputs, hidden..., outputs}; at least two entries.
  static QNetwork create(const std::vector<std::size_t>& layer_sizes, Rng& rng);

  // Builds a network from explicit parameters; shapes must chain.
  static QNetwork from_layers(std::vector<DenseLayer> layers);

  std::vector<double> forward(std::span<const double> input) const;
  // Columns of `inputs` are samples; returns outputs x samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

  std::vector<std::size_t> layer_sizes() const;
  std::size_t input_size() const;
  std::size_t output_size() const;
  std::size_t parameter_count() const;

  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }

  bool all_finite() const;

  friend bool operator==(const QNetwork&, const QNetwork&) = default;

 private:
  std::vector<DenseLayer> layers_;
};

// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> values);

}  // namespace pirl::qnet
