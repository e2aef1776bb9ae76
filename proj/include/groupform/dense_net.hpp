#pragma once
// Three-layer fully connected network with hand-written backpropagation.
//
// Batches are column-major: one sample per column, so a forward pass maps an
// (inputs x batch) matrix to (outputs x batch).

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "groupform/random.hpp"

namespace groupform {

enum class Activation { relu, tanh, identity };

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

struct NetGradients {
  std::vector<DenseLayer> layers;
  Eigen::MatrixXd input;  // d(loss)/d(input), same shape as the forward input
};

class DenseNet {
 public:
  DenseNet() = default;
  /// `layer_sizes` = {in, hidden1, hidden2, out}. Parameters start at zero.
  DenseNet(std::vector<std::size_t> layer_sizes, Activation hidden, Activation head);

  /// Uniform in +-1/sqrt(fan_in) for every weight and bias.
  void initialize(Rng& rng);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs);
  /// Single-sample convenience; does not disturb the cached batch.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& input) const;

  /// Reverse pass for the most recent forward(); `upstream` is
  /// d(loss)/d(output) with the output's shape. Throws std::logic_error when
  /// no forward pass is cached.
  NetGradients backward(const Eigen::MatrixXd& upstream) const;

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  std::size_t input_size() const { return sizes_.front(); }
  std::size_t output_size() const { return sizes_.back(); }
  Activation hidden_activation() const { return hidden_; }
  Activation head_activation() const { return head_; }

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  std::size_t parameter_count() const;
  bool all_finite() const;
  bool same_shape(const DenseNet& other) const;

  /// Forgets the cached forward pass.
  void clear_cache();

 private:
  Activation activation_for(std::size_t layer) const {
    return layer + 1 == layers_.size() ? head_ : hidden_;
  }

  std::vector<std::size_t> sizes_;
  Activation hidden_ = Activation::relu;
  Activation head_ = Activation::identity;
  std::vector<DenseLayer> layers_;

  // forward cache
  std::vector<Eigen::MatrixXd> inputs_;  // input to each layer
  std::vector<Eigen::MatrixXd> outputs_;  // post-activation of each layer
};

/// target <- soft_tau * online + (1 - soft_tau) * target, parameter-wise.
void soft_update(DenseNet& target, const DenseNet& online, double soft_tau);

/// Plain SGD with optional heavy-ball momentum.
class SgdOptimizer {
 public:
  SgdOptimizer() = default;
  SgdOptimizer(double learning_rate, double momentum = 0.0);

  void step(DenseNet& net, const NetGradients& grads);
  double learning_rate() const { return lr_; }

 private:
  double lr_ = 1e-3;
  double momentum_ = 0.0;
  std::vector<DenseLayer> velocity_;
};

}  // namespace groupform
