#include "groupform/dense_net.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace groupform {

namespace {

Eigen::MatrixXd activate(const Eigen::MatrixXd& z, Activation a) {
  switch (a) {
    case Activation::relu:
      return z.cwiseMax(0.0);
    case Activation::tanh:
      return z.array().tanh().matrix();
    case Activation::identity:
      break;
  }
  return z;
}

// Derivative expressed through the activation output y.
Eigen::MatrixXd activation_grad(const Eigen::MatrixXd& y, Activation a) {
  switch (a) {
    case Activation::relu:
      return (y.array() > 0.0).cast<double>().matrix();
    case Activation::tanh:
      return (1.0 - y.array().square()).matrix();
    case Activation::identity:
      break;
  }
  return Eigen::MatrixXd::Ones(y.rows(), y.cols());
}

}  // namespace

DenseNet::DenseNet(std::vector<std::size_t> layer_sizes, Activation hidden, Activation head)
    : sizes_(std::move(layer_sizes)), hidden_(hidden), head_(head) {
  if (sizes_.size() != 4) {
    throw std::invalid_argument("dense net needs exactly four layer sizes (three layers)");
  }
  for (std::size_t s : sizes_) {
    if (s == 0) throw std::invalid_argument("layer sizes must be positive");
  }
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const auto out = static_cast<Eigen::Index>(sizes_[l + 1]);
    const auto in = static_cast<Eigen::Index>(sizes_[l]);
    layers_.push_back({Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)});
  }
}

void DenseNet::initialize(Rng& rng) {
  for (auto& layer : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    auto draw = [&] { return (2.0 * uniform01(rng) - 1.0) * bound; };
    // column-major fill
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) layer.weight(r, c) = draw();
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = draw();
  }
  clear_cache();
}

Eigen::MatrixXd DenseNet::forward(const Eigen::MatrixXd& inputs) {
  if (static_cast<std::size_t>(inputs.rows()) != input_size()) {
    throw std::invalid_argument("input has " + std::to_string(inputs.rows()) +
                                " rows, network expects " + std::to_string(input_size()));
  }
  inputs_.clear();
  outputs_.clear();
  Eigen::MatrixXd x = inputs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    inputs_.push_back(x);
    Eigen::MatrixXd z = layers_[l].weight * x;
    z.colwise() += layers_[l].bias;
    x = activate(z, activation_for(l));
    outputs_.push_back(x);
  }
  return x;
}

Eigen::VectorXd DenseNet::evaluate(const Eigen::VectorXd& input) const {
  if (static_cast<std::size_t>(input.size()) != input_size()) {
    throw std::invalid_argument("input length does not match network input size");
  }
  Eigen::MatrixXd x = input;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * x;
    z.colwise() += layers_[l].bias;
    x = activate(z, activation_for(l));
  }
  return x.col(0);
}

NetGradients DenseNet::backward(const Eigen::MatrixXd& upstream) const {
  if (outputs_.empty()) throw std::logic_error("backward called before forward");
  const Eigen::MatrixXd& out = outputs_.back();
  if (upstream.rows() != out.rows() || upstream.cols() != out.cols()) {
    throw std::invalid_argument("upstream gradient shape does not match network output");
  }
  NetGradients grads;
  grads.layers.resize(layers_.size());
  Eigen::MatrixXd delta = upstream;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    delta = delta.cwiseProduct(activation_grad(outputs_[l], activation_for(l)));
    grads.layers[l].weight = delta * inputs_[l].transpose();
    grads.layers[l].bias = delta.rowwise().sum();
    delta = layers_[l].weight.transpose() * delta;
  }
  grads.input = std::move(delta);
  return grads;
}

std::size_t DenseNet::parameter_count() const {
  std::size_t count = 0;
  for (const auto& layer : layers_) {
    count += static_cast<std::size_t>(layer.weight.size() + layer.bias.size());
  }
  return count;
}

bool DenseNet::all_finite() const {
  for (const auto& layer : layers_) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

bool DenseNet::same_shape(const DenseNet& other) const { return sizes_ == other.sizes_; }

void DenseNet::clear_cache() {
  inputs_.clear();
  outputs_.clear();
}

void soft_update(DenseNet& target, const DenseNet& online, double soft_tau) {
  if (!target.same_shape(online)) throw std::invalid_argument("soft update shape mismatch");
  if (!(soft_tau >= 0.0 && soft_tau <= 1.0)) {
    throw std::invalid_argument("soft_tau must lie in [0, 1]");
  }
  for (std::size_t l = 0; l < target.layers().size(); ++l) {
    auto& t = target.layers()[l];
    const auto& o = online.layers()[l];
    t.weight = soft_tau * o.weight + (1.0 - soft_tau) * t.weight;
    t.bias = soft_tau * o.bias + (1.0 - soft_tau) * t.bias;
  }
}

SgdOptimizer::SgdOptimizer(double learning_rate, double momentum)
    : lr_(learning_rate), momentum_(momentum) {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("momentum must lie in [0, 1)");
  }
}

void SgdOptimizer::step(DenseNet& net, const NetGradients& grads) {
  auto& layers = net.layers();
  if (grads.layers.size() != layers.size()) {
    throw std::invalid_argument("gradient does not match network");
  }
  if (momentum_ == 0.0) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      layers[l].weight -= lr_ * grads.layers[l].weight;
      layers[l].bias -= lr_ * grads.layers[l].bias;
    }
    return;
  }
  if (velocity_.empty()) {
    for (const auto& layer : layers) {
      velocity_.push_back({Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()),
                           Eigen::VectorXd::Zero(layer.bias.size())});
    }
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    velocity_[l].weight = momentum_ * velocity_[l].weight + grads.layers[l].weight;
    velocity_[l].bias = momentum_ * velocity_[l].bias + grads.layers[l].bias;
    layers[l].weight -= lr_ * velocity_[l].weight;
    layers[l].bias -= lr_ * velocity_[l].bias;
  }
}

}  // namespace groupform
