#include <gtest/gtest.h>

#include <cmath>

#include "groupform/dense_net.hpp"
#include "oracles.hpp"

using namespace groupform;

namespace {

DenseNet random_net(Rng& rng, Activation head) {
  const std::size_t in = 1 + rng() % 10;
  const std::size_t h1 = 1 + rng() % 16;
  const std::size_t h2 = 1 + rng() % 16;
  const std::size_t out = 1 + rng() % 4;
  DenseNet net({in, h1, h2, out}, Activation::relu, head);
  net.initialize(rng);
  return net;
}

// 2-3-3-1 with small hand-picked parameters.
DenseNet fixed_net(Activation head) {
  DenseNet net({2, 3, 3, 1}, Activation::relu, head);
  auto& l = net.layers();
  l[0].weight << 0.5, -0.25, -1.0, 0.5, 0.25, 0.25;
  l[0].bias << 0.1, 0.0, -0.2;
  l[1].weight << 1.0, 0.0, -0.5, 0.5, 0.5, 0.5, -1.0, 2.0, 0.0;
  l[1].bias << 0.0, -0.1, 0.3;
  l[2].weight << 0.4, -0.6, 0.2;
  l[2].bias << 0.05;
  return net;
}

}  // namespace

TEST(DenseNet, ZeroParametersGiveZeroOutput) {
  DenseNet actor({3, 4, 4, 2}, Activation::relu, Activation::tanh);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(3, 0.7);
  EXPECT_EQ(actor.evaluate(x), Eigen::VectorXd::Zero(2));
  DenseNet critic({3, 4, 4, 1}, Activation::relu, Activation::identity);
  EXPECT_EQ(critic.evaluate(x)(0), 0.0);
}

TEST(DenseNet, ActorOutputStaysInUnitInterval) {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    DenseNet net = random_net(rng, Activation::tanh);
    for (auto& layer : net.layers()) layer.weight *= 20.0;
    const auto x = oracle::random_matrix(8, net.input_size(), rng, 10.0);
    const Eigen::MatrixXd y = net.forward(oracle::to_batch(x));
    EXPECT_LE(y.cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(DenseNet, FixedActorMatchesHandTrace) {
  DenseNet net = fixed_net(Activation::tanh);
  // x = (1, 2): layer 1 pre = (0.1, 0, 0.55) -> relu (0.1, 0, 0.55)
  // layer 2 pre = (0.1 - 0.275, -0.1 + 0.05 + 0.275, 0.3 - 0.1) -> relu (0, 0.225, 0.2)
  // head pre = -0.135 + 0.04 + 0.05 = -0.045
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  EXPECT_NEAR(net.evaluate(x)(0), std::tanh(-0.045), 1e-15);
}

TEST(DenseNet, FixedCriticMatchesHandTrace) {
  DenseNet net = fixed_net(Activation::identity);
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  EXPECT_NEAR(net.evaluate(x)(0), -0.045, 1e-15);
  x << -2.0, 1.0;
  // layer 1 pre = (-1.15, 2.5, -0.45) -> (0, 2.5, 0); layer 2 pre = (0, 1.15, 5.3)
  // head = -0.69 + 1.06 + 0.05 = 0.42
  EXPECT_NEAR(net.evaluate(x)(0), 0.42, 1e-14);
}

TEST(DenseNet, ForwardAgreesWithScalarLoops) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    DenseNet net = random_net(rng, trial % 2 ? Activation::tanh : Activation::identity);
    const auto x = oracle::random_matrix(5, net.input_size(), rng);
    const Eigen::MatrixXd y = net.forward(oracle::to_batch(x));
    for (std::size_t s = 0; s < x.size(); ++s) {
      const auto expected = oracle::loop_forward(net, x[s]).output;
      for (std::size_t o = 0; o < expected.size(); ++o) {
        EXPECT_NEAR(y(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(s)), expected[o], 1e-12);
      }
    }
  }
}

TEST(DenseNet, BackwardBeforeForwardIsAnError) {
  DenseNet net({2, 2, 2, 1}, Activation::relu, Activation::identity);
  EXPECT_THROW(net.backward(Eigen::MatrixXd::Ones(1, 1)), std::logic_error);
}

TEST(DenseNet, ZeroUpstreamGivesZeroGradients) {
  Rng rng(3);
  DenseNet net = random_net(rng, Activation::tanh);
  const auto x = oracle::random_matrix(4, net.input_size(), rng);
  const Eigen::MatrixXd y = net.forward(oracle::to_batch(x));
  const auto g = net.backward(Eigen::MatrixXd::Zero(y.rows(), y.cols()));
  for (const auto& layer : g.layers) {
    EXPECT_EQ(layer.weight.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(layer.bias.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(DenseNet, LinearNetMatchesClosedFormLeastSquares) {
  // With identity activations the net is y = W3 W2 W1 x + c; for the loss
  // 0.5 * sum (y - t)^2 the gradient wrt W1 is (W3 W2)^T (y - t) x^T.
  Rng rng(4);
  DenseNet net({3, 4, 5, 2}, Activation::identity, Activation::identity);
  net.initialize(rng);
  const auto x = oracle::random_matrix(6, 3, rng);
  const auto t = oracle::random_matrix(6, 2, rng);
  const Eigen::MatrixXd X = oracle::to_batch(x);
  const Eigen::MatrixXd T = oracle::to_batch(t);
  const Eigen::MatrixXd Y = net.forward(X);
  const Eigen::MatrixXd R = Y - T;
  const auto g = net.backward(R);
  const auto& l = net.layers();
  const Eigen::MatrixXd A = l[2].weight * l[1].weight;
  const Eigen::MatrixXd expected_w1 = A.transpose() * R * X.transpose();
  EXPECT_LT((g.layers[0].weight - expected_w1).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd h2 = l[1].weight * (l[0].weight * X + l[0].bias.replicate(1, 6)) +
                             l[1].bias.replicate(1, 6);
  EXPECT_LT((g.layers[2].weight - R * h2.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((g.layers[2].bias - R.rowwise().sum()).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXd expected_input = (A * l[0].weight).transpose() * R;
  EXPECT_LT((g.input - expected_input).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseNet, GradientsMatchFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Activation head = trial % 2 ? Activation::tanh : Activation::identity;
    DenseNet net = random_net(rng, head);
    const auto x = oracle::random_matrix(3, net.input_size(), rng);
    const auto up = oracle::random_matrix(3, net.output_size(), rng);
    net.forward(oracle::to_batch(x));
    const auto analytic = net.backward(oracle::to_batch(up));
    const auto check = oracle::finite_difference_check(net, x, up, analytic);
    EXPECT_LT(check.max_relative_error, 1e-4) << "trial " << trial;
    EXPECT_GT(check.checked, 0u);
  }
}

TEST(SoftUpdate, Interpolates) {
  DenseNet target({1, 1, 1, 1}, Activation::relu, Activation::identity);
  DenseNet online = target;
  for (auto& layer : online.layers()) {
    layer.weight.setConstant(2.0);
    layer.bias.setConstant(2.0);
  }
  DenseNet half = target;
  soft_update(half, online, 0.5);
  for (const auto& layer : half.layers()) EXPECT_EQ(layer.weight(0, 0), 1.0);

  DenseNet same = target;
  soft_update(same, online, 0.0);
  for (const auto& layer : same.layers()) EXPECT_EQ(layer.weight(0, 0), 0.0);

  DenseNet copy = target;
  soft_update(copy, online, 1.0);
  for (const auto& layer : copy.layers()) EXPECT_EQ(layer.bias(0), 2.0);

  DenseNet other({2, 1, 1, 1}, Activation::relu, Activation::identity);
  EXPECT_THROW(soft_update(other, online, 0.5), std::invalid_argument);
}

TEST(SoftUpdate, RepeatedUpdatesStayBetweenEndpoints) {
  Rng rng(6);
  DenseNet target({3, 4, 4, 1}, Activation::relu, Activation::identity);
  target.initialize(rng);
  DenseNet online = target;
  for (auto& layer : online.layers()) {
    layer.weight.array() += 1.0;
    layer.bias.array() += 1.0;
  }
  const DenseNet start = target;
  for (int k = 0; k < 20; ++k) soft_update(target, online, 0.1);
  for (std::size_t l = 0; l < 3; ++l) {
    const Eigen::ArrayXXd t = target.layers()[l].weight.array();
    EXPECT_TRUE((t > start.layers()[l].weight.array()).all());
    EXPECT_TRUE((t < online.layers()[l].weight.array()).all());
  }
}

TEST(Sgd, StepsAgainstTheGradient) {
  DenseNet net({1, 1, 1, 1}, Activation::identity, Activation::identity);
  NetGradients g;
  for (const auto& layer : net.layers()) {
    g.layers.push_back({Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1)});
    (void)layer;
  }
  SgdOptimizer plain(0.1);
  plain.step(net, g);
  EXPECT_DOUBLE_EQ(net.layers()[0].weight(0, 0), -0.1);

  DenseNet m({1, 1, 1, 1}, Activation::identity, Activation::identity);
  SgdOptimizer heavy(0.1, 0.5);
  heavy.step(m, g);
  heavy.step(m, g);
  EXPECT_DOUBLE_EQ(m.layers()[0].weight(0, 0), -0.1 - 0.15);
}
