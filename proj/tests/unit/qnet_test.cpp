#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "pirl/error.hpp"
#include "pirl/qnet/checkpoint.hpp"
#include "pirl/qnet/dqn.hpp"
#include "pirl/qnet/hyper_params.hpp"
#include "pirl/qnet/replay_buffer.hpp"

using namespace pirl;
using namespace pirl::qnet;

TEST(NetInit, SameSeedSameParameters) {
  Rng a(17), b(17);
  EXPECT_EQ(QNetwork::create({4, 64, 64, 2}, a), QNetwork::create({4, 64, 64, 2}, b));
}

TEST(NetInit, ZeroBiasesAndGlorotBound) {
  Rng rng(1);
  const auto net = QNetwork::create({4, 64, 64, 2}, rng);
  ASSERT_EQ(net.layer_sizes(), (std::vector<std::size_t>{4, 64, 64, 2}));
  for (const auto& l : net.layers()) {
    EXPECT_TRUE(l.bias.isZero(0.0));
    const double bound = std::sqrt(6.0 / static_cast<double>(l.weights.rows() + l.weights.cols()));
    EXPECT_LE(l.weights.cwiseAbs().maxCoeff(), bound);
    EXPECT_GT(l.weights.cwiseAbs().maxCoeff(), 0.5 * bound);
  }
  EXPECT_THROW(QNetwork::create({4}, rng), UsageError);
  EXPECT_THROW(QNetwork::create({4, 0, 2}, rng), UsageError);
}

TEST(Forward, ZeroParametersGiveZeroOutputs) {
  Rng rng(2);
  auto net = QNetwork::create({4, 8, 3}, rng);
  for (auto& l : net.layers()) {
    l.weights.setZero();
    l.bias.setZero();
  }
  const std::vector<double> x{0.3, -1.0, 2.0, 5.0};
  EXPECT_EQ(net.forward(x), (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(Forward, SingleLayerIsAffine) {
  DenseLayer l{Eigen::MatrixXd::Constant(1, 1, 2.5), Eigen::VectorXd::Constant(1, -0.75)};
  const auto net = QNetwork::from_layers({l});
  const std::vector<double> x{3.0};
  EXPECT_EQ(net.forward(x)[0], 2.5 * 3.0 - 0.75);
}

TEST(Forward, MatchesNaiveMatrixArithmetic) {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto net = check::random_small_net(rng);
    if (trial % 2) net = QNetwork::create({12, 64, 64, 4}, rng);
    std::vector<double> x(net.input_size());
    for (double& v : x) v = rng.uniform(-3, 3);
    const auto got = net.forward(x);
    const auto want = check::naive_forward(net, x);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
  }
}

TEST(Forward, DimensionMismatchIsUsageError) {
  Rng rng(4);
  const auto net = QNetwork::create({4, 8, 2}, rng);
  const std::vector<double> x{1.0, 2.0};
  EXPECT_THROW(net.forward(x), UsageError);
}

TEST(TrainBatch, AnalyticGradientMatchesFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = check::random_small_net(rng);
    const auto target = check::random_small_net(rng);
    const auto batch = check::random_batch(rng, 16, 4, 2);
    const auto check = check::finite_difference_check(net, target, batch, 0.9);
    EXPECT_EQ(check.parameters, 4u * 8 + 8 + 8 * 2 + 2);
    EXPECT_LT(check.max_relative_error, 1e-4) << "trial " << trial;
  }
}

TEST(TrainBatch, ReturnsPreUpdateLoss) {
  Rng rng(6);
  auto net = check::random_small_net(rng);
  const auto target = check::random_small_net(rng);
  const auto batch = check::random_batch(rng, 8, 4, 2);
  const double expected = check::naive_td_loss(net, target, batch, 0.99);
  HyperParams hp;
  EXPECT_NEAR(train_batch(net, target, batch, hp), expected, 1e-12);
  EXPECT_LT(check::naive_td_loss(net, target, batch, 0.99), expected);
}

TEST(TrainBatch, TerminalTargetIsAFixedPoint) {
  Rng rng(7);
  auto net = QNetwork::create({4, 16, 2}, rng);
  const auto target = net;
  const Transition t{{0.1, -0.2, 0.3, 0.05}, 1, 2.5, {0, 0, 0, 0}, true};
  HyperParams hp;
  hp.learning_rate = 0.01;
  const std::vector<Transition> batch{t};
  for (int i = 0; i < 5000; ++i) train_batch(net, target, batch, hp);
  EXPECT_NEAR(net.forward(t.observation)[1], 2.5, 1e-3);
}

TEST(TrainBatch, ZeroDiscountTargetsAreRewards) {
  Rng rng(8);
  const auto net = check::random_small_net(rng);
  const auto target = check::random_small_net(rng);
  auto batch = check::random_batch(rng, 10, 4, 2);
  for (auto& t : batch) t.terminal = false;
  double expected = 0.0;
  for (const auto& t : batch) {
    const double err = net.forward(t.observation)[t.action] - t.reward;
    expected += err * err;
  }
  expected /= static_cast<double>(batch.size());
  EXPECT_DOUBLE_EQ(td_loss_gradient(net, target, batch, 0.0).loss, expected);
}

TEST(TrainBatch, OnlyTakenActionOutputReceivesGradient) {
  Rng rng(9);
  const auto net = check::random_small_net(rng);
  auto batch = check::random_batch(rng, 4, 4, 2);
  for (auto& t : batch) t.action = 0;
  const auto g = td_loss_gradient(net, net, batch, 0.9);
  EXPECT_TRUE(g.grads.back().weights.row(1).isZero(0.0));
  EXPECT_EQ(g.grads.back().bias(1), 0.0);
  EXPECT_THROW(td_loss_gradient(net, net, std::span<const Transition>{}, 0.9), UsageError);
}

TEST(EpsilonGreedy, GreedyPicksArgmaxWithLowestIndexTies) {
  Rng rng(10);
  EXPECT_EQ(epsilon_greedy(std::vector<double>{0.1, 0.9}, 0.0, rng), 1u);
  EXPECT_EQ(epsilon_greedy(std::vector<double>{0.5, 0.5}, 0.0, rng), 0u);
  EXPECT_EQ(epsilon_greedy(std::vector<double>{-1.0, 3.0, 3.0}, 0.0, rng), 1u);
}

TEST(EpsilonGreedy, FullExplorationIsUniform) {
  Rng rng(11);
  const std::vector<double> q{10.0, -10.0};
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += static_cast<int>(epsilon_greedy(q, 1.0, rng));
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 0.01);
}

TEST(EpsilonSchedule, ExactDecayWithFloor) {
  HyperParams hp;
  for (int e = 0; e <= 2000; ++e)
    EXPECT_EQ(epsilon_at(hp, e), std::max(0.01, 1.0 * std::pow(0.995, e)));
  EXPECT_EQ(epsilon_at(hp, 0), 1.0);
  EXPECT_EQ(epsilon_at(hp, 5000), 0.01);
}

TEST(ReplayBuffer, EvictsOldestFirst) {
  ReplayBuffer buf(3);
  for (int i = 0; i < 4; ++i) buf.push({{double(i)}, 0, double(i), {0.0}, false});
  EXPECT_EQ(buf.size(), 3u);
  EXPECT_EQ(buf.at(0).reward, 1.0);
  EXPECT_EQ(buf.at(2).reward, 3.0);
  for (std::size_t i = 0; i < buf.size(); ++i) EXPECT_NE(buf.at(i).reward, 0.0);
}

TEST(ReplayBuffer, SampleOfIdenticalItems) {
  ReplayBuffer buf(10);
  for (int i = 0; i < 5; ++i) buf.push({{1.0, 2.0}, 1, 0.5, {3.0, 4.0}, true});
  Rng rng(12);
  for (const auto& t : buf.sample(5, rng)) {
    EXPECT_EQ(t.observation, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(t.reward, 0.5);
  }
}

TEST(ReplayBuffer, SamplingIsUniform) {
  ReplayBuffer buf(10);
  for (int i = 0; i < 10; ++i) buf.push({{0.0}, 0, double(i), {0.0}, false});
  Rng rng(13);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(buf.sample(1, rng)[0].reward)];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.1, 0.01);
}

TEST(ReplayBuffer, InsufficientSizeIsUsageError) {
  ReplayBuffer buf(10);
  buf.push({{0.0}, 0, 0.0, {0.0}, false});
  Rng rng(14);
  EXPECT_THROW(buf.sample(2, rng), UsageError);
}

TEST(SyncTarget, CopiesAndDecouples) {
  Rng rng(15);
  auto net = QNetwork::create({4, 8, 2}, rng);
  auto target = QNetwork::create({4, 8, 2}, rng);
  sync_target(net, target);
  const std::vector<double> x{0.2, 0.1, -0.3, 0.4};
  EXPECT_EQ(net.forward(x), target.forward(x));

  const auto frozen = target.forward(x);
  const auto batch = check::random_batch(rng, 8, 4, 2);
  HyperParams hp;
  for (int i = 0; i < 10; ++i) train_batch(net, target, batch, hp);
  EXPECT_EQ(target.forward(x), frozen);
  EXPECT_NE(net.forward(x), frozen);

  sync_target(net, target);
  const QNetwork once = target;
  sync_target(net, target);
  EXPECT_EQ(target, once);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  Rng rng(16);
  const auto net = QNetwork::create({4, 64, 64, 2}, rng);
  const auto path = std::filesystem::temp_directory_path() / "pirl_qnet_roundtrip.json";
  save_network(net, path);
  const auto loaded = load_network(path);
  EXPECT_EQ(loaded, net);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x(4);
    for (double& v : x) v = rng.uniform(-2, 2);
    EXPECT_EQ(loaded.forward(x), net.forward(x));
  }
  std::filesystem::remove(path);
  EXPECT_THROW(network_from_json("{\"format\":\"other\"}"), ValidationError);
  EXPECT_THROW(load_network("/nonexistent/dir/net.json"), IoError);
}

TEST(HyperParams, DefaultsValidateAndRangesAreChecked) {
  HyperParams hp;
  EXPECT_NO_THROW(hp.validate());
  hp.gamma = 0.0;
  try {
    hp.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "hyperparams.gamma");
  }
}
