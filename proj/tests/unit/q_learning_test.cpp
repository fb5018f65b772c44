#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "chain_mdp.hpp"
#include "dqtsc/nn/mlp.hpp"
#include "dqtsc/q_learning.hpp"
#include "dqtsc/replay_memory.hpp"

using namespace dqtsc;
using dqtsc::nn::Activation;
using dqtsc::nn::LayerSpec;

namespace {

using Vec = std::vector<double>;
using Net = nn::Mlp<double>;

Experience<Vec> make_exp(Vec s, int a, double r, Vec s2) {
  return {std::make_shared<const Vec>(std::move(s)), a, r, std::make_shared<const Vec>(std::move(s2))};
}

Net tiny_net(std::uint64_t seed) {
  return Net({LayerSpec::dense(6, 3, Activation::Relu), LayerSpec::dense(4, 6, Activation::Identity)},
             seed);
}

}  // namespace

TEST(Epsilon, Schedule) {
  EXPECT_EQ(epsilon(0, 1600), 1.0);
  EXPECT_EQ(epsilon(800, 1600), 0.5);
  EXPECT_EQ(epsilon(1600, 1600), 0.0);
  for (int n = 1; n <= 200; ++n) EXPECT_LT(epsilon(n, 200), epsilon(n - 1, 200));
  EXPECT_EQ(epsilon(1700, 1600), 0.0);
  EXPECT_THROW(epsilon(-1, 10), std::invalid_argument);
}

TEST(SelectAction, GreedyAndTieBreak) {
  Rng rng(1);
  const Vec q1{1, 3, 2, 0};
  const Vec q2{5, 5, 0, 0};
  EXPECT_EQ(select_action(q1, 0.0, rng), 1);
  EXPECT_EQ(select_action(q2, 0.0, rng), 0);
}

TEST(SelectAction, UniformWhenExploring) {
  Rng rng(2);
  const Vec q{9, 0, 0, 0};
  std::array<int, 4> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(select_action(q, 1.0, rng))];
  const double expected = n / 4.0;
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (int c : counts) EXPECT_NEAR(c, expected, 3.0 * sigma);
}

TEST(Reward, SignConvention) {
  EXPECT_EQ(reward(100, 80), 20);
  EXPECT_EQ(reward(80, 100), -20);
  EXPECT_EQ(reward(50, 50), 0);
}

// Fixed-output stand-in network for target checks.
struct ConstNet {
  using Input = Vec;
  Vec q;
  std::vector<double> forward(const Vec&) const { return q; }
  double accumulate_gradient(const Vec&, int, double, std::span<double>, double) const { return 0; }
  nn::Parameters<double> p;
  nn::Parameters<double>& params() { return p; }
  const nn::Parameters<double>& params() const { return p; }
};

TEST(ComputeTarget, Examples) {
  const auto e = make_exp({0}, 0, 1.0, {0});
  EXPECT_DOUBLE_EQ(compute_target(e, ConstNet{{2, 1, 0, 0}, {}}, 0.95), 2.9);
  EXPECT_DOUBLE_EQ(compute_target(e, ConstNet{{2, 1, 0, 0}, {}}, 0.0), 1.0);
  const auto z = make_exp({0}, 0, 0.0, {0});
  EXPECT_DOUBLE_EQ(compute_target(z, ConstNet{{0, 0, 0, 0}, {}}, 0.95), 0.0);
}

TEST(ReplayMemoryTest, FifoEviction) {
  ReplayMemory<Vec> m(10, 1);
  for (int i = 0; i < 13; ++i) m.push(make_exp({double(i)}, 0, double(i), {0}));
  EXPECT_EQ(m.size(), 10u);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(m[i].reward, 3.0 + double(i));
}

TEST(ReplayMemoryTest, SizeNeverExceedsMax) {
  Rng rng(5);
  ReplayMemory<Vec> m(37, 5);
  for (int i = 0; i < 500; ++i) {
    m.push(make_exp({0}, 0, 0, {0}));
    EXPECT_LE(m.size(), 37u);
    if (rng.uniform() < 0.01) m.clear();
  }
}

TEST(ReplayMemoryTest, SamplingNeedsMinSize) {
  Rng rng(1);
  ReplayMemory<Vec> m(10, 3);
  EXPECT_THROW(ReplayMemory<Vec>(5, 6), std::invalid_argument);
  m.push(make_exp({0}, 0, 0, {0}));
  m.push(make_exp({0}, 0, 0, {0}));
  EXPECT_FALSE(m.ready());
  EXPECT_THROW(m.sample(rng), std::logic_error);
  m.push(make_exp({0}, 0, 0, {0}));
  EXPECT_TRUE(m.ready());
  EXPECT_NO_THROW(m.sample(rng));
  m.clear();
  EXPECT_FALSE(m.ready());
}

TEST(ReplayTrainStep, NotReadyIsNoOp) {
  Net net = tiny_net(1);
  const auto before = net.params();
  ReplayMemory<Vec> m(10, 5);
  m.push(make_exp({1, 0, 0}, 1, 1.0, {0, 1, 0}));
  Rng rng(1);
  EXPECT_FALSE(replay_train_step(m, net, ReplayTrainConfig{}, rng));
  EXPECT_EQ(net.params(), before);
}

TEST(ReplayTrainStep, ZeroResidualLeavesParams) {
  // gamma = 0 and reward equal to the current q value: every target is met.
  Net net = tiny_net(2);
  const Vec s{0.5, 0.2, 0.1};
  const double q = net.forward(s)[2];
  ReplayMemory<Vec> m(4, 1);
  m.push(make_exp(s, 2, q, s));
  Rng rng(1);
  ReplayTrainConfig cfg;
  cfg.gamma = 0.0;
  const auto before = net.params();
  EXPECT_TRUE(replay_train_step(m, net, cfg, rng));
  EXPECT_TRUE(std::equal(before.values().begin(), before.values().end(),
                         net.params().values().begin()));
}

TEST(ReplayTrainStep, DeterministicGivenSeed) {
  ReplayMemory<Vec> m(100, 10);
  Rng fill(3);
  for (int i = 0; i < 40; ++i) {
    m.push(make_exp({fill.uniform(), fill.uniform(), fill.uniform()}, static_cast<int>(fill.below(4)),
                    fill.uniform(), {fill.uniform(), fill.uniform(), fill.uniform()}));
  }
  Net a = tiny_net(4);
  Net b = tiny_net(4);
  Rng ra(9);
  Rng rb(9);
  for (int i = 0; i < 5; ++i) {
    replay_train_step(m, a, ReplayTrainConfig{}, ra);
    replay_train_step(m, b, ReplayTrainConfig{}, rb);
  }
  EXPECT_EQ(a.params(), b.params());
  EXPECT_NE(a.params(), tiny_net(4).params());
}

TEST(ReplayTrainStep, BatchGradientIsMean) {
  // One experience repeated: the mean over the batch equals a single sample,
  // so one step matches an online step with the same target.
  Net batch = tiny_net(6);
  Net single = tiny_net(6);
  const Vec s{0.3, 0.9, 0.0};
  const Vec s2{0.1, 0.1, 0.8};
  ReplayMemory<Vec> m(1, 1);
  m.push(make_exp(s, 3, 2.0, s2));
  Rng rng(1);
  replay_train_step(m, batch, ReplayTrainConfig{}, rng);
  online_q_step(single, s, 3, 2.0, s2, 0.95, nn::RmspropConfig{});
  for (std::size_t i = 0; i < batch.params().size(); ++i) {
    EXPECT_NEAR(batch.params().values()[i], single.params().values()[i], 1e-12);
  }
}

TEST(ChainMdp, ValueIterationOracle) {
  const auto q = chain::value_iteration(0.95);
  EXPECT_NEAR(q[4][1], 20.0, 1e-9);
  EXPECT_NEAR(q[0][1], std::pow(0.95, 4) * 20.0, 1e-9);
  for (int s = 0; s < chain::kStates; ++s) EXPECT_GT(q[s][1], q[s][0]);
}

TEST(ChainMdp, ReplayPipelineRecoversOptimalPolicy) {
  const auto r = chain::run_replay(0.95, 20000, 1);
  EXPECT_TRUE(r.policy_ok);
  EXPECT_LT(r.worst_rel_err, 0.05);
}

TEST(ChainMdp, OnlineShallowAgentRecoversOptimalPolicy) {
  const auto r = chain::run_online(0.95, 50000, 1);
  EXPECT_TRUE(r.policy_ok);
  EXPECT_LT(r.worst_rel_err, 0.05);
}
