#include <benchmark/benchmark.h>

#include "dqtsc/environment.hpp"
#include "dqtsc/nn/conv_qnet.hpp"
#include "dqtsc/nn/mlp.hpp"
#include "reference_net.hpp"

using namespace dqtsc;

static void BM_ConvForward(benchmark::State& st) {
  const nn::ConvQNet<float> net(1);
  const Dtse x = testing_support::random_dtse(1);
  for (auto _ : st) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_ConvForward);

static void BM_ConvBackward(benchmark::State& st) {
  const nn::ConvQNet<float> net(1);
  const Dtse x = testing_support::random_dtse(1);
  std::vector<double> grad(net.params().size());
  for (auto _ : st) {
    benchmark::DoNotOptimize(net.accumulate_gradient(x, 2, 1.0, grad, 1.0));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ConvBackward);

static void BM_RmspropStep(benchmark::State& st) {
  nn::ConvQNet<float> net(1);
  const std::vector<double> grad(net.params().size(), 1e-3);
  for (auto _ : st) {
    nn::rmsprop_step(net.params(), grad, nn::RmspropConfig{});
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_RmspropStep);

static void BM_StscaForward(benchmark::State& st) {
  const auto net = nn::build_stsca_net<float>(1);
  const std::vector<float> x{0.1f, 0.2f, 0.0f, 0.4f, 1, 0, 0, 0};
  for (auto _ : st) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_StscaForward);

// One simulated hour of a congested network, stepped one action at a time.
static void BM_SimHour(benchmark::State& st) {
  for (auto _ : st) {
    TrafficEnv env(EnvConfig{}, 3600, 7);
    int a = 0;
    while (!env.done()) env.execute(ActionId((a++ / 5) % kNumActions));
    benchmark::DoNotOptimize(env.trace().throughput);
  }
}
BENCHMARK(BM_SimHour)->Unit(benchmark::kMillisecond);

static void BM_EncodeDtse(benchmark::State& st) {
  TrafficEnv env(EnvConfig{}, 600, 7);
  while (!env.done()) env.execute(ActionId(1));
  for (auto _ : st) benchmark::DoNotOptimize(env.observe_dtse());
}
BENCHMARK(BM_EncodeDtse);

BENCHMARK_MAIN();
