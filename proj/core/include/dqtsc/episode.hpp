#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dqtsc/baseline.hpp"
#include "dqtsc/environment.hpp"
#include "dqtsc/nn/conv_qnet.hpp"
#include "dqtsc/q_learning.hpp"
#include "dqtsc/random.hpp"
#include "dqtsc/replay_memory.hpp"

namespace dqtsc {

using DqnNet = nn::ConvQNet<float>;

inline Dtse observe(const TrafficEnv& env, const DqnNet&) { return env.observe_dtse(); }

template <typename Input>
using ChunkSink = std::function<void(std::vector<Experience<Input>>&&)>;

template <typename Input>
struct EpisodeOutput {
  std::vector<Experience<Input>> buffer;  // empty when a sink consumed it
  EpisodeTrace trace;
  EpochMetrics metrics;
};

// Runs one sim_len-second episode with an epsilon-greedy policy over a fixed
// network snapshot. With a sink, experiences are handed over in chunks of
// chunk_size (plus a final partial chunk); otherwise they are returned.
template <QNetwork Net>
EpisodeOutput<typename Net::Input> run_episode(const Net& net, double eps,
                                               std::uint64_t demand_seed,
                                               std::uint64_t policy_seed, const EnvConfig& env_cfg,
                                               int sim_len, std::size_t chunk_size = 16,
                                               const ChunkSink<typename Net::Input>& sink = {}) {
  using Input = typename Net::Input;
  EpisodeOutput<Input> out;
  TrafficEnv env(env_cfg, sim_len, demand_seed);
  Rng rng(policy_seed);

  auto state = std::make_shared<const Input>(observe(env, net));
  std::vector<Experience<Input>> chunk;
  while (!env.done()) {
    int action;
    if (rng.bernoulli(eps)) {
      action = static_cast<int>(rng.below(kNumActions));
    } else {
      action = argmax(net.forward(*state));
    }
    const double r = env.execute(ActionId(action));
    auto next = std::make_shared<const Input>(observe(env, net));
    chunk.push_back({state, action, r, next});
    state = std::move(next);
    if (sink && chunk.size() == chunk_size) {
      sink(std::move(chunk));
      chunk.clear();
    }
  }
  if (sink) {
    if (!chunk.empty()) sink(std::move(chunk));
  } else {
    out.buffer = std::move(chunk);
  }
  out.trace = env.trace();
  out.metrics = aggregate(out.trace);
  return out;
}

}  // namespace dqtsc
