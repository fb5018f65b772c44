#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dqtsc/environment.hpp"
#include "dqtsc/nn/mlp.hpp"
#include "dqtsc/q_learning.hpp"
#include "dqtsc/train_config.hpp"

namespace dqtsc {

// Shallow agent state: queued vehicles per approach (N, S, E, W) and the
// last selected action.
struct StscaState {
  std::array<int, 4> queues{};
  std::array<std::uint8_t, kNumActions> phase_onehot{};
  friend bool operator==(const StscaState&, const StscaState&) = default;
};

inline constexpr double kStscaQueueCap = 50.0;

StscaState encode_stsca(const SimState& state, ActionId last_action, const SimParams& params);

// Network input: counts divided by kStscaQueueCap, then the phase bits.
std::vector<float> stsca_features(const StscaState& s);

using StscaNet = nn::Mlp<float>;

inline std::vector<float> observe(const TrafficEnv& env, const StscaNet&) {
  return stsca_features(encode_stsca(env.state(), env.last_action(), env.params()));
}

// Bootstrapped target from s_next with the current weights, then a single
// backward pass and RMSprop step.
template <QNetwork Net>
void stsca_online_step(Net& net, const typename Net::Input& s, int action, double r,
                       const typename Net::Input& s_next, double gamma,
                       const nn::RmspropConfig& rmsprop) {
  online_q_step(net, s, action, r, s_next, gamma, rmsprop);
}

struct StscaTrainResult {
  StscaNet net;
  std::vector<EpochRow> rows;
};

// One single-threaded episode per epoch using worker 0's demand seed; trains
// after every transition and never keeps a replay memory.
StscaTrainResult train_stsca(const TrainConfig& cfg, const EnvConfig& env,
                             const EpochCallback& on_epoch = {});

}  // namespace dqtsc
