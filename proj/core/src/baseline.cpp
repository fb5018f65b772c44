#include "dqtsc/baseline.hpp"

#include <chrono>

#include "dqtsc/random.hpp"

namespace dqtsc {

StscaState encode_stsca(const SimState& state, ActionId last_action, const SimParams& params) {
  StscaState s;
  for (Approach a : kApproaches) {
    s.queues[static_cast<std::size_t>(a)] = queue_length(state, params, a);
  }
  s.phase_onehot[static_cast<std::size_t>(last_action.index())] = 1;
  return s;
}

std::vector<float> stsca_features(const StscaState& s) {
  std::vector<float> x;
  x.reserve(nn::kStscaInputs);
  for (int q : s.queues) x.push_back(static_cast<float>(q / kStscaQueueCap));
  for (auto bit : s.phase_onehot) x.push_back(static_cast<float>(bit));
  return x;
}

StscaTrainResult train_stsca(const TrainConfig& cfg, const EnvConfig& env_cfg,
                             const EpochCallback& on_epoch) {
  cfg.validate();
  env_cfg.sim.validate();
  StscaTrainResult result{nn::build_stsca_net<float>(derive_seed(cfg.seed, kInitStream)), {}};

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    const double eps = epsilon(epoch, cfg.epochs);
    const auto e = static_cast<std::uint64_t>(epoch);
    TrafficEnv env(env_cfg, cfg.sim_len, derive_seed(cfg.seed, kDemandStream, e, 0));
    Rng rng(derive_seed(cfg.seed, kPolicyStream, e, 0));

    auto state = observe(env, result.net);
    while (!env.done()) {
      int action;
      if (rng.bernoulli(eps)) {
        action = static_cast<int>(rng.below(kNumActions));
      } else {
        action = argmax(result.net.forward(state));
      }
      const double r = env.execute(ActionId(action));
      auto next = observe(env, result.net);
      stsca_online_step(result.net, state, action, r, next, cfg.gamma, cfg.rmsprop);
      state = std::move(next);
    }

    EpochRow row;
    row.epoch = epoch;
    row.epsilon = eps;
    row.metrics = aggregate(env.trace());
    if (cfg.record_wall_time) {
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    result.rows.push_back(row);
    if (on_epoch) on_epoch(row);
  }
  return result;
}

}  // namespace dqtsc
