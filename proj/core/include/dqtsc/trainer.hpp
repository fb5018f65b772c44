#pragma once

#include <cstddef>
#include <vector>

#include "dqtsc/environment.hpp"
#include "dqtsc/episode.hpp"
#include "dqtsc/train_config.hpp"

namespace dqtsc {

struct DqnTrainResult {
  DqnNet net;
  std::vector<EpochRow> rows;
  std::size_t train_steps = 0;
  std::size_t peak_memory = 0;  // largest replay memory length observed
};

// Parallel experience-replay training. Each epoch copies the learner weights
// to `workers` simulation threads running epsilon-greedy episodes; the
// learner appends every full chunk of batch_size experiences to the memory
// and then performs one replay_train_step. Every exp_refill epochs the memory
// is cleared and refilled to min_size before training continues.
// With workers = 1 the run is fully deterministic.
DqnTrainResult train_dqtsca(const TrainConfig& cfg, const EnvConfig& env,
                            const EpochCallback& on_epoch = {});

}  // namespace dqtsc
