#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "dqtsc/metrics.hpp"
#include "dqtsc/nn/parameters.hpp"

namespace dqtsc {

// Shared by both agents, so STSCA and DQTSCA always see the same discount,
// epsilon schedule, optimizer and epoch count.
struct TrainConfig {
  double gamma = 0.95;
  std::size_t batch_size = 16;
  int epochs = 1600;
  int exp_refill = 200;
  int sim_len = 4500;  // simulated seconds per epoch
  int workers = 1;
  std::uint64_t seed = 1;
  std::size_t max_size = 500000;
  std::size_t min_size = 50000;
  nn::RmspropConfig rmsprop;
  bool record_wall_time = true;  // false writes 0 so runs compare byte-for-byte

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

using EpochCallback = std::function<void(const EpochRow&)>;

// Seed streams; the demand seed of (epoch, worker 0) is shared by both agents.
inline constexpr std::uint64_t kDemandStream = 1;
inline constexpr std::uint64_t kPolicyStream = 2;
inline constexpr std::uint64_t kRefillStream = 3;
inline constexpr std::uint64_t kLearnerStream = 4;
inline constexpr std::uint64_t kInitStream = 5;
inline constexpr std::uint64_t kEvalStream = 6;

}  // namespace dqtsc
