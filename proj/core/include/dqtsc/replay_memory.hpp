#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dqtsc/random.hpp"

namespace dqtsc {

// (s_t, a_t, r_{t+1}, s_{t+1}). States are shared so that consecutive
// experiences of one episode store each observation once.
template <typename State>
struct Experience {
  std::shared_ptr<const State> state;
  int action = 0;
  double reward = 0.0;
  std::shared_ptr<const State> next_state;
};

// Bounded FIFO of experiences; the oldest is evicted once max_size is reached.
template <typename State>
class ReplayMemory {
 public:
  ReplayMemory(std::size_t max_size, std::size_t min_size)
      : max_size_(max_size), min_size_(min_size) {
    if (max_size == 0 || min_size > max_size) {
      throw std::invalid_argument("ReplayMemory: need 0 < min_size <= max_size");
    }
  }

  void push(Experience<State> e) {
    if (buffer_.size() < max_size_) {
      buffer_.push_back(std::move(e));
      return;
    }
    buffer_[head_] = std::move(e);
    head_ = (head_ + 1) % max_size_;
  }

  // Index 0 is the oldest retained experience.
  const Experience<State>& operator[](std::size_t i) const {
    return buffer_[(head_ + i) % buffer_.size()];
  }

  // Uniform draw with replacement. Only valid once ready().
  const Experience<State>& sample(Rng& rng) const {
    if (!ready()) throw std::logic_error("ReplayMemory: sampled below min_size");
    return (*this)[static_cast<std::size_t>(rng.below(buffer_.size()))];
  }

  void clear() {
    buffer_.clear();
    head_ = 0;
  }

  std::size_t size() const noexcept { return buffer_.size(); }
  bool ready() const noexcept { return !buffer_.empty() && buffer_.size() >= min_size_; }
  std::size_t max_size() const noexcept { return max_size_; }
  std::size_t min_size() const noexcept { return min_size_; }

 private:
  std::size_t max_size_;
  std::size_t min_size_;
  std::vector<Experience<State>> buffer_;
  std::size_t head_ = 0;
};

}  // namespace dqtsc
