#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "dqtsc/nn/parameters.hpp"
#include "dqtsc/random.hpp"
#include "dqtsc/replay_memory.hpp"

namespace dqtsc {

// Anything trainable by Q-learning: maps an Input to one value per action and
// accumulates the gradient of 0.5 * (q[a] - target)^2.
template <typename N>
concept QNetwork = requires(const N& net, N& mut, const typename N::Input& x,
                            std::span<double> grad) {
  { net.forward(x) } -> std::same_as<std::vector<double>>;
  { net.accumulate_gradient(x, 0, 0.0, grad, 1.0) } -> std::convertible_to<double>;
  { mut.params().values() };
  { net.params().size() } -> std::convertible_to<std::size_t>;
};

// Linear decay 1 - n/N. n > N is clamped to 0 with a warning on stderr.
double epsilon(int epoch, int total_epochs);

// Lowest index among maximal entries.
int argmax(std::span<const double> q);

// Uniform random action with probability eps, otherwise argmax(q).
int select_action(std::span<const double> q, double eps, Rng& rng);

// Decrease in cumulative delay between two decision instants.
inline double reward(double delay_before, double delay_after) { return delay_before - delay_after; }

// r + gamma * max_a eta(s')
template <QNetwork Net>
double compute_target(const Experience<typename Net::Input>& e, const Net& net, double gamma) {
  const auto q_next = net.forward(*e.next_state);
  return e.reward + gamma * *std::max_element(q_next.begin(), q_next.end());
}

struct ReplayTrainConfig {
  std::size_t batch_size = 16;
  double gamma = 0.95;
  nn::RmspropConfig rmsprop;
};

// Samples batch_size experiences with replacement, builds every target with
// the current parameters, averages the gradients and applies one RMSprop
// step. Returns false (and does nothing) while the memory is below min_size.
template <QNetwork Net>
bool replay_train_step(const ReplayMemory<typename Net::Input>& memory, Net& net,
                       const ReplayTrainConfig& cfg, Rng& rng) {
  if (!memory.ready()) return false;
  std::vector<const Experience<typename Net::Input>*> batch;
  batch.reserve(cfg.batch_size);
  for (std::size_t i = 0; i < cfg.batch_size; ++i) batch.push_back(&memory.sample(rng));

  std::vector<double> targets;
  targets.reserve(batch.size());
  for (const auto* e : batch) targets.push_back(compute_target(*e, net, cfg.gamma));

  nn::Gradients grad(net.params().size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    net.accumulate_gradient(*batch[i]->state, batch[i]->action, targets[i], grad, scale);
  }
  nn::rmsprop_step(net.params(), grad, cfg.rmsprop);
  return true;
}

// One online Q-learning update on a single transition (no replay).
template <QNetwork Net>
void online_q_step(Net& net, const typename Net::Input& state, int action, double reward_value,
                   const typename Net::Input& next_state, double gamma,
                   const nn::RmspropConfig& rmsprop) {
  const auto q_next = net.forward(next_state);
  const double target = reward_value + gamma * *std::max_element(q_next.begin(), q_next.end());
  nn::Gradients grad(net.params().size(), 0.0);
  net.accumulate_gradient(state, action, target, grad, 1.0);
  nn::rmsprop_step(net.params(), grad, rmsprop);
}

}  // namespace dqtsc
