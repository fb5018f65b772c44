#include "dqtsc/trainer.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "dqtsc/errors.hpp"
#include "dqtsc/random.hpp"

namespace dqtsc {

void TrainConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma", "must lie in [0, 1]");
  if (batch_size == 0) throw ConfigError("batch_size", "must be positive");
  if (epochs <= 0) throw ConfigError("epochs", "must be positive");
  if (exp_refill <= 0) throw ConfigError("exp_refill", "must be positive");
  if (sim_len <= 0) throw ConfigError("sim_len", "must be positive");
  if (workers <= 0) throw ConfigError("workers", "must be positive");
  if (max_size == 0) throw ConfigError("max_size", "must be positive");
  if (min_size == 0 || min_size > max_size) {
    throw ConfigError("min_size", "must be positive and not exceed max_size");
  }
  if (!(rmsprop.learning_rate > 0.0)) throw ConfigError("learning_rate", "must be positive");
  if (!(rmsprop.decay >= 0.0 && rmsprop.decay < 1.0)) {
    throw ConfigError("rms_decay", "must lie in [0, 1)");
  }
  if (!(rmsprop.epsilon > 0.0)) throw ConfigError("rms_epsilon", "must be positive");
}

namespace {

using Chunk = std::vector<Experience<Dtse>>;

// Multi-producer queue of experience chunks; pop() returns nullopt once every
// producer has finished and the queue is drained.
class ChunkChannel {
 public:
  explicit ChunkChannel(int producers) : open_producers_(producers) {}

  void push(Chunk&& c) {
    {
      std::lock_guard lock(mu_);
      queue_.push_back(std::move(c));
    }
    cv_.notify_one();
  }

  void producer_done() {
    {
      std::lock_guard lock(mu_);
      --open_producers_;
    }
    cv_.notify_all();
  }

  std::optional<Chunk> pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return !queue_.empty() || open_producers_ == 0; });
    if (queue_.empty()) return std::nullopt;
    Chunk c = std::move(queue_.front());
    queue_.pop_front();
    return c;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Chunk> queue_;
  int open_producers_;
};

struct WorkerJob {
  std::uint64_t demand_seed;
  std::uint64_t policy_seed;
};

// Runs one episode per job on its own thread, streaming chunks into
// `consume` on the calling thread. Returns per-job metrics in job order.
template <typename Consume>
std::vector<EpochMetrics> run_workers(const DqnNet& snapshot, double eps,
                                      const std::vector<WorkerJob>& jobs, const EnvConfig& env,
                                      const TrainConfig& cfg, Consume&& consume) {
  ChunkChannel channel(static_cast<int>(jobs.size()));
  std::vector<EpochMetrics> metrics(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::vector<std::thread> threads;
  threads.reserve(jobs.size());
  for (std::size_t w = 0; w < jobs.size(); ++w) {
    threads.emplace_back([&, w] {
      try {
        auto out = run_episode(snapshot, eps, jobs[w].demand_seed, jobs[w].policy_seed, env,
                               cfg.sim_len, cfg.batch_size,
                               ChunkSink<Dtse>([&](Chunk&& c) { channel.push(std::move(c)); }));
        metrics[w] = out.metrics;
      } catch (...) {
        errors[w] = std::current_exception();
      }
      channel.producer_done();
    });
  }
  std::exception_ptr learner_error;
  while (auto chunk = channel.pop()) {
    if (learner_error) continue;
    try {
      consume(std::move(*chunk));
    } catch (...) {
      learner_error = std::current_exception();
    }
  }
  for (auto& t : threads) t.join();
  for (std::size_t w = 0; w < jobs.size(); ++w) {
    if (!errors[w]) continue;
    try {
      std::rethrow_exception(errors[w]);
    } catch (const std::exception& e) {
      throw std::runtime_error("worker " + std::to_string(w) + " crashed: " + e.what());
    }
  }
  if (learner_error) std::rethrow_exception(learner_error);
  return metrics;
}

}  // namespace

DqnTrainResult train_dqtsca(const TrainConfig& cfg, const EnvConfig& env,
                            const EpochCallback& on_epoch) {
  cfg.validate();
  env.sim.validate();

  DqnTrainResult result{DqnNet(derive_seed(cfg.seed, kInitStream)), {}, 0, 0};
  ReplayMemory<Dtse> memory(cfg.max_size, cfg.min_size);
  Rng learner_rng(derive_seed(cfg.seed, kLearnerStream));
  const ReplayTrainConfig replay{cfg.batch_size, cfg.gamma, cfg.rmsprop};
  std::uint64_t refill_round = 0;

  const auto workers = static_cast<std::size_t>(cfg.workers);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    const double eps = epsilon(epoch, cfg.epochs);
    const DqnNet snapshot = result.net;

    std::vector<WorkerJob> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back({derive_seed(cfg.seed, kDemandStream, static_cast<std::uint64_t>(epoch), w),
                      derive_seed(cfg.seed, kPolicyStream, static_cast<std::uint64_t>(epoch), w)});
    }
    const auto per_worker = run_workers(snapshot, eps, jobs, env, cfg, [&](Chunk&& chunk) {
      const bool full = chunk.size() == cfg.batch_size;
      for (auto& e : chunk) memory.push(std::move(e));
      result.peak_memory = std::max(result.peak_memory, memory.size());
      if (full && replay_train_step(memory, result.net, replay, learner_rng)) ++result.train_steps;
    });

    EpochRow row;
    row.epoch = epoch;
    row.epsilon = eps;
    row.metrics = average(per_worker);
    if (cfg.record_wall_time) {
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    result.rows.push_back(row);
    if (on_epoch) on_epoch(row);

    // No refill after the last epoch: nothing would train on it.
    if (epoch % cfg.exp_refill == 0 && epoch < cfg.epochs) {
      memory.clear();
      const DqnNet refill_snapshot = result.net;
      while (!memory.ready()) {
        std::vector<WorkerJob> refill_jobs;
        for (std::size_t w = 0; w < workers; ++w) {
          refill_jobs.push_back({derive_seed(cfg.seed, kRefillStream, refill_round, w),
                                 derive_seed(cfg.seed, kRefillStream, refill_round, w + workers)});
        }
        ++refill_round;
        run_workers(refill_snapshot, eps, refill_jobs, env, cfg, [&](Chunk&& chunk) {
          for (auto& e : chunk) memory.push(std::move(e));
          result.peak_memory = std::max(result.peak_memory, memory.size());
        });
      }
    }
  }
  return result;
}

}  // namespace dqtsc
