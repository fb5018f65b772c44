#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dqtsc {

// Raw observations collected while one episode runs.
struct EpisodeTrace {
  std::uint64_t throughput = 0;       // vehicles that crossed the stop line
  std::vector<int> queue_samples;     // total queue after every simulated second
  std::vector<double> delay_samples;  // cumulative delay at each decision instant
  std::vector<double> travel_times;   // exit - entry of completed trips
  std::vector<double> rewards;        // one per executed action

  void append(const EpisodeTrace& other);
};

struct EpochMetrics {
  double throughput = 0.0;
  double avg_queue = 0.0;
  double avg_travel_time = 0.0;
  double avg_cum_delay = 0.0;
  double reward_mean = 0.0;
  double reward_std = 0.0;  // sample standard deviation
  double total_reward = 0.0;
};

EpochMetrics aggregate(const EpisodeTrace& trace);

// Field-wise mean; used to merge the episodes of parallel workers.
EpochMetrics average(std::span<const EpochMetrics> items);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(std::span<const double> xs);

struct MetricsSummary {
  MeanStd throughput;
  MeanStd avg_queue;
  MeanStd avg_travel_time;
  MeanStd avg_cum_delay;
  MeanStd total_reward;
};

// Throws std::invalid_argument on an empty list.
MetricsSummary summarize(std::span<const EpochMetrics> epochs);

struct EpochRow {
  int epoch = 0;
  double epsilon = 0.0;
  EpochMetrics metrics;
  double wall_seconds = 0.0;
};

// Final-epoch window for comparisons: 100 epochs, or the last tenth of a
// shorter run (at least one).
std::size_t comparison_window(std::size_t epochs);

// Summary over the last `window` rows (all rows if fewer).
MetricsSummary summarize_tail(std::span<const EpochRow> rows, std::size_t window);

inline constexpr const char* kEpochCsvHeader =
    "epoch,epsilon,throughput,avg_queue,avg_travel_time,avg_cum_delay,total_reward,wall_seconds";
inline constexpr const char* kRewardTraceHeader = "action_index,reward";
inline constexpr const char* kComparisonHeader = "metric,stsca_mean,stsca_std,dqtsca_mean,dqtsca_std";

void write_epoch_csv(std::ostream& out, std::span<const EpochRow> rows);
void write_epoch_row(std::ostream& out, const EpochRow& row);
void write_reward_trace(std::ostream& out, std::span<const double> rewards);

// Parses a CSV written by write_epoch_csv. Throws std::runtime_error on a
// header or field mismatch.
std::vector<EpochRow> read_epoch_csv(std::istream& in);

void write_comparison_csv(std::ostream& out, const MetricsSummary& stsca,
                          const MetricsSummary& dqtsca);

// Aligned plain-text table with one (mean, std) row per traffic metric.
std::string format_comparison_table(const MetricsSummary& stsca, const MetricsSummary& dqtsca,
                                    std::size_t window);

std::string format_number(double v);

}  // namespace dqtsc
