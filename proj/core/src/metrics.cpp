#include "dqtsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dqtsc {

void EpisodeTrace::append(const EpisodeTrace& other) {
  throughput += other.throughput;
  queue_samples.insert(queue_samples.end(), other.queue_samples.begin(), other.queue_samples.end());
  delay_samples.insert(delay_samples.end(), other.delay_samples.begin(), other.delay_samples.end());
  travel_times.insert(travel_times.end(), other.travel_times.begin(), other.travel_times.end());
  rewards.insert(rewards.end(), other.rewards.begin(), other.rewards.end());
}

MeanStd mean_std(std::span<const double> xs) {
  MeanStd r;
  if (xs.empty()) return r;
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return r;
}

EpochMetrics aggregate(const EpisodeTrace& t) {
  EpochMetrics m;
  m.throughput = static_cast<double>(t.throughput);
  if (!t.queue_samples.empty()) {
    m.avg_queue = std::accumulate(t.queue_samples.begin(), t.queue_samples.end(), 0.0) /
                  static_cast<double>(t.queue_samples.size());
  }
  m.avg_travel_time = mean_std(t.travel_times).mean;
  m.avg_cum_delay = mean_std(t.delay_samples).mean;
  const MeanStd r = mean_std(t.rewards);
  m.reward_mean = r.mean;
  m.reward_std = r.std;
  m.total_reward = std::accumulate(t.rewards.begin(), t.rewards.end(), 0.0);
  return m;
}

EpochMetrics average(std::span<const EpochMetrics> items) {
  EpochMetrics m;
  if (items.empty()) return m;
  for (const auto& x : items) {
    m.throughput += x.throughput;
    m.avg_queue += x.avg_queue;
    m.avg_travel_time += x.avg_travel_time;
    m.avg_cum_delay += x.avg_cum_delay;
    m.reward_mean += x.reward_mean;
    m.reward_std += x.reward_std;
    m.total_reward += x.total_reward;
  }
  const double n = static_cast<double>(items.size());
  m.throughput /= n;
  m.avg_queue /= n;
  m.avg_travel_time /= n;
  m.avg_cum_delay /= n;
  m.reward_mean /= n;
  m.reward_std /= n;
  m.total_reward /= n;
  return m;
}

MetricsSummary summarize(std::span<const EpochMetrics> epochs) {
  if (epochs.empty()) throw std::invalid_argument("summarize: no epochs");
  auto column = [&](double EpochMetrics::*field) {
    std::vector<double> xs;
    xs.reserve(epochs.size());
    for (const auto& e : epochs) xs.push_back(e.*field);
    return mean_std(xs);
  };
  return {column(&EpochMetrics::throughput), column(&EpochMetrics::avg_queue),
          column(&EpochMetrics::avg_travel_time), column(&EpochMetrics::avg_cum_delay),
          column(&EpochMetrics::total_reward)};
}

std::size_t comparison_window(std::size_t epochs) {
  return std::max<std::size_t>(1, std::min<std::size_t>(100, (epochs + 9) / 10));
}

MetricsSummary summarize_tail(std::span<const EpochRow> rows, std::size_t window) {
  const std::size_t n = std::min(window, rows.size());
  std::vector<EpochMetrics> tail;
  for (std::size_t i = rows.size() - n; i < rows.size(); ++i) tail.push_back(rows[i].metrics);
  return summarize(tail);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_epoch_row(std::ostream& out, const EpochRow& r) {
  const EpochMetrics& m = r.metrics;
  out << r.epoch << ',' << format_number(r.epsilon) << ',' << format_number(m.throughput) << ','
      << format_number(m.avg_queue) << ',' << format_number(m.avg_travel_time) << ','
      << format_number(m.avg_cum_delay) << ',' << format_number(m.total_reward) << ','
      << format_number(r.wall_seconds) << '\n';
}

void write_epoch_csv(std::ostream& out, std::span<const EpochRow> rows) {
  out << kEpochCsvHeader << '\n';
  for (const auto& r : rows) write_epoch_row(out, r);
}

void write_reward_trace(std::ostream& out, std::span<const double> rewards) {
  out << kRewardTraceHeader << '\n';
  for (std::size_t i = 0; i < rewards.size(); ++i) out << i << ',' << format_number(rewards[i]) << '\n';
}

std::vector<EpochRow> read_epoch_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("metrics CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEpochCsvHeader) throw std::runtime_error("unexpected metrics CSV header");
  std::vector<EpochRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(std::stod(cell));
    if (f.size() != 8) throw std::runtime_error("metrics CSV row has the wrong field count");
    EpochRow r;
    r.epoch = static_cast<int>(f[0]);
    r.epsilon = f[1];
    r.metrics.throughput = f[2];
    r.metrics.avg_queue = f[3];
    r.metrics.avg_travel_time = f[4];
    r.metrics.avg_cum_delay = f[5];
    r.metrics.total_reward = f[6];
    r.wall_seconds = f[7];
    rows.push_back(r);
  }
  return rows;
}

namespace {

struct NamedMetric {
  const char* name;
  MeanStd MetricsSummary::*field;
};

constexpr NamedMetric kTableMetrics[] = {
    {"throughput", &MetricsSummary::throughput},
    {"queue", &MetricsSummary::avg_queue},
    {"travel_time", &MetricsSummary::avg_travel_time},
    {"cumulative_delay", &MetricsSummary::avg_cum_delay},
};

}  // namespace

void write_comparison_csv(std::ostream& out, const MetricsSummary& stsca,
                          const MetricsSummary& dqtsca) {
  out << kComparisonHeader << '\n';
  for (const auto& m : kTableMetrics) {
    out << m.name << ',' << format_number((stsca.*m.field).mean) << ','
        << format_number((stsca.*m.field).std) << ',' << format_number((dqtsca.*m.field).mean)
        << ',' << format_number((dqtsca.*m.field).std) << '\n';
  }
}

std::string format_comparison_table(const MetricsSummary& stsca, const MetricsSummary& dqtsca,
                                    std::size_t window) {
  auto cell = [](const MeanStd& v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(1) << '(' << v.mean << ", " << v.std << ')';
    return s.str();
  };
  std::ostringstream out;
  out << "Traffic metric (mean, std, n=" << window << ")\n";
  out << std::left << std::setw(22) << "metric" << std::setw(26) << "STSCA" << "DQTSCA" << '\n';
  const char* labels[] = {"Throughput (veh)", "Queue (veh)", "Travel time (s)",
                          "Cumulative delay (s)"};
  for (std::size_t i = 0; i < std::size(kTableMetrics); ++i) {
    out << std::setw(22) << labels[i] << std::setw(26) << cell(stsca.*kTableMetrics[i].field)
        << cell(dqtsca.*kTableMetrics[i].field) << '\n';
  }
  return out.str();
}

}  // namespace dqtsc
