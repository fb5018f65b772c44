#include "dqtsc/cli/commands.hpp"

#include <fstream>
#include <sstream>

#include "dqtsc/baseline.hpp"
#include "dqtsc/cli/svg_chart.hpp"
#include "dqtsc/episode.hpp"
#include "dqtsc/errors.hpp"
#include "dqtsc/nn/checkpoint.hpp"
#include "dqtsc/trainer.hpp"

namespace dqtsc::cli {
namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void echo_config(const RunConfig& cfg, std::ostream& log) {
  write_text(cfg.out_dir / kConfigEcho, dump_run_config(cfg));
  log << "resolved config: " << (cfg.out_dir / kConfigEcho).string() << "\n";
}

// Streams rows to the CSV as epochs finish so a long run can be watched.
class EpochLog {
 public:
  EpochLog(const fs::path& path, std::string tag, std::ostream& log)
      : out_(open_out(path)), tag_(std::move(tag)), log_(log) {
    out_ << kEpochCsvHeader << "\n";
  }

  void operator()(const EpochRow& r) {
    write_epoch_row(out_, r);
    out_.flush();
    log_ << tag_ << " epoch " << r.epoch << " eps " << format_number(r.epsilon) << " reward "
         << format_number(r.metrics.total_reward) << " delay "
         << format_number(r.metrics.avg_cum_delay) << "\n";
  }

 private:
  std::ofstream out_;
  std::string tag_;
  std::ostream& log_;
};

std::vector<EpochRow> train_into(AgentKind kind, const RunConfig& cfg, const fs::path& dir,
                                 std::ostream& log) {
  EpochLog sink(dir / kMetricsCsv, to_string(kind), log);
  const EpochCallback cb = [&](const EpochRow& r) { sink(r); };
  if (kind == AgentKind::Dqtsca) {
    auto res = train_dqtsca(cfg.train, cfg.env(), cb);
    nn::save_checkpoint(res.net.params(), dir / kCheckpoint);
    log << "replay train steps: " << res.train_steps << ", peak memory: " << res.peak_memory
        << "\n";
    return std::move(res.rows);
  }
  auto res = train_stsca(cfg.train, cfg.env(), cb);
  nn::save_checkpoint(res.net.params(), dir / kCheckpoint);
  return std::move(res.rows);
}

template <typename Net>
void evaluate(const Net& net, const RunConfig& cfg, int episodes, std::ostream& log) {
  std::vector<EpochRow> rows;
  for (int k = 0; k < episodes; ++k) {
    const auto i = static_cast<std::uint64_t>(k);
    auto ep = run_episode(net, 0.0, derive_seed(cfg.train.seed, kEvalStream, i, 0),
                          derive_seed(cfg.train.seed, kEvalStream, i, 1), cfg.env(),
                          cfg.train.sim_len);
    if (k == 0) {
      auto out = open_out(cfg.out_dir / kRewardTraceCsv);
      write_reward_trace(out, ep.trace.rewards);
    }
    EpochRow row;
    row.epoch = k + 1;
    row.metrics = ep.metrics;
    rows.push_back(row);
  }
  auto out = open_out(cfg.out_dir / kEvalCsv);
  write_epoch_csv(out, rows);

  std::vector<EpochMetrics> ms;
  for (const auto& r : rows) ms.push_back(r.metrics);
  const MetricsSummary s = summarize(ms);
  auto line = [&](const char* name, const MeanStd& m) {
    log << name << ": " << format_number(m.mean) << " +/- " << format_number(m.std) << "\n";
  };
  log << "greedy evaluation over " << episodes << " episode(s)\n";
  line("throughput", s.throughput);
  line("queue", s.avg_queue);
  line("travel_time", s.avg_travel_time);
  line("cumulative_delay", s.avg_cum_delay);
  line("total_reward", s.total_reward);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_chart(const fs::path& path, const ChartLabels& labels, const std::vector<double>& xs,
                 const std::vector<double>& ys, std::vector<fs::path>& written) {
  write_text(path, line_chart_svg(labels, xs, ys));
  written.push_back(path);
}

}  // namespace

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg = o.config ? load_run_config(*o.config) : RunConfig{};
  if (o.seed) cfg.train.seed = *o.seed;
  if (o.workers) cfg.train.workers = *o.workers;
  if (o.out) cfg.out_dir = *o.out;
  if (o.epochs) cfg.train.epochs = *o.epochs;
  if (o.agent) cfg.agent = parse_agent_kind(*o.agent);
  cfg.validate();
  return cfg;
}

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  fs::create_directories(cfg.out_dir);
  echo_config(cfg, log);
  const auto rows = train_into(cfg.agent, cfg, cfg.out_dir, log);
  log << "wrote " << rows.size() << " epochs to " << (cfg.out_dir / kMetricsCsv).string()
      << " and " << (cfg.out_dir / kCheckpoint).string() << "\n";
}

void cmd_eval(const RunConfig& cfg, const fs::path& checkpoint, int episodes, std::ostream& log) {
  if (episodes <= 0) throw UsageError("--episodes must be at least 1");
  fs::create_directories(cfg.out_dir);
  echo_config(cfg, log);
  if (cfg.agent == AgentKind::Dqtsca) {
    const DqnNet net(nn::load_checkpoint(checkpoint, DqnNet::architecture()));
    evaluate(net, cfg, episodes, log);
  } else {
    const StscaNet net(nn::load_checkpoint(checkpoint, nn::stsca_architecture()));
    evaluate(net, cfg, episodes, log);
  }
}

void cmd_compare(const RunConfig& cfg, std::ostream& log) {
  fs::create_directories(cfg.out_dir);
  echo_config(cfg, log);
  const auto stsca = train_into(AgentKind::Stsca, cfg, cfg.out_dir / "stsca", log);
  const auto dqtsca = train_into(AgentKind::Dqtsca, cfg, cfg.out_dir / "dqtsca", log);
  const std::size_t window = comparison_window(static_cast<std::size_t>(cfg.train.epochs));
  const MetricsSummary s = summarize_tail(stsca, window);
  const MetricsSummary d = summarize_tail(dqtsca, window);
  {
    auto out = open_out(cfg.out_dir / kComparisonCsv);
    write_comparison_csv(out, s, d);
  }
  const std::string table = format_comparison_table(s, d, window);
  write_text(cfg.out_dir / kComparisonTxt, table);
  log << table;
}

std::vector<fs::path> cmd_plot(const std::vector<fs::path>& csvs, const fs::path& out_dir,
                               std::ostream& log) {
  if (csvs.empty()) throw UsageError("plot needs at least one CSV");
  std::vector<fs::path> written;
  for (const fs::path& path : csvs) {
    const std::string text = slurp(path);
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.empty()) {
      throw UsageError(path.string() + ": empty file");
    }
    const std::string stem = path.stem().string();
    if (header == kEpochCsvHeader) {
      std::istringstream again(text);
      std::vector<EpochRow> rows;
      try {
        rows = read_epoch_csv(again);
      } catch (const std::runtime_error& e) {
        throw UsageError(path.string() + ": " + e.what());
      }
      if (rows.empty()) throw UsageError(path.string() + ": no data rows");
      std::vector<double> xs;
      for (const auto& r : rows) xs.push_back(r.epoch);
      const std::vector<std::pair<const char*, double (*)(const EpochRow&)>> columns = {
          {"epsilon", [](const EpochRow& r) { return r.epsilon; }},
          {"throughput", [](const EpochRow& r) { return r.metrics.throughput; }},
          {"avg_queue", [](const EpochRow& r) { return r.metrics.avg_queue; }},
          {"avg_travel_time", [](const EpochRow& r) { return r.metrics.avg_travel_time; }},
          {"avg_cum_delay", [](const EpochRow& r) { return r.metrics.avg_cum_delay; }},
          {"total_reward", [](const EpochRow& r) { return r.metrics.total_reward; }},
          {"wall_seconds", [](const EpochRow& r) { return r.wall_seconds; }},
      };
      for (const auto& [name, get] : columns) {
        std::vector<double> ys;
        for (const auto& r : rows) ys.push_back(get(r));
        write_chart(out_dir / (stem + "_" + name + ".svg"), {stem + ": " + name, "epoch", name},
                    xs, ys, written);
      }
    } else if (header == kRewardTraceHeader) {
      std::vector<double> xs;
      std::vector<double> ys;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 2) throw UsageError(path.string() + ": expected 2 fields: " + line);
        try {
          xs.push_back(std::stod(f[0]));
          ys.push_back(std::stod(f[1]));
        } catch (const std::exception&) {
          throw UsageError(path.string() + ": bad number in: " + line);
        }
      }
      if (xs.empty()) throw UsageError(path.string() + ": no data rows");
      write_chart(out_dir / (stem + "_reward.svg"), {stem + ": reward per action", "action index",
                                                     "reward"},
                  xs, ys, written);
    } else {
      throw UsageError(path.string() + ": unknown CSV schema: " + header);
    }
  }
  for (const auto& p : written) log << "wrote " << p.string() << "\n";
  return written;
}

}  // namespace dqtsc::cli
