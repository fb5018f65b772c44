#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqtsc/run_config.hpp"

namespace dqtsc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Bad input that is not a configuration field: wrong CSV schema, k = 0, ...
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::filesystem::path> out;
  std::optional<int> epochs;
  std::optional<std::string> agent;
};

// File (if any), then overrides, then validation. Throws ConfigError.
RunConfig resolve_config(const Overrides& o);

// File names inside the output directory.
inline constexpr const char* kConfigEcho = "config.json";
inline constexpr const char* kMetricsCsv = "metrics.csv";
inline constexpr const char* kCheckpoint = "checkpoint.bin";
inline constexpr const char* kEvalCsv = "eval.csv";
inline constexpr const char* kRewardTraceCsv = "reward_trace.csv";
inline constexpr const char* kComparisonCsv = "comparison.csv";
inline constexpr const char* kComparisonTxt = "comparison.txt";

void cmd_train(const RunConfig& cfg, std::ostream& log);

// Greedy episodes with a saved network. Demand seeds come from the eval
// stream, so a fixed seed gives a reproducible summary.
void cmd_eval(const RunConfig& cfg, const std::filesystem::path& checkpoint, int episodes,
              std::ostream& log);

// Trains both agents into out/stsca and out/dqtsca and writes the table.
void cmd_compare(const RunConfig& cfg, std::ostream& log);

// One SVG per metric column (epoch CSVs) or one reward chart (trace CSVs).
// Returns the files written.
std::vector<std::filesystem::path> cmd_plot(const std::vector<std::filesystem::path>& csvs,
                                            const std::filesystem::path& out_dir,
                                            std::ostream& log);

// Full command line: parses argv, dispatches and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqtsc::cli
