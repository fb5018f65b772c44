#include <CLI11.hpp>

#include "dqtsc/cli/commands.hpp"
#include "dqtsc/errors.hpp"
#include "dqtsc/nn/checkpoint.hpp"

namespace dqtsc::cli {
namespace {

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--workers", o.workers, "simulation threads (DQTSCA)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--epochs", o.epochs, "number of training epochs");
  cmd->add_option("--agent", o.agent, "dqtsca or stsca");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deep Q-learning traffic signal control"};
  app.name("dqtsc");
  app.require_subcommand(1);

  Overrides train_o;
  auto* train = app.add_subcommand("train", "train one agent");
  add_run_flags(train, train_o);

  Overrides eval_o;
  std::filesystem::path checkpoint;
  int episodes = 1;
  auto* eval = app.add_subcommand("eval", "greedy episodes with a saved network");
  add_run_flags(eval, eval_o);
  eval->add_option("--checkpoint", checkpoint, "network checkpoint")->required();
  eval->add_option("--episodes", episodes, "number of episodes");

  Overrides compare_o;
  auto* compare = app.add_subcommand("compare", "train STSCA and DQTSCA on matched seeds");
  add_run_flags(compare, compare_o);

  std::vector<std::filesystem::path> csvs;
  std::filesystem::path plot_out = ".";
  auto* plot = app.add_subcommand("plot", "SVG line charts from metrics or reward CSVs");
  plot->add_option("csv", csvs, "CSV files")->required();
  plot->add_option("--out", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) {
      cmd_train(resolve_config(train_o), out);
    } else if (eval->parsed()) {
      cmd_eval(resolve_config(eval_o), checkpoint, episodes, out);
    } else if (compare->parsed()) {
      cmd_compare(resolve_config(compare_o), out);
    } else if (plot->parsed()) {
      cmd_plot(csvs, plot_out, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nn::CheckpointError& e) {
    err << "checkpoint error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dqtsc::cli
