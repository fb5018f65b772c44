#pragma once

#include <filesystem>
#include <string>

#include "dqtsc/environment.hpp"
#include "dqtsc/train_config.hpp"

namespace dqtsc {

enum class AgentKind { Dqtsca, Stsca };

std::string to_string(AgentKind kind);
AgentKind parse_agent_kind(const std::string& name);  // throws ConfigError("agent")

// Everything needed to reproduce a run. Serialized as one flat JSON object;
// see README for the key list.
struct RunConfig {
  AgentKind agent = AgentKind::Dqtsca;
  std::filesystem::path out_dir = "runs/default";
  TrainConfig train;
  SimParams sim;
  double through_flow = kDefaultThroughFlow;
  double left_flow = kDefaultLeftFlow;
  double right_flow = kDefaultRightFlow;

  EnvConfig env() const;

  // Checks every module's preconditions; throws ConfigError naming the field.
  void validate() const;
};

// Keys absent from the text keep their defaults; unknown keys and wrongly
// typed values throw ConfigError.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

// Pretty-printed JSON with every key resolved.
std::string dump_run_config(const RunConfig& cfg);

}  // namespace dqtsc
