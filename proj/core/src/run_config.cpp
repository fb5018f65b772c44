#include "dqtsc/run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dqtsc/errors.hpp"

namespace dqtsc {
namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
      if (std::is_unsigned_v<T> && v.get<long long>() < 0) {
        throw ConfigError(key, "must not be negative");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(key, "expected a number");
    } else {
      if (!v.is_string()) throw ConfigError(key, "expected a string");
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

json to_json(const RunConfig& c) {
  return json{
      {"agent", to_string(c.agent)},
      {"out_dir", c.out_dir.string()},
      {"seed", c.train.seed},
      {"workers", c.train.workers},
      {"epochs", c.train.epochs},
      {"sim_len", c.train.sim_len},
      {"gamma", c.train.gamma},
      {"batch_size", c.train.batch_size},
      {"exp_refill", c.train.exp_refill},
      {"max_size", c.train.max_size},
      {"min_size", c.train.min_size},
      {"learning_rate", c.train.rmsprop.learning_rate},
      {"rms_decay", c.train.rmsprop.decay},
      {"rms_epsilon", c.train.rmsprop.epsilon},
      {"record_wall_time", c.train.record_wall_time},
      {"dt", c.sim.dt},
      {"v_max", c.sim.v_max},
      {"accel", c.sim.accel},
      {"decel", c.sim.decel},
      {"vehicle_length", c.sim.vehicle_length},
      {"min_gap", c.sim.min_gap},
      {"delay_speed_fraction", c.sim.delay_speed_fraction},
      {"queue_speed", c.sim.queue_speed},
      {"lane_length", c.sim.lane_length},
      {"through_flow", c.through_flow},
      {"left_flow", c.left_flow},
      {"right_flow", c.right_flow},
  };
}

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

template <typename T>
Setter bind(T RunConfig::*field) {
  return [field](RunConfig& c, const json& v, const std::string& k) { c.*field = get_as<T>(v, k); };
}

template <typename T, typename Sub>
Setter bind(Sub RunConfig::*sub, T Sub::*field) {
  return [sub, field](RunConfig& c, const json& v, const std::string& k) {
    (c.*sub).*field = get_as<T>(v, k);
  };
}

Setter bind_rms(double nn::RmspropConfig::*field) {
  return [field](RunConfig& c, const json& v, const std::string& k) {
    c.train.rmsprop.*field = get_as<double>(v, k);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"agent", [](RunConfig& c, const json& v,
                   const std::string& k) { c.agent = parse_agent_kind(get_as<std::string>(v, k)); }},
      {"out_dir", [](RunConfig& c, const json& v,
                     const std::string& k) { c.out_dir = get_as<std::string>(v, k); }},
      {"seed", bind(&RunConfig::train, &TrainConfig::seed)},
      {"workers", bind(&RunConfig::train, &TrainConfig::workers)},
      {"epochs", bind(&RunConfig::train, &TrainConfig::epochs)},
      {"sim_len", bind(&RunConfig::train, &TrainConfig::sim_len)},
      {"gamma", bind(&RunConfig::train, &TrainConfig::gamma)},
      {"batch_size", bind(&RunConfig::train, &TrainConfig::batch_size)},
      {"exp_refill", bind(&RunConfig::train, &TrainConfig::exp_refill)},
      {"max_size", bind(&RunConfig::train, &TrainConfig::max_size)},
      {"min_size", bind(&RunConfig::train, &TrainConfig::min_size)},
      {"learning_rate", bind_rms(&nn::RmspropConfig::learning_rate)},
      {"rms_decay", bind_rms(&nn::RmspropConfig::decay)},
      {"rms_epsilon", bind_rms(&nn::RmspropConfig::epsilon)},
      {"record_wall_time", bind(&RunConfig::train, &TrainConfig::record_wall_time)},
      {"dt", bind(&RunConfig::sim, &SimParams::dt)},
      {"v_max", bind(&RunConfig::sim, &SimParams::v_max)},
      {"accel", bind(&RunConfig::sim, &SimParams::accel)},
      {"decel", bind(&RunConfig::sim, &SimParams::decel)},
      {"vehicle_length", bind(&RunConfig::sim, &SimParams::vehicle_length)},
      {"min_gap", bind(&RunConfig::sim, &SimParams::min_gap)},
      {"delay_speed_fraction", bind(&RunConfig::sim, &SimParams::delay_speed_fraction)},
      {"queue_speed", bind(&RunConfig::sim, &SimParams::queue_speed)},
      {"lane_length", bind(&RunConfig::sim, &SimParams::lane_length)},
      {"through_flow", bind(&RunConfig::through_flow)},
      {"left_flow", bind(&RunConfig::left_flow)},
      {"right_flow", bind(&RunConfig::right_flow)},
  };
  return table;
}

}  // namespace

std::string to_string(AgentKind kind) { return kind == AgentKind::Dqtsca ? "dqtsca" : "stsca"; }

AgentKind parse_agent_kind(const std::string& name) {
  if (name == "dqtsca") return AgentKind::Dqtsca;
  if (name == "stsca") return AgentKind::Stsca;
  throw ConfigError("agent", "expected \"dqtsca\" or \"stsca\", got \"" + name + "\"");
}

EnvConfig RunConfig::env() const {
  return EnvConfig{sim, DemandProfile::uniform(through_flow, left_flow, right_flow)};
}

void RunConfig::validate() const {
  train.validate();
  sim.validate();
  if (out_dir.empty()) throw ConfigError("out_dir", "must not be empty");
  env().demand.validate();
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");
  RunConfig cfg;
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(key, "unknown configuration key");
    it->second(cfg, value, key);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string dump_run_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

}  // namespace dqtsc
