#pragma once

#include <array>
#include <cstdint>
#include <deque>

#include "dqtsc/dtse.hpp"
#include "dqtsc/metrics.hpp"
#include "dqtsc/signal_control.hpp"
#include "dqtsc/traffic_sim.hpp"
#include "dqtsc/vehicle_gen.hpp"

namespace dqtsc {

struct EnvConfig {
  SimParams sim;
  DemandProfile demand = DemandProfile::uniform(kDefaultThroughFlow, kDefaultLeftFlow,
                                                kDefaultRightFlow);
};

// One signalized intersection driven action by action. Owns the simulator
// state, the arrival schedule and the episode trace; not thread-safe, one
// instance per worker.
class TrafficEnv {
 public:
  TrafficEnv(const EnvConfig& config, int horizon_s, std::uint64_t demand_seed);

  const SimState& state() const noexcept { return state_; }
  const SimParams& params() const noexcept { return config_.sim; }
  ActionId last_action() const noexcept { return last_action_; }
  bool done() const noexcept { return state_.time >= horizon_; }
  const EpisodeTrace& trace() const noexcept { return trace_; }

  Dtse observe_dtse() const { return encode(state_, last_action_, config_.sim); }

  // Runs the transition sequence for `action` phase by phase (truncated at
  // the horizon) and returns the change in cumulative delay, before - after.
  double execute(ActionId action);

  // Vehicles generated but still waiting for room at a lane entrance.
  std::size_t pending_entries() const;

 private:
  void advance_one_second(Phase phase);
  void admit_arrivals();

  EnvConfig config_;
  double horizon_;
  SimState state_;
  ArrivalSchedule schedule_;
  std::array<std::size_t, kNumLanes> next_arrival_{};
  std::array<std::deque<Arrival>, kNumLanes> entrance_queue_;
  ActionId last_action_{0};
  EpisodeTrace trace_;
};

}  // namespace dqtsc
