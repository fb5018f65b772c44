#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dqtsc/signal_control.hpp"

namespace dqtsc {

inline constexpr int kLanesPerApproach = 4;
inline constexpr int kNumLanes = 16;

struct SimParams {
  double dt = 1.0;               // s
  double v_max = 13.89;          // m/s
  double accel = 2.6;            // m/s^2
  double decel = 4.5;            // m/s^2
  double vehicle_length = 5.0;   // m
  double min_gap = 2.5;          // m
  double delay_speed_fraction = 0.1;
  double queue_speed = 0.5;      // m/s, queued below this
  double lane_length = 750.0;    // m

  double delay_speed_threshold() const { return delay_speed_fraction * v_max; }

  // Throws ConfigError naming the first non-positive field.
  void validate() const;
};

struct LaneRef {
  Approach approach = Approach::N;
  int lane_index = 0;  // 0 = innermost

  // Row in the (N0..N3, S0..S3, E0..E3, W0..W3) ordering.
  constexpr int flat() const noexcept {
    return static_cast<int>(approach) * kLanesPerApproach + lane_index;
  }
  static constexpr LaneRef from_flat(int i) noexcept {
    return {static_cast<Approach>(i / kLanesPerApproach), i % kLanesPerApproach};
  }
  friend constexpr bool operator==(LaneRef, LaneRef) = default;
};

// Lane 0 is left only, lanes 1-2 through, lane 3 through + right.
bool lane_allows(int lane_index, Movement movement) noexcept;

struct Vehicle {
  std::uint64_t id = 0;
  LaneRef lane;
  double pos = 0.0;    // m upstream of the stop line
  double speed = 0.0;  // m/s
  Movement movement = Movement::Through;
  double entry_time = 0.0;
  std::optional<double> exit_time;
  double delay_accum = 0.0;
};

struct SimState {
  double time = 0.0;
  // Per lane, ordered by increasing pos (vehicle nearest the stop line first).
  std::array<std::vector<Vehicle>, kNumLanes> lanes;
  Phase active_phase = Phase::NSG;
  std::uint64_t spawned = 0;
  std::uint64_t exited = 0;
  std::uint64_t next_id = 0;

  std::size_t vehicle_count() const noexcept;
  std::vector<Vehicle>& lane(LaneRef ref) { return lanes[static_cast<std::size_t>(ref.flat())]; }
  const std::vector<Vehicle>& lane(LaneRef ref) const {
    return lanes[static_cast<std::size_t>(ref.flat())];
  }
};

struct StepReport {
  std::vector<Vehicle> exited;  // exit_time set
};

inline constexpr double kFreeRoad = std::numeric_limits<double>::infinity();

// Throws ConsistencyError on overlap, misordering, or out-of-range values.
void check_consistency(const SimState& state, const SimParams& params);

// Advances every vehicle by one dt under `state.active_phase`.
StepReport step(SimState& state, const SimParams& params);

// Bumper-to-bumper distance to the downstream vehicle, else distance to the
// stop line when the movement is not green, else kFreeRoad.
double leader_gap(const SimState& state, const Vehicle& vehicle, const SimParams& params);

// Vehicles slower than params.queue_speed, on one approach or all of them.
int queue_length(const SimState& state, const SimParams& params,
                 std::optional<Approach> approach = std::nullopt);

double cumulative_delay(const SimState& state);

// Places a new vehicle at the lane entrance if the entrance gap allows it.
// Returns false (state untouched) when blocked.
bool try_insert(SimState& state, LaneRef lane, Movement movement, const SimParams& params);

// Distance covered while braking at `decel` from speed v to rest, counting
// the current step's motion: dt * sum_k max(0, v - k*decel*dt).
double stopping_span(double v, const SimParams& params);

// Largest v with stopping_span(v) <= distance (0 for distance <= 0).
double max_stoppable_speed(double distance, const SimParams& params);

}  // namespace dqtsc
