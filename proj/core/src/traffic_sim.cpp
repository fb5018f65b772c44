#include "dqtsc/traffic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "dqtsc/errors.hpp"

namespace dqtsc {
namespace {

constexpr double kEps = 1e-9;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(name, "must be a positive finite number");
  }
}

// Distance still needed to stop after the current step's motion.
double remaining_stop_distance(double v, const SimParams& p) {
  return stopping_span(v, p) - v * p.dt;
}

bool movement_allowed(const SimState& s, const Vehicle& v) {
  return movement_green(s.active_phase, v.lane.approach, v.movement);
}

}  // namespace

void SimParams::validate() const {
  require_positive(dt, "dt");
  if (dt != 1.0) throw ConfigError("dt", "the simulator runs at a fixed 1 s step");
  require_positive(v_max, "v_max");
  require_positive(accel, "accel");
  require_positive(decel, "decel");
  require_positive(vehicle_length, "vehicle_length");
  require_positive(min_gap, "min_gap");
  require_positive(delay_speed_fraction, "delay_speed_fraction");
  require_positive(queue_speed, "queue_speed");
  require_positive(lane_length, "lane_length");
}

bool lane_allows(int lane_index, Movement movement) noexcept {
  switch (lane_index) {
    case 0: return movement == Movement::Left;
    case 1:
    case 2: return movement == Movement::Through;
    case 3: return movement == Movement::Through || movement == Movement::Right;
    default: return false;
  }
}

std::size_t SimState::vehicle_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : lanes) n += l.size();
  return n;
}

double stopping_span(double v, const SimParams& p) {
  const double step_loss = p.decel * p.dt;
  double total = 0.0;
  for (double u = v; u > 0.0; u -= step_loss) total += u * p.dt;
  return total;
}

double max_stoppable_speed(double distance, const SimParams& p) {
  if (distance <= 0.0) return 0.0;
  // stopping_span is piecewise quadratic: with n positive terms it equals
  // dt * (n*v - decel*dt*n*(n-1)/2), valid for (n-1)*decel*dt < v <= n*decel*dt.
  const double bd = p.decel * p.dt;
  for (int n = 1;; ++n) {
    const double v = (distance / p.dt + bd * n * (n - 1) / 2.0) / n;
    if (v <= n * bd + kEps) return v;
  }
}

void check_consistency(const SimState& state, const SimParams& params) {
  for (int li = 0; li < kNumLanes; ++li) {
    const auto& lane = state.lanes[static_cast<std::size_t>(li)];
    for (std::size_t i = 0; i < lane.size(); ++i) {
      const Vehicle& v = lane[i];
      std::ostringstream where;
      where << "lane " << li << " vehicle " << v.id << ": ";
      if (v.lane.flat() != li) throw ConsistencyError(where.str() + "lane reference mismatch");
      if (v.pos < -kEps || v.pos > params.lane_length + kEps) {
        throw ConsistencyError(where.str() + "position out of range");
      }
      if (v.speed < -kEps || v.speed > params.v_max + kEps) {
        throw ConsistencyError(where.str() + "speed out of range");
      }
      if (i > 0) {
        const Vehicle& leader = lane[i - 1];
        if (!(v.pos > leader.pos)) throw ConsistencyError(where.str() + "positions not ordered");
        if (v.pos - leader.pos - params.vehicle_length < -kEps) {
          throw ConsistencyError(where.str() + "overlaps its leader");
        }
      }
    }
  }
  if (state.spawned != state.exited + state.vehicle_count()) {
    throw ConsistencyError("vehicle conservation violated");
  }
}

StepReport step(SimState& state, const SimParams& p) {
  check_consistency(state, p);
  StepReport report;
  const double next_time = state.time + p.dt;
  const double delay_threshold = p.delay_speed_threshold();

  for (auto& lane : state.lanes) {
    std::vector<Vehicle> moved;
    moved.reserve(lane.size());
    for (Vehicle v : lane) {
      double cap = std::min(v.speed + p.accel * p.dt, p.v_max);

      if (!moved.empty()) {
        const Vehicle& leader = moved.back();
        const double g = v.pos - leader.pos - p.vehicle_length - p.min_gap;
        cap = std::min({cap, std::max(0.0, g / p.dt),
                        max_stoppable_speed(g + remaining_stop_distance(leader.speed, p), p)});
      }

      bool may_cross = movement_allowed(state, v);
      if (!may_cross) {
        const double g = v.pos - p.min_gap;
        const double v_stop = max_stoppable_speed(g, p);
        // On yellow a vehicle that cannot stop at comfortable deceleration
        // is committed to crossing.
        const bool committed =
            movement_yellow(state.active_phase, v.lane.approach, v.movement) &&
            v_stop < v.speed - p.decel * p.dt - kEps;
        if (committed) {
          may_cross = true;
        } else {
          cap = std::min({cap, std::max(0.0, g / p.dt), v_stop});
        }
      }

      v.speed = std::max(0.0, cap);
      const double new_pos = v.pos - v.speed * p.dt;
      if (v.speed < delay_threshold) v.delay_accum += p.dt;

      if (new_pos <= 0.0 && may_cross) {
        v.pos = 0.0;
        v.exit_time = next_time;
        report.exited.push_back(v);
        continue;
      }
      v.pos = std::max(0.0, new_pos);
      moved.push_back(v);
    }
    lane = std::move(moved);
  }

  state.exited += report.exited.size();
  state.time = next_time;
  return report;
}

double leader_gap(const SimState& state, const Vehicle& vehicle, const SimParams& params) {
  const auto& lane = state.lane(vehicle.lane);
  const auto it = std::find_if(lane.begin(), lane.end(),
                               [&](const Vehicle& v) { return v.id == vehicle.id; });
  if (it == lane.end()) throw ContractViolation("leader_gap: vehicle is not in its lane");
  if (it != lane.begin()) {
    const Vehicle& leader = *std::prev(it);
    return vehicle.pos - leader.pos - params.vehicle_length;
  }
  if (movement_allowed(state, vehicle)) return kFreeRoad;
  return vehicle.pos;
}

int queue_length(const SimState& state, const SimParams& params, std::optional<Approach> approach) {
  int count = 0;
  for (const auto& lane : state.lanes) {
    for (const Vehicle& v : lane) {
      if (approach && v.lane.approach != *approach) continue;
      if (v.speed < params.queue_speed) ++count;
    }
  }
  return count;
}

double cumulative_delay(const SimState& state) {
  double total = 0.0;
  for (const auto& lane : state.lanes) {
    for (const Vehicle& v : lane) total += v.delay_accum;
  }
  return total;
}

bool try_insert(SimState& state, LaneRef ref, Movement movement, const SimParams& p) {
  if (!lane_allows(ref.lane_index, movement)) {
    throw ContractViolation("try_insert: movement not permitted on this lane");
  }
  auto& lane = state.lane(ref);
  double speed = p.v_max;
  if (!lane.empty()) {
    const Vehicle& last = lane.back();
    const double g = p.lane_length - last.pos - p.vehicle_length - p.min_gap;
    if (g < 0.0) return false;
    speed = std::min({speed, g / p.dt,
                      max_stoppable_speed(g + remaining_stop_distance(last.speed, p), p)});
  } else if (!movement_green(state.active_phase, ref.approach, movement)) {
    const double g = p.lane_length - p.min_gap;
    speed = std::min({speed, g / p.dt, max_stoppable_speed(g, p)});
  }

  Vehicle v;
  v.id = state.next_id++;
  v.lane = ref;
  v.pos = p.lane_length;
  v.speed = std::max(0.0, speed);
  v.movement = movement;
  v.entry_time = state.time;
  lane.push_back(v);
  ++state.spawned;
  return true;
}

}  // namespace dqtsc
