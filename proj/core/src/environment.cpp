#include "dqtsc/environment.hpp"

namespace dqtsc {

TrafficEnv::TrafficEnv(const EnvConfig& config, int horizon_s, std::uint64_t demand_seed)
    : config_(config),
      horizon_(static_cast<double>(horizon_s)),
      schedule_(schedule_arrivals(config.demand, horizon_s, demand_seed)) {
  state_.active_phase = last_action_.phase();
}

double TrafficEnv::execute(ActionId action) {
  const double before = cumulative_delay(state_);
  const PhasePlan plan = transition_sequence(state_.active_phase, action);
  for (const TimedPhase& tp : plan) {
    for (int s = 0; s < tp.duration_s && !done(); ++s) advance_one_second(tp.phase);
  }
  last_action_ = action;
  const double after = cumulative_delay(state_);
  const double r = before - after;
  trace_.rewards.push_back(r);
  trace_.delay_samples.push_back(after);
  return r;
}

void TrafficEnv::advance_one_second(Phase phase) {
  state_.active_phase = phase;
  const StepReport report = step(state_, config_.sim);
  trace_.throughput += report.exited.size();
  for (const Vehicle& v : report.exited) trace_.travel_times.push_back(*v.exit_time - v.entry_time);
  admit_arrivals();
  trace_.queue_samples.push_back(queue_length(state_, config_.sim));
}

void TrafficEnv::admit_arrivals() {
  for (int li = 0; li < kNumLanes; ++li) {
    const auto i = static_cast<std::size_t>(li);
    const auto& arrivals = schedule_[i];
    while (next_arrival_[i] < arrivals.size() && arrivals[next_arrival_[i]].time <= state_.time) {
      entrance_queue_[i].push_back(arrivals[next_arrival_[i]++]);
    }
    if (!entrance_queue_[i].empty() &&
        try_insert(state_, LaneRef::from_flat(li), entrance_queue_[i].front().movement,
                   config_.sim)) {
      entrance_queue_[i].pop_front();
    }
  }
}

std::size_t TrafficEnv::pending_entries() const {
  std::size_t n = 0;
  for (const auto& q : entrance_queue_) n += q.size();
  return n;
}

}  // namespace dqtsc
