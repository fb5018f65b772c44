#include "dqtsc/vehicle_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqtsc/errors.hpp"
#include "dqtsc/random.hpp"

namespace dqtsc {
namespace {

double raw_inverse(const HeadwayDist& d, double u) {
  switch (d.kind) {
    case HeadwayKind::InverseWeibull:
      return d.beta / std::pow(-std::log(u), 1.0 / d.alpha);
    case HeadwayKind::Burr:
      // log1p/expm1 keep precision when u is close to 0.
      return std::pow(std::expm1(-std::log1p(-u) / d.beta), 1.0 / d.alpha);
  }
  return 0.0;
}

void check_params(const HeadwayDist& d) {
  if (!(d.alpha > 0.0 && d.beta > 0.0 && d.scale_factor > 0.0)) {
    throw std::invalid_argument("headway distribution parameters must be positive");
  }
}

}  // namespace

double sample_headway(const HeadwayDist& dist, double u) {
  check_params(dist);
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("sample_headway: u must lie in (0, 1)");
  return raw_inverse(dist, u) * dist.scale_factor;
}

double headway_cdf(const HeadwayDist& dist, double x) {
  check_params(dist);
  if (x <= 0.0) return 0.0;
  const double y = x / dist.scale_factor;
  switch (dist.kind) {
    case HeadwayKind::InverseWeibull: return std::exp(-std::pow(dist.beta / y, dist.alpha));
    case HeadwayKind::Burr: return -std::expm1(-dist.beta * std::log1p(std::pow(y, dist.alpha)));
  }
  return 0.0;
}

double headway_median(const HeadwayDist& dist) { return sample_headway(dist, 0.5); }

double burr_mean(const HeadwayDist& dist) {
  check_params(dist);
  if (dist.kind != HeadwayKind::Burr) throw std::invalid_argument("burr_mean: not a Burr law");
  const double a = dist.alpha;
  const double b = dist.beta;
  if (a * b <= 1.0) throw std::invalid_argument("burr_mean: mean diverges for alpha*beta <= 1");
  // E[X] = beta * B(beta - 1/alpha, 1 + 1/alpha)
  const double log_mean = std::log(b) + std::lgamma(b - 1.0 / a) + std::lgamma(1.0 + 1.0 / a) -
                          std::lgamma(b + 1.0);
  return std::exp(log_mean) * dist.scale_factor;
}

double calibrate_scale(const HeadwayDist& dist, double target_flow) {
  if (!(target_flow > 0.0) || !std::isfinite(target_flow)) {
    throw std::invalid_argument("calibrate_scale: target flow must be positive");
  }
  HeadwayDist unit = dist;
  unit.scale_factor = 1.0;
  const double mean_headway = 3600.0 / target_flow;
  if (dist.kind == HeadwayKind::InverseWeibull && dist.alpha <= 1.0) {
    return mean_headway * std::numbers::ln2 / headway_median(unit);
  }
  if (dist.kind == HeadwayKind::InverseWeibull) {
    // E[X] = beta * Gamma(1 - 1/alpha) for alpha > 1.
    return mean_headway / (dist.beta * std::tgamma(1.0 - 1.0 / dist.alpha));
  }
  return mean_headway / burr_mean(unit);
}

DemandProfile DemandProfile::uniform(double through_flow, double left_flow, double right_flow) {
  DemandProfile p;
  for (Approach a : kApproaches) {
    auto make = [](HeadwayDist d, double flow) {
      if (flow > 0.0) d.scale_factor = calibrate_scale(d, flow);
      return StreamDemand{flow, d};
    };
    p.at(a, Movement::Left) = make(HeadwayDist::inverse_weibull(), left_flow);
    p.at(a, Movement::Through) = make(HeadwayDist::burr(), through_flow);
    p.at(a, Movement::Right) = make(HeadwayDist::inverse_weibull(), right_flow);
  }
  return p;
}

void DemandProfile::validate() const {
  for (Approach a : kApproaches) {
    for (Movement m : {Movement::Left, Movement::Through, Movement::Right}) {
      const StreamDemand& s = at(a, m);
      const bool through = m == Movement::Through;
      const double lo = through ? 250.0 : 0.0;
      const double hi = through ? 450.0 : 150.0;
      const char* field = through ? "through_flow" : (m == Movement::Left ? "left_flow" : "right_flow");
      if (!(s.flow >= lo && s.flow <= hi)) {
        throw ConfigError(field, "flow outside the " + std::to_string(static_cast<int>(lo)) + "-" +
                                     std::to_string(static_cast<int>(hi)) + " veh/h band");
      }
      if (s.flow > 0.0 && !(s.dist.scale_factor > 0.0)) {
        throw ConfigError(field, "headway scale must be positive");
      }
    }
  }
}

ArrivalSchedule schedule_arrivals(const DemandProfile& profile, double horizon, std::uint64_t seed) {
  ArrivalSchedule schedule;
  if (!(horizon > 0.0)) return schedule;
  for (Approach a : kApproaches) {
    for (Movement m : {Movement::Left, Movement::Through, Movement::Right}) {
      const StreamDemand& s = profile.at(a, m);
      if (!(s.flow > 0.0)) continue;
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(m)));
      double t = 0.0;
      for (;;) {
        t += sample_headway(s.dist, rng.uniform_open());
        if (t >= horizon) break;
        int lane_index = 3;
        if (m == Movement::Left) lane_index = 0;
        if (m == Movement::Through) lane_index = 1 + static_cast<int>(rng.below(3));
        schedule[static_cast<std::size_t>(LaneRef{a, lane_index}.flat())].push_back({t, m});
      }
    }
  }
  for (auto& lane : schedule) {
    std::stable_sort(lane.begin(), lane.end(),
                     [](const Arrival& x, const Arrival& y) { return x.time < y.time; });
  }
  return schedule;
}

}  // namespace dqtsc
