#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dqtsc/signal_control.hpp"
#include "dqtsc/traffic_sim.hpp"

namespace dqtsc {

enum class HeadwayKind : std::uint8_t { InverseWeibull, Burr };

// Two-parameter headway law. InverseWeibull: F(x) = exp(-(beta/x)^alpha).
// Burr (type XII): F(x) = 1 - (1 + x^alpha)^(-beta). Samples are multiplied
// by scale_factor.
struct HeadwayDist {
  HeadwayKind kind = HeadwayKind::Burr;
  double alpha = 1.0;
  double beta = 1.0;
  double scale_factor = 1.0;

  static HeadwayDist inverse_weibull(double alpha = 0.65, double beta = 5.8) {
    return {HeadwayKind::InverseWeibull, alpha, beta, 1.0};
  }
  static HeadwayDist burr(double alpha = 1.4, double beta = 5.9) {
    return {HeadwayKind::Burr, alpha, beta, 1.0};
  }
};

// Inverse-CDF sample; u must lie in (0, 1).
double sample_headway(const HeadwayDist& dist, double u);

// CDF of the scaled distribution.
double headway_cdf(const HeadwayDist& dist, double x);

double headway_median(const HeadwayDist& dist);

// Mean of the scaled Burr law; requires alpha*beta > 1.
double burr_mean(const HeadwayDist& dist);

// Scale that makes the stream deliver target_flow veh/h. Burr matches the
// mean headway 3600/flow. Inverse Weibull with alpha <= 1 has no finite mean,
// so its median is matched to the Poisson median 3600*ln2/flow instead.
double calibrate_scale(const HeadwayDist& dist, double target_flow);

struct StreamDemand {
  double flow = 0.0;  // veh/h; 0 disables the stream
  HeadwayDist dist;
};

// Indexed [approach][movement].
struct DemandProfile {
  std::array<std::array<StreamDemand, 3>, 4> streams{};

  StreamDemand& at(Approach a, Movement m) {
    return streams[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)];
  }
  const StreamDemand& at(Approach a, Movement m) const {
    return streams[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)];
  }

  // Same flows on every approach; turning streams use Inverse Weibull
  // (0.65, 5.8), through streams Burr (1.4, 5.9), each calibrated to its flow.
  static DemandProfile uniform(double through_flow, double left_flow, double right_flow);

  // Throws ConfigError when a flow leaves its distribution's band
  // (turning 0-150 veh/h, through 250-450 veh/h).
  void validate() const;
};

inline constexpr double kDefaultThroughFlow = 350.0;
inline constexpr double kDefaultLeftFlow = 100.0;
inline constexpr double kDefaultRightFlow = 100.0;

struct Arrival {
  double time = 0.0;
  Movement movement = Movement::Through;
};

// Per flat lane index, arrivals sorted by time.
using ArrivalSchedule = std::array<std::vector<Arrival>, kNumLanes>;

// Left arrivals go to lane 0, right to lane 3, through uniformly to 1-3.
ArrivalSchedule schedule_arrivals(const DemandProfile& profile, double horizon, std::uint64_t seed);

}  // namespace dqtsc
