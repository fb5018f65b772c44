#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dqtsc/errors.hpp"
#include "dqtsc/random.hpp"
#include "dqtsc/vehicle_gen.hpp"

using namespace dqtsc;

namespace {

// Closed-form medians, written out independently of the library.
double iw_median(double a, double b) { return b / std::pow(std::numbers::ln2, 1.0 / a); }
double burr_median(double a, double b) { return std::pow(std::pow(2.0, 1.0 / b) - 1.0, 1.0 / a); }

// Mean of a positive law as the integral of its survival function, by
// composite Simpson on x = t/(1-t) over t in [0, 1).
double mean_by_quadrature(const HeadwayDist& d) {
  const int n = 200000;
  const double h = 1.0 / n;
  auto f = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double x = t / (1.0 - t);
    return (1.0 - headway_cdf(d, x)) / ((1.0 - t) * (1.0 - t));
  };
  double s = f(0.0) + f(1.0 - 1e-12);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double ks_statistic(std::vector<double> xs, const HeadwayDist& d) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = headway_cdf(d, xs[i]);
    worst = std::max({worst, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return worst;
}

std::vector<double> draw(const HeadwayDist& d, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample_headway(d, rng.uniform_open());
  return xs;
}

double median_of(std::vector<double> xs) {
  std::nth_element(xs.begin(), xs.begin() + xs.size() / 2, xs.end());
  return xs[xs.size() / 2];
}

}  // namespace

TEST(SampleHeadway, ClosedFormMedians) {
  const auto iw = HeadwayDist::inverse_weibull();
  const auto burr = HeadwayDist::burr();
  EXPECT_NEAR(sample_headway(iw, 0.5), iw_median(0.65, 5.8), 1e-12);
  EXPECT_NEAR(sample_headway(iw, 0.5), 10.19, 0.01);
  EXPECT_NEAR(sample_headway(burr, 0.5), burr_median(1.4, 5.9), 1e-12);
  EXPECT_NEAR(sample_headway(burr, 0.5), 0.226, 0.001);
}

TEST(SampleHeadway, EmpiricalMediansMatch) {
  for (const auto& d : {HeadwayDist::inverse_weibull(), HeadwayDist::burr()}) {
    const double m = median_of(draw(d, 1000000, 3));
    EXPECT_NEAR(m / headway_median(d), 1.0, 0.01);
  }
}

TEST(SampleHeadway, DomainAndLimits) {
  const auto d = HeadwayDist::burr();
  EXPECT_THROW(sample_headway(d, 0.0), std::invalid_argument);
  EXPECT_THROW(sample_headway(d, 1.0), std::invalid_argument);
  EXPECT_THROW(sample_headway(d, -0.2), std::invalid_argument);
  for (const auto& dist : {HeadwayDist::inverse_weibull(), HeadwayDist::burr()}) {
    EXPECT_LT(sample_headway(dist, 1e-9), sample_headway(dist, 1e-3));
    EXPECT_GT(sample_headway(dist, 1e-12), 0.0);
  }
  // Lower tails in closed form: IW decays only polynomially in -ln u.
  EXPECT_NEAR(sample_headway(HeadwayDist::inverse_weibull(), 1e-12),
              5.8 * std::pow(-std::log(1e-12), -1.0 / 0.65), 1e-9);
  EXPECT_LT(sample_headway(d, 1e-12), 1e-3);
}

TEST(SampleHeadway, MonotoneAndInvertsCdf) {
  for (const auto& d : {HeadwayDist::inverse_weibull(), HeadwayDist::burr()}) {
    double prev = 0.0;
    for (double u = 0.01; u < 1.0; u += 0.01) {
      const double x = sample_headway(d, u);
      EXPECT_GT(x, prev);
      EXPECT_NEAR(headway_cdf(d, x), u, 1e-9);
      prev = x;
    }
  }
}

TEST(SampleHeadway, KolmogorovSmirnov) {
  for (const auto& d : {HeadwayDist::inverse_weibull(), HeadwayDist::burr()}) {
    EXPECT_LT(ks_statistic(draw(d, 100000, 11), d), 0.01);
  }
}

TEST(CalibrateScale, InverseWeibullMedianMatching) {
  const double s = calibrate_scale(HeadwayDist::inverse_weibull(), 100.0);
  EXPECT_NEAR(s, (3600.0 * std::numbers::ln2 / 100.0) / iw_median(0.65, 5.8), 1e-12);
  EXPECT_NEAR(s, 2.449, 0.001);
}

TEST(CalibrateScale, BurrMeanMatchesQuadrature) {
  auto d = HeadwayDist::burr();
  EXPECT_NEAR(burr_mean(d) / mean_by_quadrature(d), 1.0, 1e-6);
  d.scale_factor = calibrate_scale(d, 3600.0);
  EXPECT_NEAR(mean_by_quadrature(d), 1.0, 1e-6);
}

TEST(CalibrateScale, BurrEmpiricalMeanAt360) {
  auto d = HeadwayDist::burr();
  d.scale_factor = calibrate_scale(d, 360.0);
  const auto xs = draw(d, 1000000, 5);
  double sum = 0.0;
  for (double x : xs) sum += x;
  EXPECT_NEAR(sum / xs.size(), 10.0, 0.1);
}

TEST(CalibrateScale, RejectsNonPositiveFlow) {
  EXPECT_THROW(calibrate_scale(HeadwayDist::burr(), 0.0), std::invalid_argument);
  EXPECT_THROW(calibrate_scale(HeadwayDist::burr(), -5.0), std::invalid_argument);
}

TEST(ScheduleArrivals, ThroughCountsAt300PerHour) {
  DemandProfile p = DemandProfile::uniform(300.0, 0.0, 0.0);
  const double band = 3.0 * std::sqrt(300.0);
  double total = 0.0;
  const int seeds = 200;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto sched = schedule_arrivals(p, 3600.0, static_cast<std::uint64_t>(seed));
    std::size_t n = 0;
    for (int lane = 1; lane <= 3; ++lane) n += sched[static_cast<std::size_t>(lane)].size();
    EXPECT_NEAR(static_cast<double>(n), 300.0, band) << "seed " << seed;
    total += static_cast<double>(n);
  }
  EXPECT_NEAR(total / seeds, 300.0, band / std::sqrt(static_cast<double>(seeds)));
}

TEST(ScheduleArrivals, EmptyHorizonAndDeterminism) {
  const auto p = DemandProfile::uniform(350.0, 100.0, 100.0);
  for (const auto& lane : schedule_arrivals(p, 0.0, 1)) EXPECT_TRUE(lane.empty());
  const auto a = schedule_arrivals(p, 1800.0, 42);
  const auto b = schedule_arrivals(p, 1800.0, 42);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].size(), b[i].size());
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      EXPECT_EQ(a[i][k].time, b[i][k].time);
      EXPECT_EQ(a[i][k].movement, b[i][k].movement);
    }
  }
}

TEST(ScheduleArrivals, LaneAssignmentAndOrdering) {
  const auto p = DemandProfile::uniform(400.0, 150.0, 150.0);
  const auto sched = schedule_arrivals(p, 4500.0, 8);
  for (int li = 0; li < kNumLanes; ++li) {
    const auto& lane = sched[static_cast<std::size_t>(li)];
    const int idx = LaneRef::from_flat(li).lane_index;
    EXPECT_FALSE(lane.empty());
    for (std::size_t k = 0; k < lane.size(); ++k) {
      EXPECT_TRUE(lane_allows(idx, lane[k].movement));
      EXPECT_GT(lane[k].time, 0.0);
      EXPECT_LT(lane[k].time, 4500.0);
      if (k > 0) EXPECT_GT(lane[k].time, lane[k - 1].time);
    }
  }
}

TEST(DemandProfileTest, ValidatesBands) {
  EXPECT_NO_THROW(DemandProfile::uniform(350.0, 100.0, 100.0).validate());
  try {
    DemandProfile::uniform(500.0, 100.0, 100.0).validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "through_flow");
  }
  try {
    DemandProfile::uniform(350.0, 100.0, 151.0).validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "right_flow");
  }
}
