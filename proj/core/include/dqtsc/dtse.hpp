#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dqtsc/signal_control.hpp"
#include "dqtsc/traffic_sim.hpp"

namespace dqtsc {

inline constexpr double kDtseLength = 75.0;  // m encoded upstream of the stop line
inline constexpr double kDtseCell = 5.0;     // m per cell
inline constexpr int kDtseCells = 15;
inline constexpr int kDtseRows = kNumLanes;

// Discrete traffic state encoding: rows are lanes in (N0..N3, S0..S3,
// E0..E3, W0..W3) order, columns are cells counted from the stop line.
struct Dtse {
  std::array<std::array<std::uint8_t, kDtseCells>, kDtseRows> occupancy{};
  std::array<std::array<float, kDtseCells>, kDtseRows> speed{};
  std::array<std::uint8_t, kNumActions> phase_onehot{};

  friend bool operator==(const Dtse&, const Dtse&) = default;
};

// Cell holding a vehicle whose front bumper is at `pos`, or nullopt beyond the
// encoded window. Throws std::invalid_argument for negative positions.
std::optional<int> cell_assign(double pos);

// When two vehicles share a cell the one nearer the stop line wins.
Dtse encode(const SimState& state, ActionId last_action, const SimParams& params);

}  // namespace dqtsc
