#include "dqtsc/dtse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqtsc {

std::optional<int> cell_assign(double pos) {
  if (pos < 0.0 || std::isnan(pos)) throw std::invalid_argument("cell_assign: negative position");
  if (pos >= kDtseLength) return std::nullopt;
  return static_cast<int>(std::floor(pos / kDtseCell));
}

Dtse encode(const SimState& state, ActionId last_action, const SimParams& params) {
  Dtse d;
  for (int row = 0; row < kDtseRows; ++row) {
    // Lanes are sorted downstream-first, so the first writer of a cell is the
    // vehicle nearest the stop line.
    for (const Vehicle& v : state.lanes[static_cast<std::size_t>(row)]) {
      const auto cell = cell_assign(v.pos);
      if (!cell) break;
      const auto r = static_cast<std::size_t>(row);
      const auto c = static_cast<std::size_t>(*cell);
      if (d.occupancy[r][c]) continue;
      d.occupancy[r][c] = 1;
      d.speed[r][c] = static_cast<float>(std::clamp(v.speed / params.v_max, 0.0, 1.0));
    }
  }
  d.phase_onehot[static_cast<std::size_t>(last_action.index())] = 1;
  return d;
}

}  // namespace dqtsc
