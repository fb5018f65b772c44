#pragma once

#include <array>
#include <stdexcept>
#include <cstdint>
#include <string_view>
#include <vector>

namespace dqtsc {

enum class Approach : std::uint8_t { N = 0, S = 1, E = 2, W = 3 };
enum class Movement : std::uint8_t { Left = 0, Through = 1, Right = 2 };

inline constexpr std::array<Approach, 4> kApproaches = {Approach::N, Approach::S,
                                                        Approach::E, Approach::W};

// Signal phases. The first four are agent-selectable greens; NSY, EWY and R
// only occur inside transition sequences.
enum class Phase : std::uint8_t { NSG = 0, EWG = 1, NSLG = 2, EWLG = 3, NSY = 4, EWY = 5, R = 6 };

inline constexpr int kNumActions = 4;

// Index into the action set {NSG, EWG, NSLG, EWLG}.
class ActionId {
 public:
  constexpr ActionId() = default;
  constexpr explicit ActionId(int index);

  static constexpr ActionId from_phase(Phase p);

  constexpr int index() const noexcept { return index_; }
  constexpr Phase phase() const noexcept { return static_cast<Phase>(index_); }

  friend constexpr bool operator==(ActionId, ActionId) = default;

 private:
  int index_ = 0;
};

constexpr bool is_green(Phase p) noexcept { return static_cast<int>(p) < kNumActions; }

struct TimedPhase {
  Phase phase;
  int duration_s;
  friend bool operator==(const TimedPhase&, const TimedPhase&) = default;
};

// Sequence of phases that realizes one agent action.
using PhasePlan = std::vector<TimedPhase>;

inline constexpr int kGreenDuration = 2;
inline constexpr int kTransitionDuration = 5;

// Mandatory yellow/red phases followed by the selected green. Throws
// ContractViolation if `current` is a transition phase.
PhasePlan transition_sequence(Phase current, ActionId selected);

bool movement_green(Phase phase, Approach approach, Movement movement);

// Yellow applies to every movement of the approaches the phase names.
bool movement_yellow(Phase phase, Approach approach, Movement movement);

std::string_view to_string(Phase p);
std::string_view to_string(Approach a);

// ---------------------------------------------------------------------------

constexpr ActionId::ActionId(int index) : index_(index) {
  if (index < 0 || index >= kNumActions) {
    throw std::out_of_range("ActionId out of range");
  }
}

constexpr ActionId ActionId::from_phase(Phase p) {
  if (!is_green(p)) throw std::invalid_argument("transition phase is not an action");
  return ActionId(static_cast<int>(p));
}

}  // namespace dqtsc
