#include "dqtsc/signal_control.hpp"

#include "dqtsc/errors.hpp"

namespace dqtsc {
namespace {

bool is_north_south(Approach a) { return a == Approach::N || a == Approach::S; }

// Intermediate phases, indexed [current][selected].
struct Intermediates {
  std::array<Phase, 2> phases;
  int count;
};

constexpr Intermediates kNone{{Phase::R, Phase::R}, 0};
constexpr Intermediates kNsY{{Phase::NSY, Phase::R}, 1};
constexpr Intermediates kNsYR{{Phase::NSY, Phase::R}, 2};
constexpr Intermediates kEwY{{Phase::EWY, Phase::R}, 1};
constexpr Intermediates kEwYR{{Phase::EWY, Phase::R}, 2};

// Rows: current phase; columns: selected action (NSG, EWG, NSLG, EWLG).
// Asymmetric entries (NSLG -> NSG, EWLG -> EWG) are kept as published.
constexpr std::array<std::array<Intermediates, 4>, 4> kTransitions = {{
    /* NSG  */ {kNone, kNsYR, kNsY, kNsYR},
    /* EWG  */ {kEwYR, kNone, kEwYR, kEwY},
    /* NSLG */ {kNone, kNsYR, kNone, kNsYR},
    /* EWLG */ {kEwY, kNone, kEwYR, kNone},
}};

}  // namespace

PhasePlan transition_sequence(Phase current, ActionId selected) {
  if (!is_green(current)) {
    throw ContractViolation("transition_sequence: current phase " +
                            std::string(to_string(current)) + " is not an action phase");
  }
  const Intermediates& mid =
      kTransitions[static_cast<int>(current)][static_cast<std::size_t>(selected.index())];
  PhasePlan plan;
  plan.reserve(static_cast<std::size_t>(mid.count) + 1);
  for (int i = 0; i < mid.count; ++i) {
    plan.push_back({mid.phases[static_cast<std::size_t>(i)], kTransitionDuration});
  }
  plan.push_back({selected.phase(), kGreenDuration});
  return plan;
}

bool movement_green(Phase phase, Approach approach, Movement movement) {
  const bool ns = is_north_south(approach);
  const bool left = movement == Movement::Left;
  switch (phase) {
    case Phase::NSG: return ns && !left;
    case Phase::EWG: return !ns && !left;
    case Phase::NSLG: return ns && left;
    case Phase::EWLG: return !ns && left;
    case Phase::NSY:
    case Phase::EWY:
    case Phase::R: return false;
  }
  return false;
}

bool movement_yellow(Phase phase, Approach approach, Movement) {
  switch (phase) {
    case Phase::NSY: return is_north_south(approach);
    case Phase::EWY: return !is_north_south(approach);
    default: return false;
  }
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::NSG: return "NSG";
    case Phase::EWG: return "EWG";
    case Phase::NSLG: return "NSLG";
    case Phase::EWLG: return "EWLG";
    case Phase::NSY: return "NSY";
    case Phase::EWY: return "EWY";
    case Phase::R: return "R";
  }
  return "?";
}

std::string_view to_string(Approach a) {
  switch (a) {
    case Approach::N: return "N";
    case Approach::S: return "S";
    case Approach::E: return "E";
    case Approach::W: return "W";
  }
  return "?";
}

}  // namespace dqtsc
