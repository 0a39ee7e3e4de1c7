#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dcres/error.hpp"
#include "dcres/placement.hpp"
#include "dcres/rng.hpp"
#include "dcres/topology.hpp"

namespace dcres {

// One hardware failure: a unit at some level dies at `time`, taking its
// subtree with it. The unit was alive when the event was drawn.
struct FailureEvent {
  double time{};
  Level level{Level::Service};
  std::int64_t unit{};

  bool operator==(const FailureEvent&) const = default;
};

// Time-ordered, strictly increasing; no event targets an already-failed unit.
using FailureTrace = std::vector<FailureEvent>;

// Expected number of top-level failure events: round(f_hw * h_all), half away
// from zero. Cascaded child deaths do not count toward this number, which is
// why the realized failed fraction of the DC exceeds f_hw.
inline std::int64_t expected_failure_count(const Topology& topology, double f_hw) {
  return std::llround(f_hw * static_cast<double>(topology.unit_total()));
}

// Draws the failure trace for one run. Inter-arrival times are i.i.d.
// exponential with rate N_f / duration, so the realized event count is
// Poisson with mean N_f; events past `duration` are discarded. Each event
// picks its level with probability proportional to the number of units still
// alive at that level, then a uniform alive unit of that level. Cascades are
// tracked on a scratch copy so the caller's topology is untouched.
inline FailureTrace plan_failures(const Topology& topology, double f_hw,
                                  double duration, RngStream& rng) {
  if (!(f_hw > 0.0 && f_hw < 1.0)) {
    throw config_error("failure_fraction must lie strictly between 0 and 1");
  }
  if (!(duration > 0.0)) throw config_error("duration must be > 0");

  FailureTrace trace;
  const std::int64_t n_events = expected_failure_count(topology, f_hw);
  if (n_events == 0) return trace;
  const double rate = static_cast<double>(n_events) / duration;

  Topology scratch = topology;
  double t = 0.0;
  for (;;) {
    t += rng.exponential(rate);
    if (t > duration) break;

    std::int64_t alive_total = 0;
    for (Level level : kLevels) alive_total += scratch.alive_count(level);
    if (alive_total == 0) break;  // nothing left to fail

    // level ~ alive-count weights, walked root-most first
    std::int64_t pick = static_cast<std::int64_t>(
        rng.bounded(static_cast<std::uint64_t>(alive_total)));
    Level level = Level::Service;
    for (Level candidate : kLevels) {
      if (pick < scratch.alive_count(candidate)) {
        level = candidate;
        break;
      }
      pick -= scratch.alive_count(candidate);
    }

    // k-th alive unit of that level
    std::int64_t k = static_cast<std::int64_t>(
        rng.bounded(static_cast<std::uint64_t>(scratch.alive_count(level))));
    std::int64_t unit = -1;
    for (std::int64_t u = 0; u < scratch.unit_count(level); ++u) {
      if (scratch.unit_failed(level, u)) continue;
      if (k-- == 0) {
        unit = u;
        break;
      }
    }

    trace.push_back(FailureEvent{t, level, unit});
    scratch.fail_unit(level, unit);
  }
  return trace;
}

// Applies one event to the live topology: the unit and its subtree fail, and
// every instance hosted in that subtree dies. Returns the instances that were
// alive and are now dead, in service order. Failing an already failed unit is
// a no-op.
inline std::vector<std::int64_t> apply_failure(Topology& topology,
                                               const Placement& placement,
                                               std::vector<std::uint8_t>& alive,
                                               const FailureEvent& event) {
  std::vector<std::int64_t> killed;
  for (std::int64_t service : topology.fail_unit(event.level, event.unit)) {
    const std::int64_t instance = placement.instance_at(service);
    if (instance < 0) continue;
    if (!alive[static_cast<std::size_t>(instance)]) continue;
    alive[static_cast<std::size_t>(instance)] = 0;
    killed.push_back(instance);
  }
  return killed;
}

}  // namespace dcres
