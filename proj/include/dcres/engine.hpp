#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcres/commnet.hpp"
#include "dcres/failure.hpp"
#include "dcres/placement.hpp"
#include "dcres/rng.hpp"
#include "dcres/topology.hpp"
#include "dcres/workload.hpp"

namespace dcres {

// Outcome of one simulation run.
struct RunResult {
  bool rejected{false};  // the entire DC died at some point; exclude from aggregates
  std::vector<std::uint8_t> job_succeeded;
  std::vector<double> job_cost;  // time-averaged network cost, one per job
  std::int64_t jobs_succeeded{0};
  double sj{0.0};
  std::optional<double> cj;  // mean cost over successful jobs; empty when none
  std::array<std::int64_t, kLevelCount> failure_event_counts{};
  double services_alive_fraction{0.0};  // at run end
  std::uint64_t seed{0};
};

// Test hooks: pin the placement and/or the failure trace instead of drawing
// them from the run's rng stream.
struct RunOverrides {
  const Placement* placement{nullptr};
  const FailureTrace* trace{nullptr};
};

// Final success flags (one per job) plus the rejection verdict for a run
// state.
struct Outcome {
  std::vector<std::uint8_t> job_succeeded;
  std::int64_t jobs_succeeded{0};
  bool rejected{false};
};

inline Outcome evaluate_outcome(const JobSet& jobs,
                                const std::vector<std::uint8_t>& alive,
                                const Topology& topology) {
  Outcome out;
  out.job_succeeded.assign(static_cast<std::size_t>(jobs.jobs()), 0);
  for (std::int64_t j = 0; j < jobs.jobs(); ++j) {
    if (!job_failed(jobs, j, alive)) {
      out.job_succeeded[static_cast<std::size_t>(j)] = 1;
      ++out.jobs_succeeded;
    }
  }
  out.rejected = topology.alive_services() == 0;
  return out;
}

// One deterministic simulation run. Jobs are scheduled on an all-alive DC at
// t=0, then failure events and communication sampling interleave over the
// duration:
//   - sampling happens at the `ticks` instants i*duration/ticks, i in
//     [0, ticks); events with time <= the tick instant apply first, so the
//     first tick sees the initial networks and a job killed by an event stops
//     accumulating cost from that tick on;
//   - any events after the last tick still apply before final evaluation.
// Per-job cost is the accumulated graph cost divided by `ticks`. A run is
// rejected when every service is dead at any point.
inline RunResult run_simulation(const ScenarioConfig& config, std::uint64_t seed,
                                const RunOverrides& overrides) {
  config.validate();
  const std::int64_t dc_size = derive_dc_size(config);
  Topology topology(config.hierarchy, dc_size);
  JobSet jobs(config.jobs, config.tasks, config.redundancy);
  RngStream rng(seed);

  Placement owned_placement(0, 0);
  if (!overrides.placement) {
    owned_placement = schedule(config.scheduler, jobs, topology, rng);
  }
  const Placement& placement =
      overrides.placement ? *overrides.placement : owned_placement;

  FailureTrace owned_trace;
  if (!overrides.trace) {
    owned_trace =
        plan_failures(topology, config.failure_fraction, config.duration, rng);
  }
  const FailureTrace& trace = overrides.trace ? *overrides.trace : owned_trace;

  RunResult result;
  result.seed = seed;

  std::vector<std::uint8_t> alive(
      static_cast<std::size_t>(jobs.instance_count()), 1);
  // live copies per (job, row); a row hitting zero fails its job for good
  std::vector<std::int64_t> row_live(
      static_cast<std::size_t>(config.jobs * config.tasks), config.redundancy);
  std::vector<std::uint8_t> failed_job(static_cast<std::size_t>(config.jobs), 0);
  std::vector<std::int64_t> cost_accum(static_cast<std::size_t>(config.jobs), 0);
  std::vector<std::int64_t> cost_cache(static_cast<std::size_t>(config.jobs), 0);
  std::vector<std::uint8_t> job_dirty(static_cast<std::size_t>(config.jobs), 1);

  std::size_t next_event = 0;
  auto apply_until = [&](double time_limit) {
    while (next_event < trace.size() && trace[next_event].time <= time_limit) {
      const FailureEvent& event = trace[next_event++];
      ++result.failure_event_counts[static_cast<std::size_t>(event.level)];
      for (const std::int64_t instance :
           apply_failure(topology, placement, alive, event)) {
        const InstanceId id = jobs.instance_at(instance);
        job_dirty[static_cast<std::size_t>(id.job)] = 1;
        auto& live = row_live[static_cast<std::size_t>(
            id.job * config.tasks + id.task)];
        if (--live == 0) failed_job[static_cast<std::size_t>(id.job)] = 1;
      }
      if (topology.alive_services() == 0) result.rejected = true;
    }
  };

  for (std::int64_t tick = 0; tick < config.ticks; ++tick) {
    const double tick_time =
        config.duration * static_cast<double>(tick) / static_cast<double>(config.ticks);
    apply_until(tick_time);
    for (std::int64_t j = 0; j < config.jobs; ++j) {
      if (failed_job[static_cast<std::size_t>(j)]) continue;
      if (job_dirty[static_cast<std::size_t>(j)]) {
        cost_cache[static_cast<std::size_t>(j)] = job_network_cost(
            build_comm_graph(jobs, j, alive, placement, topology));
        job_dirty[static_cast<std::size_t>(j)] = 0;
      }
      cost_accum[static_cast<std::size_t>(j)] += cost_cache[static_cast<std::size_t>(j)];
    }
  }
  apply_until(config.duration);

  const Outcome outcome = evaluate_outcome(jobs, alive, topology);
  result.job_succeeded = outcome.job_succeeded;
  result.jobs_succeeded = outcome.jobs_succeeded;
  if (outcome.rejected) result.rejected = true;
  result.sj = static_cast<double>(result.jobs_succeeded) /
              static_cast<double>(config.jobs);

  result.job_cost.resize(static_cast<std::size_t>(config.jobs));
  double successful_cost_sum = 0.0;
  for (std::int64_t j = 0; j < config.jobs; ++j) {
    result.job_cost[static_cast<std::size_t>(j)] =
        static_cast<double>(cost_accum[static_cast<std::size_t>(j)]) /
        static_cast<double>(config.ticks);
    if (result.job_succeeded[static_cast<std::size_t>(j)]) {
      successful_cost_sum += result.job_cost[static_cast<std::size_t>(j)];
    }
  }
  if (result.jobs_succeeded > 0) {
    result.cj = successful_cost_sum / static_cast<double>(result.jobs_succeeded);
  }
  result.services_alive_fraction =
      static_cast<double>(topology.alive_services()) /
      static_cast<double>(topology.service_count());
  return result;
}

inline RunResult run_simulation(const ScenarioConfig& config, std::uint64_t seed) {
  return run_simulation(config, seed, RunOverrides{});
}

}  // namespace dcres
