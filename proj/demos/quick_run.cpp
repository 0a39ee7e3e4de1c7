// Minimal library usage: one scenario, a handful of repetitions, metrics to
// stdout. See the dcres CLI for the full sweep harness.

#include <cstdio>

#include "dcres/config.hpp"
#include "dcres/experiment.hpp"

int main() {
  dcres::ScenarioConfig config;
  config.jobs = 10;
  config.tasks = 10;
  config.redundancy = 3;
  config.failure_fraction = 0.10;
  config.scheduler = dcres::SchedulerKind::Cluster;
  config.sizing = dcres::Sizing::Fixed;
  config.base_seed = 42;

  const dcres::Aggregate agg = dcres::run_scenario(config, 30, 2);
  std::printf("scenario: cluster on %s, J=10 T=10 R=3, f_hw=0.10\n",
              dcres::format_hierarchy(config.hierarchy).c_str());
  std::printf("repetitions: %lld (%lld rejected)\n",
              static_cast<long long>(agg.reps_total),
              static_cast<long long>(agg.reps_rejected));
  if (agg.sj) std::printf("S_J = %.4f +/- %.4f\n", agg.sj->mean, agg.sj->ci95);
  if (agg.cj) std::printf("C_J = %.1f +/- %.1f\n", agg.cj->mean, agg.cj->ci95);
  return 0;
}
