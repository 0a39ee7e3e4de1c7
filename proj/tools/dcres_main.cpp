// dcres - command line front end for the data-centre resilience simulator.
//
// Runs a sweep of {J, T, R} scenarios across schedulers, hierarchies, sizing
// modes and failure fractions, and writes per-run and aggregate CSV output
// plus plot-ready series.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dcres/config.hpp"
#include "dcres/experiment.hpp"
#include "dcres/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void print_scenarios(const std::vector<dcres::ScenarioConfig>& scenarios) {
  std::printf("%-4s %-8s %-12s %-8s %5s %5s %3s %6s\n", "id", "sched", "hierarchy",
              "sizing", "J", "T", "R", "f_hw");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& c = scenarios[i];
    std::printf("%-4zu %-8s %-12s %-8s %5lld %5lld %3lld %6g\n", i,
                dcres::scheduler_name(c.scheduler),
                dcres::format_hierarchy(c.hierarchy).c_str(),
                dcres::sizing_name(c.sizing), static_cast<long long>(c.jobs),
                static_cast<long long>(c.tasks),
                static_cast<long long>(c.redundancy), c.failure_fraction);
  }
}

void print_summary(const std::vector<dcres::ScenarioResult>& results) {
  std::printf("%-4s %-8s %-12s %-8s %3s %6s %5s %5s %10s %10s\n", "id", "sched",
              "hierarchy", "sizing", "R", "f_hw", "reps", "rej", "S_J", "C_J");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const auto& c = r.config;
    std::string sj = r.aggregate.sj
                         ? dcres::format_metric(r.aggregate.sj->mean)
                         : std::string("-");
    std::string cj = r.aggregate.cj
                         ? dcres::format_metric(r.aggregate.cj->mean)
                         : std::string("-");
    std::printf("%-4zu %-8s %-12s %-8s %3lld %6g %5lld %5lld %10s %10s\n", i,
                dcres::scheduler_name(c.scheduler),
                dcres::format_hierarchy(c.hierarchy).c_str(),
                dcres::sizing_name(c.sizing),
                static_cast<long long>(c.redundancy), c.failure_fraction,
                static_cast<long long>(r.aggregate.reps_total),
                static_cast<long long>(r.aggregate.reps_rejected), sj.c_str(),
                cj.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcres - job scheduling resilience simulator for hierarchical data centres"};

  std::string config_path;
  std::string out_dir = "results";
  std::string scheduler, hierarchy, sizing, jobs, tasks, redundancy, failure_fraction;
  std::string duration, ticks;
  std::uint64_t seed = 0;
  std::int64_t reps = 0;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  bool list_only = false;

  app.add_option("--config", config_path, "Config file (key = value lines)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--scheduler", scheduler, "random | pack | cluster (comma list)");
  app.add_option("--hierarchy", hierarchy, "a-b-c-d, h-5, h-10 (comma list)");
  app.add_option("--sizing", sizing, "variable | fixed (comma list)");
  app.add_option("--jobs", jobs, "Job count J (list/range)");
  app.add_option("--tasks", tasks, "Tasks per job T (list/range)");
  app.add_option("--redundancy", redundancy, "Redundancy R (list/range, e.g. 1..10)");
  app.add_option("--failure-fraction", failure_fraction,
                 "Hardware failure fraction f_hw (list)");
  app.add_option("--duration", duration, "Simulated run length");
  app.add_option("--ticks", ticks, "Communication sampling ticks per run");
  auto* seed_opt =
      app.add_option("--seed", seed, "Base seed (run seed = base + repetition)");
  app.add_option("--reps", reps, "Repetitions per scenario");
  app.add_option("--threads", threads, "Worker thread cap")->capture_default_str();
  app.add_flag("--list-scenarios", list_only, "Print the sweep product and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    dcres::SweepSpec spec;
    if (!config_path.empty()) spec = dcres::parse_config_file(config_path);
    if (!scheduler.empty()) dcres::apply_config_entry(spec, "scheduler", scheduler);
    if (!hierarchy.empty()) dcres::apply_config_entry(spec, "hierarchy", hierarchy);
    if (!sizing.empty()) dcres::apply_config_entry(spec, "sizing", sizing);
    if (!jobs.empty()) dcres::apply_config_entry(spec, "jobs", jobs);
    if (!tasks.empty()) dcres::apply_config_entry(spec, "tasks", tasks);
    if (!redundancy.empty()) dcres::apply_config_entry(spec, "redundancy", redundancy);
    if (!failure_fraction.empty()) {
      dcres::apply_config_entry(spec, "failure_fraction", failure_fraction);
    }
    if (!duration.empty()) dcres::apply_config_entry(spec, "duration", duration);
    if (!ticks.empty()) dcres::apply_config_entry(spec, "ticks", ticks);
    if (seed_opt->count() > 0) spec.seed = seed;
    if (reps > 0) spec.repetitions = reps;
    if (threads < 1) threads = 1;

    const std::vector<dcres::ScenarioConfig> scenarios = spec.scenarios();
    if (list_only) {
      print_scenarios(scenarios);
      return kExitOk;
    }

    std::fprintf(stderr, "running %zu scenario(s) x %lld repetition(s) on %d thread(s)\n",
                 scenarios.size(), static_cast<long long>(spec.repetitions), threads);
    const auto results = dcres::run_sweep(scenarios, threads);
    dcres::emit_results(spec, results, out_dir);
    print_summary(results);
    std::fprintf(stderr, "results written to %s\n", out_dir.c_str());
    return kExitOk;
  } catch (const dcres::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const dcres::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
