#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dcres/engine.hpp"
#include "dcres/stats.hpp"
#include "dcres/workload.hpp"

namespace dcres {

// Mean +/- 95% CI half-width of one metric.
struct MetricSummary {
  double mean{0.0};
  double ci95{0.0};
};

// Cross-repetition summary of one scenario. Rejected runs are excluded from
// both metrics; sj is present when at least one run survived the filter, cj
// when at least one surviving run completed a job. A scenario whose runs were
// all rejected is unreportable but still carries its counts.
struct Aggregate {
  ScenarioConfig config;
  std::int64_t reps_total{0};
  std::int64_t reps_rejected{0};
  std::optional<MetricSummary> sj;
  std::optional<MetricSummary> cj;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<RunResult> runs;  // ordered by repetition index
  Aggregate aggregate;
};

inline Aggregate aggregate_runs(const ScenarioConfig& config,
                                const std::vector<RunResult>& runs) {
  Aggregate agg;
  agg.config = config;
  agg.reps_total = static_cast<std::int64_t>(runs.size());
  std::vector<double> sj_values;
  std::vector<double> cj_values;
  for (const RunResult& run : runs) {
    if (run.rejected) {
      ++agg.reps_rejected;
      continue;
    }
    sj_values.push_back(run.sj);
    if (run.cj) cj_values.push_back(*run.cj);
  }
  if (!sj_values.empty()) {
    const auto [mean, ci] = aggregate(sj_values);
    agg.sj = MetricSummary{mean, ci};
  }
  if (!cj_values.empty()) {
    const auto [mean, ci] = aggregate(cj_values);
    agg.cj = MetricSummary{mean, ci};
  }
  return agg;
}

// Runs `repetitions` independent runs with seeds base_seed + rep. Workers
// only race on the task counter, so reruns reproduce every row bit for bit
// regardless of thread count.
inline std::vector<RunResult> run_repetitions(const ScenarioConfig& config,
                                              std::int64_t repetitions,
                                              int threads = 1) {
  if (repetitions < 1) throw config_error("repetitions must be >= 1");
  std::vector<RunResult> runs(static_cast<std::size_t>(repetitions));
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(repetitions)));
  if (workers == 1) {
    for (std::int64_t rep = 0; rep < repetitions; ++rep) {
      runs[static_cast<std::size_t>(rep)] =
          run_simulation(config, config.base_seed + static_cast<std::uint64_t>(rep));
    }
    return runs;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t rep = next.fetch_add(1);
      if (rep >= repetitions) return;
      runs[static_cast<std::size_t>(rep)] =
          run_simulation(config, config.base_seed + static_cast<std::uint64_t>(rep));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return runs;
}

inline Aggregate run_scenario(const ScenarioConfig& config,
                              std::int64_t repetitions, int threads = 1) {
  return aggregate_runs(config, run_repetitions(config, repetitions, threads));
}

// Executes a whole sweep, parallelising across (scenario, repetition) pairs.
// Output order is by scenario then repetition, independent of completion
// order.
inline std::vector<ScenarioResult> run_sweep(
    const std::vector<ScenarioConfig>& scenarios, int threads = 1) {
  std::vector<ScenarioResult> results(scenarios.size());
  struct Task {
    std::size_t scenario;
    std::int64_t rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    scenarios[i].validate();
    results[i].config = scenarios[i];
    results[i].runs.resize(static_cast<std::size_t>(scenarios[i].repetitions));
    for (std::int64_t rep = 0; rep < scenarios[i].repetitions; ++rep) {
      tasks.push_back(Task{i, rep});
    }
  }
  const int workers = std::max(
      1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      const ScenarioConfig& config = scenarios[task.scenario];
      results[task.scenario].runs[static_cast<std::size_t>(task.rep)] =
          run_simulation(config,
                         config.base_seed + static_cast<std::uint64_t>(task.rep));
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& result : results) {
    result.aggregate = aggregate_runs(result.config, result.runs);
  }
  return results;
}

// Fig.-10 style normalization: divide a redundancy -> C_J series by its value
// at the largest R. The reference value must exist and be positive.
inline std::map<std::int64_t, double> normalize_costs(
    const std::map<std::int64_t, double>& series) {
  if (series.empty()) {
    throw std::invalid_argument("normalize_costs: empty series");
  }
  const double reference = series.rbegin()->second;
  if (!(reference > 0.0)) {
    throw std::invalid_argument("normalize_costs: reference C_J at R_max must be > 0");
  }
  std::map<std::int64_t, double> out;
  for (const auto& [r, value] : series) out[r] = value / reference;
  return out;
}

}  // namespace dcres
