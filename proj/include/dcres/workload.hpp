#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcres/error.hpp"
#include "dcres/topology.hpp"

namespace dcres {

enum class Sizing { Variable, Fixed };
enum class SchedulerKind { Random, Pack, Cluster };

// One experimental scenario: a {J, T, R} configuration plus the knobs that
// drive a run. All J jobs are scheduled at t=0 and run to the end of the
// (normalized) duration; failed instances are never respawned.
struct ScenarioConfig {
  std::int64_t jobs{10};
  std::int64_t tasks{10};
  std::int64_t redundancy{3};
  double failure_fraction{0.05};
  HierarchySpec hierarchy{};
  Sizing sizing{Sizing::Variable};
  SchedulerKind scheduler{SchedulerKind::Cluster};
  double duration{1.0};
  std::int64_t ticks{100};
  std::uint64_t base_seed{12345};
  std::int64_t repetitions{30};

  bool operator==(const ScenarioConfig&) const = default;

  void validate() const {
    if (jobs < 1) throw config_error("jobs must be >= 1");
    if (tasks < 1) throw config_error("tasks must be >= 1");
    if (redundancy < 1) throw config_error("redundancy must be >= 1");
    if (!(failure_fraction > 0.0 && failure_fraction < 1.0)) {
      throw config_error("failure_fraction must lie strictly between 0 and 1");
    }
    if (hierarchy.racks_per_aisle < 1 || hierarchy.chassis_per_rack < 1 ||
        hierarchy.blades_per_chassis < 1 || hierarchy.services_per_blade < 1) {
      throw config_error("hierarchy: all four branching factors must be >= 1");
    }
    if (!(duration > 0.0)) throw config_error("duration must be > 0");
    if (ticks < 1) throw config_error("ticks must be >= 1");
    if (repetitions < 1) throw config_error("repetitions must be >= 1");
  }
};

// Data-centre size from the sizing mode: variable scales with the workload
// (|DC| = 2 J T R, half the services stay free at schedule time), fixed is
// independent of redundancy (|DC| = 20 J T).
inline std::int64_t derive_dc_size(const ScenarioConfig& config) {
  if (config.sizing == Sizing::Variable) {
    return 2 * config.jobs * config.tasks * config.redundancy;
  }
  return 20 * config.jobs * config.tasks;
}

// Identifies one task instance: row `task` of job `job`, redundancy column
// `copy`.
struct InstanceId {
  std::int64_t job{};
  std::int64_t task{};
  std::int64_t copy{};

  bool operator==(const InstanceId&) const = default;
};

// The J x T x R instance matrix. Instances carry no state of their own here;
// liveness lives in a parallel vector indexed by the linear instance index.
class JobSet {
 public:
  JobSet(std::int64_t jobs, std::int64_t tasks, std::int64_t redundancy)
      : jobs_(jobs), tasks_(tasks), redundancy_(redundancy) {
    if (jobs < 1 || tasks < 1 || redundancy < 1) {
      throw config_error("job set dimensions must all be >= 1");
    }
  }

  std::int64_t jobs() const { return jobs_; }
  std::int64_t tasks() const { return tasks_; }
  std::int64_t redundancy() const { return redundancy_; }

  // #T = J * T * R
  std::int64_t instance_count() const { return jobs_ * tasks_ * redundancy_; }

  std::int64_t index_of(std::int64_t job, std::int64_t task, std::int64_t copy) const {
    return (job * tasks_ + task) * redundancy_ + copy;
  }

  std::int64_t index_of(const InstanceId& id) const {
    return index_of(id.job, id.task, id.copy);
  }

  InstanceId instance_at(std::int64_t index) const {
    InstanceId id;
    id.copy = index % redundancy_;
    id.task = (index / redundancy_) % tasks_;
    id.job = index / (redundancy_ * tasks_);
    return id;
  }

 private:
  std::int64_t jobs_;
  std::int64_t tasks_;
  std::int64_t redundancy_;
};

// Eq.-2 style failure predicate: a job fails iff some task row has lost all
// of its R copies. `alive` is indexed by linear instance index and must cover
// the whole job set. Monotone: killing more instances never revives a job.
inline bool job_failed(const JobSet& jobs, std::int64_t job,
                       const std::vector<std::uint8_t>& alive) {
  for (std::int64_t t = 0; t < jobs.tasks(); ++t) {
    bool row_alive = false;
    for (std::int64_t r = 0; r < jobs.redundancy(); ++r) {
      if (alive[static_cast<std::size_t>(jobs.index_of(job, t, r))]) {
        row_alive = true;
        break;
      }
    }
    if (!row_alive) return true;
  }
  return false;
}

inline const char* scheduler_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Random: return "random";
    case SchedulerKind::Pack: return "pack";
    case SchedulerKind::Cluster: return "cluster";
  }
  return "?";
}

inline const char* sizing_name(Sizing sizing) {
  return sizing == Sizing::Variable ? "variable" : "fixed";
}

}  // namespace dcres
