#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dcres/error.hpp"
#include "dcres/rng.hpp"
#include "dcres/topology.hpp"
#include "dcres/workload.hpp"

namespace dcres {

// Total injective map from task instance to service; capacity is one
// instance per service.
class Placement {
 public:
  Placement(std::int64_t instance_count, std::int64_t service_count)
      : service_of_(static_cast<std::size_t>(instance_count), -1),
        instance_at_(static_cast<std::size_t>(service_count), -1) {}

  std::int64_t instance_count() const {
    return static_cast<std::int64_t>(service_of_.size());
  }
  std::int64_t service_count() const {
    return static_cast<std::int64_t>(instance_at_.size());
  }

  std::int64_t service_of(std::int64_t instance) const {
    return service_of_[static_cast<std::size_t>(instance)];
  }

  // Instance hosted on the service, or -1 when the service is free.
  std::int64_t instance_at(std::int64_t service) const {
    return instance_at_[static_cast<std::size_t>(service)];
  }

  bool service_free(std::int64_t service) const {
    return instance_at_[static_cast<std::size_t>(service)] < 0;
  }

  void assign(std::int64_t instance, std::int64_t service) {
    if (instance_at_[static_cast<std::size_t>(service)] >= 0) {
      throw std::logic_error("service " + std::to_string(service) +
                             " already occupied");
    }
    if (service_of_[static_cast<std::size_t>(instance)] >= 0) {
      throw std::logic_error("instance " + std::to_string(instance) +
                             " already placed");
    }
    service_of_[static_cast<std::size_t>(instance)] = service;
    instance_at_[static_cast<std::size_t>(service)] = instance;
  }

  bool total() const {
    for (std::int64_t s : service_of_)
      if (s < 0) return false;
    return true;
  }

 private:
  std::vector<std::int64_t> service_of_;
  std::vector<std::int64_t> instance_at_;
};

namespace detail {

inline void require_capacity(const JobSet& jobs, const Topology& topology) {
  if (topology.service_count() < jobs.instance_count()) {
    throw config_error("placement needs " + std::to_string(jobs.instance_count()) +
                       " services but the data centre has only " +
                       std::to_string(topology.service_count()));
  }
}

// Tracks free-service counts per unit at every level while a placement is
// being built. Schedulers run before the clock starts, so every service is
// alive; only occupancy matters here.
class FreeSpace {
 public:
  explicit FreeSpace(const Topology& topology) : topo_(topology) {
    for (Level level : kLevels) {
      auto& counts = free_[static_cast<std::size_t>(level)];
      counts.resize(static_cast<std::size_t>(topology.unit_count(level)));
      for (std::int64_t u = 0; u < topology.unit_count(level); ++u) {
        const auto [first, last] = topology.subtree_range(level, u);
        counts[static_cast<std::size_t>(u)] = last - first;
      }
    }
  }

  std::int64_t free_in(Level level, std::int64_t unit) const {
    return free_[static_cast<std::size_t>(level)][static_cast<std::size_t>(unit)];
  }

  void occupy(std::int64_t service) {
    for (Level level : kLevels) {
      --free_[static_cast<std::size_t>(level)]
             [static_cast<std::size_t>(topo_.unit_of(service, level))];
    }
  }

  std::vector<std::int64_t> units_with_at_least(Level level, std::int64_t want) const {
    std::vector<std::int64_t> out;
    const auto& counts = free_[static_cast<std::size_t>(level)];
    for (std::int64_t u = 0; u < static_cast<std::int64_t>(counts.size()); ++u) {
      if (counts[static_cast<std::size_t>(u)] >= want) out.push_back(u);
    }
    return out;
  }

 private:
  const Topology& topo_;
  std::array<std::vector<std::int64_t>, kLevelCount> free_;
};

}  // namespace detail

// Random: every instance lands on a service drawn uniformly without
// replacement from the whole data centre, ignoring job and redundancy
// structure.
inline Placement schedule_random(const JobSet& jobs, const Topology& topology,
                                 RngStream& rng) {
  detail::require_capacity(jobs, topology);
  const std::int64_t n = topology.service_count();
  const std::int64_t m = jobs.instance_count();
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  Placement placement(m, n);
  // partial Fisher-Yates: the first m slots become the sample
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int64_t k =
        i + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(k)]);
    placement.assign(i, pool[static_cast<std::size_t>(i)]);
  }
  return placement;
}

// Pack: deterministic, minimum hardware footprint. Instances are enumerated
// job-major, then redundancy column, then task row, and assigned to services
// in canonical address order, so each redundancy group occupies a contiguous
// run of services.
inline Placement schedule_pack(const JobSet& jobs, const Topology& topology) {
  detail::require_capacity(jobs, topology);
  Placement placement(jobs.instance_count(), topology.service_count());
  std::int64_t next_service = 0;
  for (std::int64_t j = 0; j < jobs.jobs(); ++j) {
    for (std::int64_t r = 0; r < jobs.redundancy(); ++r) {
      for (std::int64_t t = 0; t < jobs.tasks(); ++t) {
        placement.assign(jobs.index_of(j, t, r), next_service++);
      }
    }
  }
  return placement;
}

// Cluster: each redundancy group (the T rows of one job column) is co-located
// on one unit of the smallest level whose full capacity fits the group; the
// unit is drawn uniformly among those with enough free services. When no unit
// at the chosen level currently has room the search widens one level at a
// time, and once even the aisles cannot take the whole group it falls back to
// the overflow rule: fill the unit with the most free space, then settle the
// remainder one by one on the free service closest (by summed path cost) to
// the already-placed members.
inline Placement schedule_cluster(const JobSet& jobs, const Topology& topology,
                                  RngStream& rng) {
  detail::require_capacity(jobs, topology);
  const std::int64_t group_size = jobs.tasks();
  Placement placement(jobs.instance_count(), topology.service_count());
  detail::FreeSpace free_space(topology);

  // smallest level whose full-unit capacity fits a whole group, if any
  Level fit_level = Level::Service;
  bool fits_somewhere = false;
  for (int l = kLevelCount - 1; l >= 0; --l) {
    const Level level = static_cast<Level>(l);
    if (topology.unit_capacity(level) >= group_size) {
      fit_level = level;
      fits_somewhere = true;
      break;
    }
  }

  auto place_on_unit = [&](Level level, std::int64_t unit, std::int64_t job,
                           std::int64_t copy, std::int64_t from_task,
                           std::int64_t upto) {
    // rows from_task..upto-1 onto the unit's free services, canonical order
    const auto [first, last] = topology.subtree_range(level, unit);
    std::int64_t t = from_task;
    for (std::int64_t s = first; s < last && t < upto; ++s) {
      if (!placement.service_free(s)) continue;
      placement.assign(jobs.index_of(job, t, copy), s);
      free_space.occupy(s);
      ++t;
    }
    return t;
  };

  for (std::int64_t j = 0; j < jobs.jobs(); ++j) {
    for (std::int64_t r = 0; r < jobs.redundancy(); ++r) {
      bool placed = false;
      if (fits_somewhere) {
        for (int l = static_cast<int>(fit_level); l >= 0 && !placed; --l) {
          const Level level = static_cast<Level>(l);
          const auto eligible = free_space.units_with_at_least(level, group_size);
          if (eligible.empty()) continue;
          const std::int64_t unit =
              eligible[rng.bounded(static_cast<std::uint64_t>(eligible.size()))];
          place_on_unit(level, unit, j, r, 0, group_size);
          placed = true;
        }
      }
      if (placed) continue;

      // Overflow: no unit anywhere has room for the whole group. The most
      // free space always sits at aisle granularity; ties go to the lowest
      // index.
      std::int64_t best_aisle = 0;
      for (std::int64_t u = 1; u < topology.unit_count(Level::Aisle); ++u) {
        if (free_space.free_in(Level::Aisle, u) >
            free_space.free_in(Level::Aisle, best_aisle)) {
          best_aisle = u;
        }
      }
      const std::int64_t placed_rows =
          place_on_unit(Level::Aisle, best_aisle, j, r, 0, group_size);

      for (std::int64_t t = placed_rows; t < group_size; ++t) {
        std::int64_t best_service = -1;
        std::int64_t best_cost = -1;
        for (std::int64_t s = 0; s < topology.service_count(); ++s) {
          if (!placement.service_free(s)) continue;
          std::int64_t cost = 0;
          for (std::int64_t prev = 0; prev < t; ++prev) {
            cost += topology.path_cost(
                s, placement.service_of(jobs.index_of(j, prev, r)));
          }
          if (best_service < 0 || cost < best_cost) {
            best_service = s;
            best_cost = cost;
          }
        }
        placement.assign(jobs.index_of(j, t, r), best_service);
        free_space.occupy(best_service);
      }
    }
  }
  return placement;
}

inline Placement schedule(SchedulerKind kind, const JobSet& jobs,
                          const Topology& topology, RngStream& rng) {
  switch (kind) {
    case SchedulerKind::Random: return schedule_random(jobs, topology, rng);
    case SchedulerKind::Pack: return schedule_pack(jobs, topology);
    case SchedulerKind::Cluster: return schedule_cluster(jobs, topology, rng);
  }
  throw config_error("unknown scheduler");
}

}  // namespace dcres
