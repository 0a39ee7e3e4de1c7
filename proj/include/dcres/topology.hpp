#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcres/error.hpp"

namespace dcres {

// Branching factors of the data-centre tree: aisles hold racks, racks hold
// chassis, chassis hold blades, blades host leaf services. The aisle count is
// not part of the shape; the tree grows as many aisles as the service count
// requires.
struct HierarchySpec {
  std::int64_t racks_per_aisle{8};
  std::int64_t chassis_per_rack{4};
  std::int64_t blades_per_chassis{16};
  std::int64_t services_per_blade{16};

  bool operator==(const HierarchySpec&) const = default;
};

// Hardware levels, root-most first. Failure can target any of the five.
enum class Level : int { Aisle = 0, Rack = 1, Chassis = 2, Blade = 3, Service = 4 };

inline constexpr int kLevelCount = 5;
inline constexpr std::array<Level, kLevelCount> kLevels = {
    Level::Aisle, Level::Rack, Level::Chassis, Level::Blade, Level::Service};

inline const char* level_name(Level level) {
  switch (level) {
    case Level::Aisle: return "aisle";
    case Level::Rack: return "rack";
    case Level::Chassis: return "chassis";
    case Level::Blade: return "blade";
    case Level::Service: return "service";
  }
  return "?";
}

// Per-level communication cost between two distinct services whose lowest
// common ancestor sits just above the given level.
inline constexpr std::array<std::int64_t, kLevelCount> kLevelCost = {
    10000,  // inter-aisle
    1000,   // inter-rack
    100,    // inter-chassis
    10,     // inter-blade
    1,      // inter-service, same blade
};

// Position of one service; components are 0-based within their parent.
// Lexicographic order on the five components is the canonical service order.
struct Address {
  std::int64_t aisle{};
  std::int64_t rack{};
  std::int64_t chassis{};
  std::int64_t blade{};
  std::int64_t service{};

  auto operator<=>(const Address&) const = default;
};

// The hierarchy tree with per-unit alive/failed status. Services are the
// leaves, numbered 0..service_count-1 in canonical address order; the last
// blade/chassis/rack/aisle may be partially populated. A unit exists iff it
// contains at least one service. Construction and the pure queries are
// side-effect-free; fail_unit mutates status and is meant to be driven from
// a single simulation run.
class Topology {
 public:
  Topology(const HierarchySpec& spec, std::int64_t service_count)
      : spec_(spec), n_services_(service_count) {
    if (spec.racks_per_aisle < 1 || spec.chassis_per_rack < 1 ||
        spec.blades_per_chassis < 1 || spec.services_per_blade < 1) {
      throw config_error("hierarchy: all four branching factors must be >= 1");
    }
    if (service_count < 1) {
      throw config_error("service count must be >= 1, got " +
                         std::to_string(service_count));
    }
    cap_[idx(Level::Service)] = 1;
    cap_[idx(Level::Blade)] = spec.services_per_blade;
    cap_[idx(Level::Chassis)] = spec.services_per_blade * spec.blades_per_chassis;
    cap_[idx(Level::Rack)] = cap_[idx(Level::Chassis)] * spec.chassis_per_rack;
    cap_[idx(Level::Aisle)] = cap_[idx(Level::Rack)] * spec.racks_per_aisle;
    for (Level level : kLevels) {
      const std::int64_t cap = cap_[idx(level)];
      count_[idx(level)] = (n_services_ + cap - 1) / cap;
      alive_[idx(level)] = count_[idx(level)];
      failed_[idx(level)].assign(static_cast<std::size_t>(count_[idx(level)]), 0);
    }
    alive_services_ = n_services_;
  }

  const HierarchySpec& spec() const { return spec_; }
  std::int64_t service_count() const { return n_services_; }

  // Services per full unit at the given level.
  std::int64_t unit_capacity(Level level) const { return cap_[idx(level)]; }

  // Number of existing units (>= 1 service) at the given level.
  std::int64_t unit_count(Level level) const { return count_[idx(level)]; }

  // Existing-unit counts for all five levels, indexed by Level. These are the
  // weights of the failure-type distribution.
  std::array<std::int64_t, kLevelCount> unit_counts() const { return count_; }

  // Total number of units across all levels (every node in the tree except
  // the root).
  std::int64_t unit_total() const {
    std::int64_t total = 0;
    for (Level level : kLevels) total += count_[idx(level)];
    return total;
  }

  std::int64_t alive_count(Level level) const { return alive_[idx(level)]; }
  std::int64_t alive_services() const { return alive_services_; }

  // Global index of the unit containing the service at the given level.
  std::int64_t unit_of(std::int64_t service, Level level) const {
    return service / cap_[idx(level)];
  }

  Address address_of(std::int64_t service) const {
    check_service(service);
    const auto& s = spec_;
    Address a;
    a.service = service % s.services_per_blade;
    a.blade = (service / cap_[idx(Level::Blade)]) % s.blades_per_chassis;
    a.chassis = (service / cap_[idx(Level::Chassis)]) % s.chassis_per_rack;
    a.rack = (service / cap_[idx(Level::Rack)]) % s.racks_per_aisle;
    a.aisle = service / cap_[idx(Level::Aisle)];
    return a;
  }

  std::int64_t service_index(const Address& a) const {
    if (a.aisle < 0 || a.rack < 0 || a.rack >= spec_.racks_per_aisle ||
        a.chassis < 0 || a.chassis >= spec_.chassis_per_rack || a.blade < 0 ||
        a.blade >= spec_.blades_per_chassis || a.service < 0 ||
        a.service >= spec_.services_per_blade) {
      throw std::out_of_range("address components out of hierarchy bounds");
    }
    const std::int64_t s = a.aisle * cap_[idx(Level::Aisle)] +
                           a.rack * cap_[idx(Level::Rack)] +
                           a.chassis * cap_[idx(Level::Chassis)] +
                           a.blade * cap_[idx(Level::Blade)] + a.service;
    check_service(s);
    return s;
  }

  // Communication cost between two services: 0 on the same service, otherwise
  // the Table-1 cost of the highest level at which the addresses diverge.
  // Symmetric; depends only on the divergence level.
  std::int64_t path_cost(std::int64_t a, std::int64_t b) const {
    check_service(a);
    check_service(b);
    if (a == b) return 0;
    for (Level level : kLevels) {
      if (a / cap_[idx(level)] != b / cap_[idx(level)]) return kLevelCost[idx(level)];
    }
    return kLevelCost[idx(Level::Service)];  // distinct services, same blade
  }

  std::int64_t path_cost(const Address& a, const Address& b) const {
    return path_cost(service_index(a), service_index(b));
  }

  // Half-open range [first, last) of service indices under a unit.
  std::pair<std::int64_t, std::int64_t> subtree_range(Level level,
                                                      std::int64_t unit) const {
    check_unit(level, unit);
    const std::int64_t cap = cap_[idx(level)];
    const std::int64_t first = unit * cap;
    const std::int64_t last = std::min(first + cap, n_services_);
    return {first, last};
  }

  // All services under the unit, canonical order.
  std::vector<Address> subtree_services(Level level, std::int64_t unit) const {
    const auto [first, last] = subtree_range(level, unit);
    std::vector<Address> out;
    out.reserve(static_cast<std::size_t>(last - first));
    for (std::int64_t s = first; s < last; ++s) out.push_back(address_of(s));
    return out;
  }

  // A unit is failed iff it was targeted by a failure event or any ancestor
  // was; fail_unit marks the whole subtree, so the stored flag is the closure.
  bool unit_failed(Level level, std::int64_t unit) const {
    check_unit(level, unit);
    return failed_[idx(level)][static_cast<std::size_t>(unit)] != 0;
  }

  bool service_alive(std::int64_t service) const {
    check_service(service);
    return failed_[idx(Level::Service)][static_cast<std::size_t>(service)] == 0;
  }

  // Marks the unit and its entire subtree failed. Returns the services that
  // just died, ascending; empty when the unit was already failed (no-op).
  std::vector<std::int64_t> fail_unit(Level level, std::int64_t unit) {
    check_unit(level, unit);
    std::vector<std::int64_t> newly_dead;
    if (failed_[idx(level)][static_cast<std::size_t>(unit)]) return newly_dead;
    const std::int64_t cap = cap_[idx(level)];
    for (Level sub : kLevels) {
      if (sub < level) continue;
      const std::int64_t sub_cap = cap_[idx(sub)];
      const std::int64_t first = unit * cap / sub_cap;
      const std::int64_t last =
          std::min((unit + 1) * cap / sub_cap, count_[idx(sub)]);
      auto& flags = failed_[idx(sub)];
      for (std::int64_t u = first; u < last; ++u) {
        if (flags[static_cast<std::size_t>(u)]) continue;
        flags[static_cast<std::size_t>(u)] = 1;
        --alive_[idx(sub)];
        if (sub == Level::Service) {
          --alive_services_;
          newly_dead.push_back(u);
        }
      }
    }
    return newly_dead;
  }

 private:
  static constexpr std::size_t idx(Level level) {
    return static_cast<std::size_t>(level);
  }

  void check_service(std::int64_t service) const {
    if (service < 0 || service >= n_services_) {
      throw std::out_of_range("service index " + std::to_string(service) +
                              " outside [0, " + std::to_string(n_services_) + ")");
    }
  }

  void check_unit(Level level, std::int64_t unit) const {
    if (unit < 0 || unit >= count_[idx(level)]) {
      throw std::out_of_range(std::string(level_name(level)) + " unit " +
                              std::to_string(unit) + " does not exist");
    }
  }

  HierarchySpec spec_;
  std::int64_t n_services_;
  std::array<std::int64_t, kLevelCount> cap_{};
  std::array<std::int64_t, kLevelCount> count_{};
  std::array<std::int64_t, kLevelCount> alive_{};
  std::array<std::vector<std::uint8_t>, kLevelCount> failed_;
  std::int64_t alive_services_{};
};

inline Topology build_topology(const HierarchySpec& spec, std::int64_t service_count) {
  return Topology(spec, service_count);
}

}  // namespace dcres
