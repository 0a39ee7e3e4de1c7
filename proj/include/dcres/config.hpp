#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dcres/error.hpp"
#include "dcres/topology.hpp"
#include "dcres/workload.hpp"

namespace dcres {

// A sweep: one list of values per parameter; the Cartesian product defines
// the scenarios. Scalars (duration, ticks, seed, repetitions) are shared by
// every scenario.
struct SweepSpec {
  std::vector<SchedulerKind> schedulers{SchedulerKind::Cluster};
  std::vector<HierarchySpec> hierarchies{HierarchySpec{}};
  std::vector<Sizing> sizings{Sizing::Variable};
  std::vector<std::int64_t> jobs{10};
  std::vector<std::int64_t> tasks{10};
  std::vector<std::int64_t> redundancy{3};
  std::vector<double> failure_fraction{0.05};
  double duration{1.0};
  std::int64_t ticks{100};
  std::uint64_t seed{12345};
  std::int64_t repetitions{30};

  bool operator==(const SweepSpec&) const = default;

  // Product in fixed nesting order: scheduler, hierarchy, sizing, jobs,
  // tasks, redundancy, failure_fraction (rightmost fastest). The position in
  // this order is the scenario id.
  std::vector<ScenarioConfig> scenarios() const {
    std::vector<ScenarioConfig> out;
    for (SchedulerKind sched : schedulers)
      for (const HierarchySpec& hier : hierarchies)
        for (Sizing sizing : sizings)
          for (std::int64_t j : jobs)
            for (std::int64_t t : tasks)
              for (std::int64_t r : redundancy)
                for (double f : failure_fraction) {
                  ScenarioConfig config;
                  config.scheduler = sched;
                  config.hierarchy = hier;
                  config.sizing = sizing;
                  config.jobs = j;
                  config.tasks = t;
                  config.redundancy = r;
                  config.failure_fraction = f;
                  config.duration = duration;
                  config.ticks = ticks;
                  config.base_seed = seed;
                  config.repetitions = repetitions;
                  config.validate();
                  out.push_back(config);
                }
    return out;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

inline std::int64_t parse_int(std::string_view key, std::string_view value) {
  std::int64_t out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw config_error(std::string(key) + ": '" + std::string(value) +
                       "' is not an integer");
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw config_error(std::string(key) + ": '" + std::string(value) +
                       "' is not an unsigned integer");
  }
  return out;
}

inline double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(std::string(value), &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw config_error(std::string(key) + ": '" + std::string(value) +
                       "' is not a number");
  }
}

}  // namespace detail

// Accepts "a-b-c-d" (e.g. "8-4-16-16"), the shorthands "h-5" / "h-10" (one
// factor replicated four times), and the prefixed long form "h-a-b-c-d".
inline HierarchySpec parse_hierarchy(std::string_view text) {
  std::string_view body = detail::trim(text);
  if (body.size() >= 2 && (body[0] == 'h' || body[0] == 'H') && body[1] == '-') {
    body.remove_prefix(2);
  }
  const auto parts = detail::split(body, '-');
  std::vector<std::int64_t> factors;
  for (std::string_view part : parts) {
    if (part.empty()) {
      throw config_error("hierarchy: malformed value '" + std::string(text) +
                         "' (expected a-b-c-d, h-a-b-c-d, or h-n)");
    }
    factors.push_back(detail::parse_int("hierarchy", part));
  }
  HierarchySpec spec;
  if (factors.size() == 1) {
    spec.racks_per_aisle = spec.chassis_per_rack = spec.blades_per_chassis =
        spec.services_per_blade = factors[0];
  } else if (factors.size() == 4) {
    spec.racks_per_aisle = factors[0];
    spec.chassis_per_rack = factors[1];
    spec.blades_per_chassis = factors[2];
    spec.services_per_blade = factors[3];
  } else {
    throw config_error("hierarchy: malformed value '" + std::string(text) +
                       "' (expected a-b-c-d, h-a-b-c-d, or h-n)");
  }
  if (spec.racks_per_aisle < 1 || spec.chassis_per_rack < 1 ||
      spec.blades_per_chassis < 1 || spec.services_per_blade < 1) {
    throw config_error("hierarchy: all four branching factors must be >= 1");
  }
  return spec;
}

inline std::string format_hierarchy(const HierarchySpec& spec) {
  return std::to_string(spec.racks_per_aisle) + "-" +
         std::to_string(spec.chassis_per_rack) + "-" +
         std::to_string(spec.blades_per_chassis) + "-" +
         std::to_string(spec.services_per_blade);
}

inline SchedulerKind parse_scheduler(std::string_view text) {
  if (text == "random") return SchedulerKind::Random;
  if (text == "pack") return SchedulerKind::Pack;
  if (text == "cluster") return SchedulerKind::Cluster;
  throw config_error("scheduler: unknown value '" + std::string(text) +
                     "' (expected one of random, pack, cluster)");
}

inline Sizing parse_sizing(std::string_view text) {
  if (text == "variable") return Sizing::Variable;
  if (text == "fixed") return Sizing::Fixed;
  throw config_error("sizing: unknown value '" + std::string(text) +
                     "' (expected one of variable, fixed)");
}

// Integer list: comma-separated values where each element may be a range
// "a..b" (inclusive, ascending), e.g. "1..3,5,7..10".
inline std::vector<std::int64_t> parse_int_list(std::string_view key,
                                                std::string_view value) {
  std::vector<std::int64_t> out;
  for (std::string_view item : detail::split(value, ',')) {
    if (item.empty()) {
      throw config_error(std::string(key) + ": empty list element");
    }
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_int(key, item));
      continue;
    }
    const std::int64_t lo =
        detail::parse_int(key, detail::trim(item.substr(0, dots)));
    const std::int64_t hi =
        detail::parse_int(key, detail::trim(item.substr(dots + 2)));
    if (hi < lo) {
      throw config_error(std::string(key) + ": descending range '" +
                         std::string(item) + "'");
    }
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw config_error(std::string(key) + ": empty value");
  return out;
}

inline std::vector<double> parse_double_list(std::string_view key,
                                             std::string_view value) {
  std::vector<double> out;
  for (std::string_view item : detail::split(value, ',')) {
    if (item.empty()) throw config_error(std::string(key) + ": empty list element");
    out.push_back(detail::parse_double(key, item));
  }
  if (out.empty()) throw config_error(std::string(key) + ": empty value");
  return out;
}

// Applies one `key = value` assignment to the spec. Shared by the file parser
// and the CLI flag overrides so both accept identical syntax.
inline void apply_config_entry(SweepSpec& spec, std::string_view key,
                               std::string_view value) {
  if (key == "scheduler") {
    spec.schedulers.clear();
    for (std::string_view item : detail::split(value, ',')) {
      spec.schedulers.push_back(parse_scheduler(item));
    }
  } else if (key == "hierarchy") {
    spec.hierarchies.clear();
    for (std::string_view item : detail::split(value, ',')) {
      spec.hierarchies.push_back(parse_hierarchy(item));
    }
  } else if (key == "sizing") {
    spec.sizings.clear();
    for (std::string_view item : detail::split(value, ',')) {
      spec.sizings.push_back(parse_sizing(item));
    }
  } else if (key == "jobs") {
    spec.jobs = parse_int_list(key, value);
    for (std::int64_t v : spec.jobs)
      if (v < 1) throw config_error("jobs: values must be >= 1");
  } else if (key == "tasks") {
    spec.tasks = parse_int_list(key, value);
    for (std::int64_t v : spec.tasks)
      if (v < 1) throw config_error("tasks: values must be >= 1");
  } else if (key == "redundancy") {
    spec.redundancy = parse_int_list(key, value);
    for (std::int64_t v : spec.redundancy)
      if (v < 1) throw config_error("redundancy: values must be >= 1");
  } else if (key == "failure_fraction") {
    spec.failure_fraction = parse_double_list(key, value);
    for (double v : spec.failure_fraction) {
      if (!(v > 0.0 && v < 1.0)) {
        throw config_error(
            "failure_fraction: values must lie strictly between 0 and 1");
      }
    }
  } else if (key == "duration") {
    spec.duration = detail::parse_double(key, value);
    if (!(spec.duration > 0.0)) throw config_error("duration: must be > 0");
  } else if (key == "ticks") {
    spec.ticks = detail::parse_int(key, value);
    if (spec.ticks < 1) throw config_error("ticks: must be >= 1");
  } else if (key == "seed") {
    spec.seed = detail::parse_u64(key, value);
  } else if (key == "repetitions") {
    spec.repetitions = detail::parse_int(key, value);
    if (spec.repetitions < 1) throw config_error("repetitions: must be >= 1");
  } else {
    throw config_error(
        "unknown config key '" + std::string(key) +
        "' (expected one of scheduler, hierarchy, sizing, jobs, tasks, "
        "redundancy, failure_fraction, duration, ticks, seed, repetitions)");
  }
}

// Flat `key = value` lines; '#' starts a comment; blank lines ignored.
inline SweepSpec parse_config_text(std::string_view text) {
  SweepSpec spec;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw config_error("line " + std::to_string(line_no) +
                         ": expected 'key = value', got '" + std::string(line) + "'");
    }
    apply_config_entry(spec, detail::trim(line.substr(0, eq)),
                       detail::trim(line.substr(eq + 1)));
  }
  return spec;
}

inline SweepSpec parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

// Shortest decimal form that parses back to the same double.
inline std::string format_double_exact(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

// Renders the effective configuration so that parsing it back reproduces the
// spec exactly.
inline std::string render_config(const SweepSpec& spec) {
  std::ostringstream out;
  auto join_ints = [](const std::vector<std::int64_t>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(values[i]);
    }
    return s;
  };
  out << "# effective configuration\n";
  out << "scheduler = ";
  for (std::size_t i = 0; i < spec.schedulers.size(); ++i) {
    out << (i ? "," : "") << scheduler_name(spec.schedulers[i]);
  }
  out << "\nhierarchy = ";
  for (std::size_t i = 0; i < spec.hierarchies.size(); ++i) {
    out << (i ? "," : "") << format_hierarchy(spec.hierarchies[i]);
  }
  out << "\nsizing = ";
  for (std::size_t i = 0; i < spec.sizings.size(); ++i) {
    out << (i ? "," : "") << sizing_name(spec.sizings[i]);
  }
  out << "\njobs = " << join_ints(spec.jobs);
  out << "\ntasks = " << join_ints(spec.tasks);
  out << "\nredundancy = " << join_ints(spec.redundancy);
  out << "\nfailure_fraction = ";
  for (std::size_t i = 0; i < spec.failure_fraction.size(); ++i) {
    out << (i ? "," : "") << format_double_exact(spec.failure_fraction[i]);
  }
  out << "\nduration = " << format_double_exact(spec.duration);
  out << "\nticks = " << spec.ticks;
  out << "\nseed = " << spec.seed;
  out << "\nrepetitions = " << spec.repetitions;
  out << "\n";
  return out.str();
}

}  // namespace dcres
