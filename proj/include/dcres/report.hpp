#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "dcres/config.hpp"
#include "dcres/error.hpp"
#include "dcres/experiment.hpp"

namespace dcres {

// Up to 6 significant digits, the serialization used by every CSV field.
inline std::string format_metric(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

inline constexpr const char* kRunsHeader =
    "scenario_id,scheduler,hierarchy,sizing,J,T,R,f_hw,rep,seed,rejected,"
    "jobs_succeeded,S_J,C_J,events_aisle,events_rack,events_chassis,"
    "events_blade,events_service";

inline constexpr const char* kSummaryHeader =
    "scenario_id,scheduler,hierarchy,sizing,J,T,R,f_hw,reps_total,"
    "reps_rejected,S_J_mean,S_J_ci95,C_J_mean,C_J_ci95";

namespace detail {

inline std::string scenario_prefix(std::size_t scenario_id,
                                   const ScenarioConfig& config) {
  return std::to_string(scenario_id) + "," + scheduler_name(config.scheduler) +
         "," + format_hierarchy(config.hierarchy) + "," +
         sizing_name(config.sizing) + "," + std::to_string(config.jobs) + "," +
         std::to_string(config.tasks) + "," + std::to_string(config.redundancy) +
         "," + format_metric(config.failure_fraction);
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write '" + path.string() + "'");
  return out;
}

// Which numeric parameters the sweep actually varies, in plot-axis priority
// order.
struct Axis {
  std::string key;                       // file-name suffix
  std::string column;                    // header of the x column
  double (*value)(const ScenarioConfig&);  // axis value of a scenario
};

inline std::vector<Axis> sweep_axes(const SweepSpec& spec) {
  std::vector<Axis> axes;
  if (spec.redundancy.size() > 1) {
    axes.push_back(Axis{"r", "R", [](const ScenarioConfig& c) {
                          return static_cast<double>(c.redundancy);
                        }});
  }
  if (spec.failure_fraction.size() > 1) {
    axes.push_back(Axis{"fhw", "f_hw", [](const ScenarioConfig& c) {
                          return c.failure_fraction;
                        }});
  }
  if (spec.tasks.size() > 1) {
    axes.push_back(Axis{"t", "T", [](const ScenarioConfig& c) {
                          return static_cast<double>(c.tasks);
                        }});
  }
  if (spec.jobs.size() > 1) {
    axes.push_back(Axis{"j", "J", [](const ScenarioConfig& c) {
                          return static_cast<double>(c.jobs);
                        }});
  }
  return axes;
}

// Series label: scheduler plus whatever else varies besides the axis.
inline std::string series_label(const SweepSpec& spec, const ScenarioConfig& config,
                                const std::string& axis_key) {
  std::string label = scheduler_name(config.scheduler);
  if (spec.hierarchies.size() > 1) label += "_" + format_hierarchy(config.hierarchy);
  if (spec.sizings.size() > 1) label += std::string("_") + sizing_name(config.sizing);
  if (spec.jobs.size() > 1 && axis_key != "j") {
    label += "_J" + std::to_string(config.jobs);
  }
  if (spec.tasks.size() > 1 && axis_key != "t") {
    label += "_T" + std::to_string(config.tasks);
  }
  if (spec.redundancy.size() > 1 && axis_key != "r") {
    label += "_R" + std::to_string(config.redundancy);
  }
  if (spec.failure_fraction.size() > 1 && axis_key != "fhw") {
    label += "_f" + format_metric(config.failure_fraction);
  }
  return label;
}

struct PlotCell {
  bool defined{false};
  double mean{0.0};
  double ci95{0.0};
};

inline void write_plot_file(const std::filesystem::path& path,
                            const std::string& x_column,
                            const std::vector<double>& xs,
                            const std::vector<std::string>& series,
                            const std::map<std::pair<std::string, double>, PlotCell>& cells) {
  auto out = open_for_write(path);
  out << x_column;
  for (const std::string& s : series) out << "," << s << "_mean," << s << "_ci95";
  out << "\n";
  for (double x : xs) {
    out << format_metric(x);
    for (const std::string& s : series) {
      const auto it = cells.find({s, x});
      if (it != cells.end() && it->second.defined) {
        out << "," << format_metric(it->second.mean) << ","
            << format_metric(it->second.ci95);
      } else {
        out << ",,";
      }
    }
    out << "\n";
  }
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

}  // namespace detail

// Writes runs.csv, summary.csv, the effective-config echo, and one plot-data
// file per (metric, swept numeric axis) pair into `out_dir` (created if
// missing). When redundancy is an axis, an additional C_J file normalized to
// the largest R is emitted for series whose reference cost is defined.
inline void emit_results(const SweepSpec& spec,
                         const std::vector<ScenarioResult>& results,
                         const std::filesystem::path& out_dir) {
  if (results.empty()) {
    throw config_error("no scenarios to report");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw io_error("cannot create output directory '" + out_dir.string() + "'");

  {
    auto runs = detail::open_for_write(out_dir / "runs.csv");
    runs << kRunsHeader << "\n";
    for (std::size_t id = 0; id < results.size(); ++id) {
      const ScenarioResult& sr = results[id];
      const std::string prefix = detail::scenario_prefix(id, sr.config);
      for (std::size_t rep = 0; rep < sr.runs.size(); ++rep) {
        const RunResult& run = sr.runs[rep];
        runs << prefix << "," << rep << "," << run.seed << ","
             << (run.rejected ? 1 : 0) << "," << run.jobs_succeeded << ","
             << format_metric(run.sj) << ",";
        if (run.cj) runs << format_metric(*run.cj);
        for (Level level : kLevels) {
          runs << ","
               << run.failure_event_counts[static_cast<std::size_t>(level)];
        }
        runs << "\n";
      }
    }
    if (!runs) throw io_error("failed writing runs.csv");
  }

  {
    auto summary = detail::open_for_write(out_dir / "summary.csv");
    summary << kSummaryHeader << "\n";
    for (std::size_t id = 0; id < results.size(); ++id) {
      const ScenarioResult& sr = results[id];
      const Aggregate& agg = sr.aggregate;
      summary << detail::scenario_prefix(id, sr.config) << ","
              << agg.reps_total << "," << agg.reps_rejected << ",";
      if (agg.sj) {
        summary << format_metric(agg.sj->mean) << ","
                << format_metric(agg.sj->ci95);
      } else {
        summary << ",";
      }
      summary << ",";
      if (agg.cj) {
        summary << format_metric(agg.cj->mean) << ","
                << format_metric(agg.cj->ci95);
      } else {
        summary << ",";
      }
      summary << "\n";
    }
    if (!summary) throw io_error("failed writing summary.csv");
  }

  {
    auto echo = detail::open_for_write(out_dir / "effective-config");
    echo << render_config(spec);
    if (!echo) throw io_error("failed writing effective-config");
  }

  for (const detail::Axis& axis : detail::sweep_axes(spec)) {
    std::vector<double> xs;
    std::vector<std::string> series;
    std::map<std::pair<std::string, double>, detail::PlotCell> sj_cells;
    std::map<std::pair<std::string, double>, detail::PlotCell> cj_cells;
    for (const ScenarioResult& sr : results) {
      const double x = axis.value(sr.config);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
      const std::string label = detail::series_label(spec, sr.config, axis.key);
      if (std::find(series.begin(), series.end(), label) == series.end()) {
        series.push_back(label);
      }
      if (sr.aggregate.sj) {
        sj_cells[{label, x}] =
            detail::PlotCell{true, sr.aggregate.sj->mean, sr.aggregate.sj->ci95};
      }
      if (sr.aggregate.cj) {
        cj_cells[{label, x}] =
            detail::PlotCell{true, sr.aggregate.cj->mean, sr.aggregate.cj->ci95};
      }
    }
    std::sort(xs.begin(), xs.end());
    detail::write_plot_file(out_dir / ("plot_sj_vs_" + axis.key + ".csv"),
                            axis.column, xs, series, sj_cells);
    detail::write_plot_file(out_dir / ("plot_cj_vs_" + axis.key + ".csv"),
                            axis.column, xs, series, cj_cells);

    if (axis.key == "r") {
      std::map<std::pair<std::string, double>, detail::PlotCell> norm_cells;
      for (const std::string& label : series) {
        std::map<std::int64_t, double> costs;
        bool complete = true;
        for (double x : xs) {
          const auto it = cj_cells.find({label, x});
          if (it == cj_cells.end() || !it->second.defined) {
            complete = false;
            break;
          }
          costs[static_cast<std::int64_t>(x)] = it->second.mean;
        }
        if (!complete || costs.empty() || !(costs.rbegin()->second > 0.0)) continue;
        for (const auto& [r, v] : normalize_costs(costs)) {
          norm_cells[{label, static_cast<double>(r)}] =
              detail::PlotCell{true, v, 0.0};
        }
      }
      detail::write_plot_file(out_dir / "plot_cj_norm_vs_r.csv", axis.column,
                              xs, series, norm_cells);
    }
  }
}

}  // namespace dcres
