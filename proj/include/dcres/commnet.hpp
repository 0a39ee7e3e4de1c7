#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dcres/placement.hpp"
#include "dcres/topology.hpp"
#include "dcres/workload.hpp"

namespace dcres {

// Undirected communication link between two instances of the same job on
// different task rows. Endpoints are linear instance indices with a < b.
struct CommEdge {
  std::int64_t a{};
  std::int64_t b{};
  std::int64_t cost{};

  bool operator==(const CommEdge&) const = default;
};

// Per-job nearest-copy network: every live instance links to the cheapest
// live copy of every other task row. Edges are deduplicated, so a mutual
// nearest pair contributes once.
struct CommGraph {
  std::int64_t job{};
  std::vector<CommEdge> edges;  // sorted by (a, b)
};

// Builds the deduplicated communication graph of a live job. Each live
// instance talks to a copy of every other task row: its own column's copy
// while that copy lives, otherwise the live alternative with minimal path
// cost (ties to the lowest redundancy column). Requires every row of the job
// to have at least one live copy (the job has not failed).
inline CommGraph build_comm_graph(const JobSet& jobs, std::int64_t job,
                                  const std::vector<std::uint8_t>& alive,
                                  const Placement& placement,
                                  const Topology& topology) {
  const std::int64_t tasks = jobs.tasks();
  const std::int64_t redundancy = jobs.redundancy();

  // live copies per row, ascending column order
  std::vector<std::vector<std::int64_t>> live_copies(
      static_cast<std::size_t>(tasks));
  for (std::int64_t t = 0; t < tasks; ++t) {
    for (std::int64_t r = 0; r < redundancy; ++r) {
      const std::int64_t idx = jobs.index_of(job, t, r);
      if (alive[static_cast<std::size_t>(idx)]) {
        live_copies[static_cast<std::size_t>(t)].push_back(idx);
      }
    }
    if (live_copies[static_cast<std::size_t>(t)].empty()) {
      throw std::logic_error("comm graph requested for a failed job");
    }
  }

  CommGraph graph;
  graph.job = job;
  for (std::int64_t t = 0; t < tasks; ++t) {
    for (std::int64_t r = 0; r < redundancy; ++r) {
      const std::int64_t from = jobs.index_of(job, t, r);
      if (!alive[static_cast<std::size_t>(from)]) continue;
      const std::int64_t from_service = placement.service_of(from);
      for (std::int64_t other = 0; other < tasks; ++other) {
        if (other == t) continue;
        std::int64_t best = jobs.index_of(job, other, r);
        std::int64_t best_cost;
        if (alive[static_cast<std::size_t>(best)]) {
          best_cost = topology.path_cost(from_service, placement.service_of(best));
        } else {
          // own column's copy is gone; rewire to the nearest live alternative
          best = -1;
          best_cost = 0;
          for (const std::int64_t to :
               live_copies[static_cast<std::size_t>(other)]) {
            const std::int64_t cost =
                topology.path_cost(from_service, placement.service_of(to));
            if (best < 0 || cost < best_cost) {
              best = to;
              best_cost = cost;
            }
          }
        }
        CommEdge edge;
        edge.a = std::min(from, best);
        edge.b = std::max(from, best);
        edge.cost = best_cost;
        graph.edges.push_back(edge);
      }
    }
  }

  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const CommEdge& x, const CommEdge& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()),
                    graph.edges.end());
  return graph;
}

// Total cost of the network: the sum of its edge costs.
inline std::int64_t job_network_cost(const CommGraph& graph) {
  std::int64_t total = 0;
  for (const CommEdge& edge : graph.edges) total += edge.cost;
  return total;
}

}  // namespace dcres
