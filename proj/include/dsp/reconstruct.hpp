#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsp/oracle.hpp"

namespace dsp {

/// Raised when a subpath scan exhausts its candidates before reaching the
/// far hub. The reconstruction proofs rule this out under conforming
/// oracles, so an occurrence signals an oracle-contract violation and is
/// surfaced rather than patched over.
struct ReconstructionFailure : std::runtime_error {
  ReconstructionFailure(Vertex from, Vertex to, int copy, const std::string& what);
  Vertex from, to;
  int copy;
};

/// Vertices passing the two-sided 2-approximate distance filter for one hub
/// edge: both filter values must be <= 2 * baseline, where baseline is the
/// exact bounded distance between the hubs.
struct PlausibleSet {
  Vertex from = 0, to = 0;
  int copy = 0;
  std::int64_t baseline = kInfDist;
  std::vector<Vertex> members;  // ascending vertex id
};

/// Builds one plausible set from precomputed 2-approx rows: row_from[v]
/// filters distance from the near hub, row_to[v] distance to the far hub.
PlausibleSet build_plausible_set(Vertex from, Vertex to, int copy, std::int64_t baseline,
                                 std::span<const std::int64_t> row_from,
                                 std::span<const std::int64_t> row_to);

struct SubpathStats {
  std::uint64_t oracle_calls = 0;
  std::size_t neighbor_iterations = 0;  // undirected scan only
  std::size_t max_class_touches = 0;    // per (vertex, weight class), undirected only
};

/// Directed variant: sorts the plausible vertices ascending by exact bounded
/// distance from the near hub (ties by vertex id) and extends the path with
/// every candidate whose edge closes the distance equation
///   len(v_last, v) + dist(v, to) = dist(v_last, to).
/// Returns a path in gx from `from` to `to` of exactly dist_gx(from, to).
std::vector<Vertex> shortest_subpath_directed(const CopyGraph& gx, Vertex from, Vertex to,
                                              std::span<const Vertex> plausible,
                                              const DistanceOracle& exact,
                                              SubpathStats* stats = nullptr);

/// Undirected variant: walks from `from`, scanning neighbors in ascending
/// edge-length order, skipping vertices seen before and spending one oracle
/// call per newly seen vertex.
std::vector<Vertex> shortest_subpath_undirected(const CopyGraph& gx, Vertex from, Vertex to,
                                                const DistanceOracle& exact,
                                                SubpathStats* stats = nullptr);

}  // namespace dsp
