#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsp/oracle.hpp"
#include "dsp/rounding.hpp"

namespace dsp {

/// min(n, ceil(c_hs * n^(1-a) * ln n)).
std::size_t hitting_set_size(std::uint32_t n, double hop_exp, double c_hs);

/// Uniform sample without replacement of hitting_set_size vertices,
/// deterministic given the seed; returned sorted ascending.
std::vector<Vertex> sample_hitting_set(std::uint32_t n, double hop_exp, double c_hs,
                                       std::uint64_t seed);

/// The auxiliary hub graph: vertices R (plus attached terminals), dense edge
/// lengths len(u, v) = min over copies x of (B_x / A) * estimate_x(u, v), and
/// for every finite edge the copy index attaining the minimum (ties to the
/// smallest x). Every finite length is an upper bound on the true distance.
struct Overlay {
  std::vector<Vertex> hitting_set;     // R, sorted
  std::vector<Vertex> vertices;        // hub order: R, then attached terminals
  std::vector<std::int32_t> index_of;  // vertex id -> hub index, -1 if absent
  std::vector<double> len;             // |vertices|^2 row-major, kInfLen = no edge
  std::vector<std::int16_t> provenance;  // argmin copy per edge, -1 = none
  std::uint64_t sample_seed = 0;

  std::size_t size() const { return vertices.size(); }
  double len_at(std::size_t i, std::size_t j) const { return len[i * size() + j]; }
  std::int16_t prov_at(std::size_t i, std::size_t j) const { return provenance[i * size() + j]; }
};

/// Builds the hub graph over `vertices` by batch-querying every copy's
/// bounded-distance oracle on vertices x vertices.
Overlay build_overlay(std::vector<Vertex> hitting_set, const RoundedFamily& family,
                      std::span<DistanceOracle* const> per_copy, std::uint64_t sample_seed);

/// Copy-on-attach: adds s and t (if not already hubs) with edges in both
/// directions. The original overlay is never mutated, so concurrent queries
/// between updates stay repeatable.
Overlay attach_terminals(const Overlay& base, Vertex s, Vertex t, const RoundedFamily& family,
                         std::span<DistanceOracle* const> per_copy);

struct HubPath {
  std::vector<Vertex> hubs;            // s = h_0, ..., h_k = t
  std::vector<double> edge_lens;       // k entries
  std::vector<int> categories;         // weight category per edge
  std::vector<std::int16_t> copies;    // well-approximating copy per edge
  double total = kInfLen;              // dist_H(s, t)
  bool reachable() const { return total != kInfLen; }
};

/// Shortest hub sequence from s to t (Dijkstra over the dense overlay).
HubPath hub_sequence(const Overlay& o, Vertex s, Vertex t);

/// The unique alpha with len in [2^(alpha-1), 2^alpha); requires len >= 1.
int weight_category(double len);

}  // namespace dsp
