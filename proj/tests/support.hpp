#pragma once

// Test-only ground truth, kept independent of the library's query paths:
// plain relaxation loops and exhaustive enumeration, no heaps, no oracles.

#include <random>
#include <vector>

#include "dsp/graph.hpp"
#include "dsp/oracle.hpp"
#include "dsp/rng.hpp"

namespace testsupport {

using dsp::CopyGraph;
using dsp::DynamicGraph;
using dsp::EdgeMode;
using dsp::Vertex;
using dsp::WeightDomain;

/// Bellman-Ford over the raw edge list (n-1 full relaxation rounds).
inline std::vector<double> bellman_ford(const DynamicGraph& g, Vertex s) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::pair<std::pair<Vertex, Vertex>, double>> edges;
  g.for_each_edge([&](Vertex u, Vertex v, double w) {
    edges.push_back({{u, v}, w});
    if (g.mode() == EdgeMode::undirected) edges.push_back({{v, u}, w});
  });
  std::vector<double> dist(n, dsp::kInfLen);
  dist[s] = 0;
  for (std::uint32_t round = 1; round < n; ++round)
    for (const auto& [uv, w] : edges)
      if (dist[uv.first] != dsp::kInfLen && dist[uv.first] + w < dist[uv.second])
        dist[uv.second] = dist[uv.first] + w;
  return dist;
}

inline std::vector<std::int64_t> bellman_ford_int(const CopyGraph& g, Vertex s) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::pair<std::pair<Vertex, Vertex>, std::int64_t>> edges;
  g.for_each_edge([&](Vertex u, Vertex v, std::int64_t w) {
    edges.push_back({{u, v}, w});
    if (g.mode() == EdgeMode::undirected) edges.push_back({{v, u}, w});
  });
  std::vector<std::int64_t> dist(n, dsp::kInfDist);
  dist[s] = 0;
  for (std::uint32_t round = 1; round < n; ++round)
    for (const auto& [uv, w] : edges)
      if (dist[uv.first] != dsp::kInfDist && dist[uv.first] + w < dist[uv.second])
        dist[uv.second] = dist[uv.first] + w;
  return dist;
}

/// dist_by_hops[k][v]: length of the shortest s->v walk using at most k edges.
inline std::vector<std::vector<double>> hop_profile(const DynamicGraph& g, Vertex s) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::pair<std::pair<Vertex, Vertex>, double>> edges;
  g.for_each_edge([&](Vertex u, Vertex v, double w) {
    edges.push_back({{u, v}, w});
    if (g.mode() == EdgeMode::undirected) edges.push_back({{v, u}, w});
  });
  std::vector<std::vector<double>> d(n, std::vector<double>(n, dsp::kInfLen));
  d[0].assign(n, dsp::kInfLen);
  d[0][s] = 0;
  for (std::uint32_t k = 1; k < n; ++k) {
    d[k] = d[k - 1];
    for (const auto& [uv, w] : edges)
      if (d[k - 1][uv.first] != dsp::kInfLen && d[k - 1][uv.first] + w < d[k][uv.second])
        d[k][uv.second] = d[k - 1][uv.first] + w;
  }
  return d;
}

/// Minimal hop count among shortest s->t paths; -1 when unreachable.
inline int min_hops_of_shortest(const std::vector<std::vector<double>>& profile, Vertex t) {
  const double best = profile.back()[t];
  if (best == dsp::kInfLen) return -1;
  for (std::size_t k = 0; k < profile.size(); ++k)
    if (profile[k][t] == best) return static_cast<int>(k);
  return -1;
}

/// Exhaustive DFS over simple paths; the most independent oracle we have.
/// Only for tiny graphs.
inline double brute_force_distance(const DynamicGraph& g, Vertex s, Vertex t) {
  const std::uint32_t n = g.vertex_count();
  std::vector<char> used(n, 0);
  double best = s == t ? 0.0 : dsp::kInfLen;
  auto dfs = [&](auto&& self, Vertex u, double acc) -> void {
    if (u == t && acc > 0) {
      best = std::min(best, acc);
      return;
    }
    for (const auto& e : g.out_neighbors(u)) {
      if (used[e.to]) continue;
      if (acc + e.len >= best) continue;
      used[e.to] = 1;
      self(self, e.to, acc + e.len);
      used[e.to] = 0;
    }
  };
  if (s != t) {
    used[s] = 1;
    best = dsp::kInfLen;
    dfs(dfs, s, 0.0);
  }
  return best;
}

/// The running example digraph: 0->1:1, 1->2:2, 2->3:1, 0->2:4, 1->3:4.
inline DynamicGraph d1_graph() {
  DynamicGraph g(4, EdgeMode::directed, WeightDomain::integer, 4);
  g.set_edge(0, 1, 1);
  g.set_edge(1, 2, 2);
  g.set_edge(2, 3, 1);
  g.set_edge(0, 2, 4);
  g.set_edge(1, 3, 4);
  return g;
}

struct GraphSpec {
  std::uint32_t n = 10;
  std::size_t m = 20;
  EdgeMode mode = EdgeMode::directed;
  WeightDomain domain = WeightDomain::integer;
  double w_max = 8;
  bool connected = false;  // adds a random spanning path first
};

inline DynamicGraph random_graph(const GraphSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DynamicGraph g(spec.n, spec.mode, spec.domain, spec.w_max);
  auto weight = [&]() {
    if (spec.domain == WeightDomain::integer)
      return 1.0 + static_cast<double>(dsp::uniform_below(rng, static_cast<std::uint64_t>(spec.w_max)));
    return 1.0 + dsp::unit_real(rng) * (spec.w_max - 1.0);
  };
  if (spec.connected && spec.n > 1) {
    std::vector<Vertex> order(spec.n);
    for (Vertex v = 0; v < spec.n; ++v) order[v] = v;
    for (std::uint32_t i = spec.n - 1; i > 0; --i)
      std::swap(order[i], order[dsp::uniform_below(rng, i + 1)]);
    for (std::uint32_t i = 1; i < spec.n; ++i) {
      g.set_edge(order[i - 1], order[i], weight());
      if (spec.mode == EdgeMode::directed) g.set_edge(order[i], order[i - 1], weight());
    }
  }
  std::size_t guard = 0;
  while (g.edge_count() < spec.m && guard < 50 * spec.m) {
    ++guard;
    const Vertex u = static_cast<Vertex>(dsp::uniform_below(rng, spec.n));
    const Vertex v = static_cast<Vertex>(dsp::uniform_below(rng, spec.n));
    if (u == v || g.has_edge(u, v)) continue;
    g.set_edge(u, v, weight());
  }
  return g;
}

/// Unit-weight undirected graph for the unweighted module.
inline DynamicGraph random_unweighted(std::uint32_t n, std::size_t m, std::uint64_t seed,
                                      bool connected = false) {
  GraphSpec spec;
  spec.n = n;
  spec.m = m;
  spec.mode = EdgeMode::undirected;
  spec.domain = WeightDomain::integer;
  spec.w_max = 1;
  spec.connected = connected;
  return random_graph(spec, seed);
}

}  // namespace testsupport
