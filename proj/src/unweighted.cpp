#include "dsp/unweighted.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

namespace dsp::unweighted {
namespace {

void require_unweighted(const DynamicGraph& g) {
  if (g.mode() != EdgeMode::undirected || g.domain() != WeightDomain::integer ||
      g.max_weight() != 1.0)
    throw std::invalid_argument("operation needs an unweighted undirected graph");
}

}  // namespace

BfsTree bfs(const DynamicGraph& g, Vertex s, std::int64_t bound) {
  const std::uint32_t n = g.vertex_count();
  BfsTree t{std::vector<std::int64_t>(n, kInfDist), std::vector<std::int32_t>(n, -1)};
  t.dist[s] = 0;
  std::deque<Vertex> q{s};
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    if (t.dist[u] >= bound) continue;
    for (const auto& e : g.out_neighbors(u)) {
      if (t.dist[e.to] != kInfDist) continue;
      t.dist[e.to] = t.dist[u] + 1;
      t.parent[e.to] = static_cast<std::int32_t>(u);
      q.push_back(e.to);
    }
  }
  return t;
}

std::vector<Vertex> build_cover_set(const DynamicGraph& g) {
  require_unweighted(g);
  const std::uint32_t n = g.vertex_count();
  const double threshold = std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
  std::vector<Vertex> high;
  for (Vertex v = 0; v < n; ++v)
    if (static_cast<double>(g.degree(v)) > threshold) high.push_back(v);

  std::vector<char> covered(n, 0);
  std::vector<char> is_high(n, 0);
  for (Vertex v : high) is_high[v] = 1;
  std::vector<Vertex> cover;
  std::size_t remaining = high.size();
  while (remaining > 0) {
    Vertex best = 0;
    std::size_t best_gain = 0;
    for (Vertex u = 0; u < n; ++u) {
      std::size_t gain = 0;
      for (const auto& e : g.out_neighbors(u))
        if (is_high[e.to] && !covered[e.to]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = u;
      }
    }
    assert(best_gain > 0);  // every high-degree vertex has a neighbor
    cover.push_back(best);
    for (const auto& e : g.out_neighbors(best))
      if (is_high[e.to] && !covered[e.to]) {
        covered[e.to] = 1;
        --remaining;
      }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

Emulator build_emulator(const DynamicGraph& g, std::vector<Vertex> cover, double eps) {
  require_unweighted(g);
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const std::uint32_t n = g.vertex_count();
  Emulator em{std::move(cover), CopyGraph(n, EdgeMode::undirected), {}, {}, 0};
  em.short_bound = static_cast<std::int64_t>(std::ceil(4.0 / eps)) + 2;
  em.cover_index.assign(n, -1);
  for (std::size_t i = 0; i < em.cover.size(); ++i)
    em.cover_index[em.cover[i]] = static_cast<std::int32_t>(i);

  // same degree threshold as the cover set; edges incident to the cover are
  // kept so covered vertices can always reach their hub
  const double threshold = std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
  g.for_each_edge([&](Vertex u, Vertex v, double) {
    const double du = static_cast<double>(g.degree(u));
    const double dv = static_cast<double>(g.degree(v));
    if (std::min(du, dv) <= threshold || em.cover_index[u] >= 0 || em.cover_index[v] >= 0)
      em.h.set(u, v, 1);
  });

  em.cover_rows.reserve(em.cover.size());
  for (Vertex c : em.cover) em.cover_rows.push_back(bfs(g, c, em.short_bound).dist);

  for (std::size_t i = 0; i < em.cover.size(); ++i)
    for (std::size_t j = i + 1; j < em.cover.size(); ++j) {
      const std::int64_t d = em.cover_rows[i][em.cover[j]];
      if (d == kInfDist || d > em.short_bound) continue;
      const auto existing = em.h.get(em.cover[i], em.cover[j]);
      if (!existing || *existing > d) em.h.set(em.cover[i], em.cover[j], d);
    }
  return em;
}

namespace {

struct IntTree {
  std::vector<std::int64_t> dist;
  std::vector<std::int32_t> parent;
};

IntTree dijkstra_tree(const CopyGraph& g, Vertex s) {
  const std::uint32_t n = g.vertex_count();
  IntTree t{std::vector<std::int64_t>(n, kInfDist), std::vector<std::int32_t>(n, -1)};
  t.dist[s] = 0;
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != t.dist[u]) continue;
    for (const auto& e : g.out(u)) {
      const std::int64_t nd = d + e.len;
      if (nd < t.dist[e.to]) {
        t.dist[e.to] = nd;
        t.parent[e.to] = static_cast<std::int32_t>(u);
        pq.emplace(nd, e.to);
      } else if (nd == t.dist[e.to] && t.parent[e.to] >= 0 &&
                 static_cast<std::int32_t>(u) < t.parent[e.to]) {
        t.parent[e.to] = static_cast<std::int32_t>(u);
      }
    }
  }
  return t;
}

/// Exact u-v path in G of `hops` edges, read off the cover row of u by
/// walking backwards from v: each step picks the smallest-id vertex one hop
/// closer to u that is adjacent to the current vertex.
std::vector<Vertex> replay_short_path(const DynamicGraph& g, Vertex u, Vertex v,
                                      std::int64_t hops,
                                      const std::vector<std::vector<Vertex>>& by_dist) {
  std::vector<Vertex> path{v};
  Vertex cur = v;
  for (std::int64_t d = hops - 1; d >= 0; --d) {
    bool found = false;
    for (Vertex w : by_dist[static_cast<std::size_t>(d)]) {
      if (g.has_edge(w, cur)) {
        path.push_back(w);
        cur = w;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("short-path replay lost the trail");
  }
  assert(cur == u);
  (void)u;
  std::reverse(path.begin(), path.end());
  return path;
}

BfsTree bfs_over_edges(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                       Vertex s) {
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& lst : adj) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }
  BfsTree t{std::vector<std::int64_t>(n, kInfDist), std::vector<std::int32_t>(n, -1)};
  t.dist[s] = 0;
  std::deque<Vertex> q{s};
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    for (Vertex v : adj[u])
      if (t.dist[v] == kInfDist) {
        t.dist[v] = t.dist[u] + 1;
        t.parent[v] = static_cast<std::int32_t>(u);
        q.push_back(v);
      }
  }
  return t;
}

}  // namespace

BfsTree sssp_additive4(const DynamicGraph& g, const Emulator& em, Vertex s,
                       Additive4Stats* stats) {
  require_unweighted(g);
  const std::uint32_t n = g.vertex_count();
  const IntTree on_h = dijkstra_tree(em.h, s);

  std::vector<std::pair<Vertex, Vertex>> edges;
  // per cover vertex: ids grouped by bounded-BFS distance, for path replay
  std::vector<std::vector<std::vector<Vertex>>> grouped(em.cover.size());
  for (Vertex v = 0; v < n; ++v) {
    if (on_h.parent[v] < 0) continue;
    const Vertex u = static_cast<Vertex>(on_h.parent[v]);
    if (g.has_edge(u, v)) {
      edges.emplace_back(u, v);
      continue;
    }
    // emulator-only edge: both endpoints lie in the cover
    const std::int32_t iu = em.cover_index[u];
    assert(iu >= 0 && em.cover_index[v] >= 0);
    const auto& row = em.cover_rows[static_cast<std::size_t>(iu)];
    const std::int64_t hops = row[v];
    assert(hops != kInfDist && hops <= em.short_bound);
    auto& groups = grouped[static_cast<std::size_t>(iu)];
    if (groups.empty()) {
      groups.resize(static_cast<std::size_t>(em.short_bound) + 1);
      for (Vertex w = 0; w < n; ++w)
        if (row[w] != kInfDist && row[w] <= em.short_bound)
          groups[static_cast<std::size_t>(row[w])].push_back(w);
    }
    const auto piece = replay_short_path(g, u, v, hops, groups);
    for (std::size_t i = 1; i < piece.size(); ++i) edges.emplace_back(piece[i - 1], piece[i]);
    if (stats) ++stats->replaced_edges;
  }
  return bfs_over_edges(n, edges, s);
}

std::vector<Vertex> st_path(const DynamicGraph& g, Vertex s, Vertex t, double eps) {
  require_unweighted(g);
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (s == t) return {s};
  const std::int64_t probe = static_cast<std::int64_t>(std::ceil(4.0 / eps));
  const BfsTree near = bfs(g, s, probe);

  if (near.dist[t] != kInfDist && static_cast<double>(near.dist[t]) < 4.0 / eps) {
    // exact branch: descending-distance scan with explicit adjacency checks
    const std::uint32_t n = g.vertex_count();
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v)
      if (near.dist[v] != kInfDist) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return near.dist[a] != near.dist[b] ? near.dist[a] > near.dist[b] : a < b;
    });
    std::vector<Vertex> path{t};
    Vertex last = t;
    for (Vertex v : order) {
      if (near.dist[v] == near.dist[last] - 1 && g.has_edge(v, last)) {
        path.push_back(v);
        last = v;
        if (last == s) break;
      }
    }
    if (last != s) throw std::logic_error("descending scan failed to reach the source");
    std::reverse(path.begin(), path.end());
    return path;
  }

  const Emulator em = build_emulator(g, build_cover_set(g), eps);
  const BfsTree tree = sssp_additive4(g, em, s);
  if (tree.dist[t] == kInfDist) return {};
  std::vector<Vertex> path;
  for (std::int32_t v = static_cast<std::int32_t>(t); v >= 0; v = tree.parent[v])
    path.push_back(static_cast<Vertex>(v));
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::int64_t> copy_graph_distances(const DynamicGraph& g, Vertex s,
                                               std::uint32_t block, std::uint32_t blocks) {
  require_unweighted(g);
  const std::uint32_t n = g.vertex_count();
  const std::uint32_t lo = static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(block) * n / blocks);
  const std::uint32_t hi = static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(block + 1) * n / blocks);

  // vertices: [0, n) original, [n, 2n) primed, [2n, 3n) double-primed
  std::vector<std::vector<Vertex>> adj(3 * static_cast<std::size_t>(n));
  auto add = [&](Vertex a, Vertex b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  g.for_each_edge([&](Vertex u, Vertex v, double) {
    add(u, v);
    if (v >= lo && v < hi) {
      add(u, n + v);       // {v_i, v_j'}
      add(n + v, 2 * n + u);  // {v_j', v_k''}
    }
    if (u >= lo && u < hi) {
      add(v, n + u);
      add(n + u, 2 * n + v);
    }
  });

  std::vector<std::int64_t> dist(3 * static_cast<std::size_t>(n), kInfDist);
  dist[s] = 0;
  std::deque<Vertex> q{s};
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop_front();
    for (Vertex v : adj[u])
      if (dist[v] == kInfDist) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
  }
  std::vector<std::int64_t> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = dist[2 * static_cast<std::size_t>(n) + v];
  return out;
}

BfsTree sssp_tree(const DynamicGraph& g, Vertex s, double eps, std::uint32_t blocks) {
  require_unweighted(g);
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const std::uint32_t n = g.vertex_count();
  if (blocks < 1 || blocks > n) throw std::invalid_argument("block count must lie in [1, n]");

  const BfsTree base = bfs(g, s);
  std::vector<std::vector<std::int64_t>> copy_dist(blocks);
  for (std::uint32_t l = 0; l < blocks; ++l) copy_dist[l] = copy_graph_distances(g, s, l, blocks);

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex t = 0; t < n; ++t) {
    if (t == s || base.dist[t] == kInfDist) continue;
    if (base.dist[t] == 1) {
      edges.emplace_back(s, t);  // the copy construction cannot express 1-hop targets
      continue;
    }
    for (std::uint32_t l = 0; l < blocks; ++l) {
      if (copy_dist[l][t] != base.dist[t]) continue;
      const std::uint32_t lo = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(l) * n / blocks);
      const std::uint32_t hi = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(l + 1) * n / blocks);
      bool found = false;
      for (Vertex j = lo; j < hi && !found; ++j)
        if (base.dist[j] == base.dist[t] - 1 && g.has_edge(j, t)) {
          edges.emplace_back(j, t);
          found = true;
        }
      if (found) break;
    }
  }

  // union with the truncated exact tree, then canonicalize with a final BFS
  const std::int64_t depth = static_cast<std::int64_t>(std::ceil(4.0 / eps));
  const BfsTree trunc = bfs(g, s, depth);
  for (Vertex v = 0; v < n; ++v)
    if (trunc.parent[v] >= 0) edges.emplace_back(static_cast<Vertex>(trunc.parent[v]), v);

  return bfs_over_edges(n, edges, s);
}

}  // namespace dsp::unweighted
