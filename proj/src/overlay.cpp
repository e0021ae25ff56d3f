#include "dsp/overlay.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dsp/rng.hpp"

namespace dsp {

std::size_t hitting_set_size(std::uint32_t n, double hop_exp, double c_hs) {
  const double nd = static_cast<double>(n);
  const double raw = std::ceil(c_hs * std::pow(nd, 1.0 - hop_exp) * std::log(nd));
  if (!(raw > 0)) return 0;  // n = 1
  return std::min<std::size_t>(n, static_cast<std::size_t>(raw));
}

std::vector<Vertex> sample_hitting_set(std::uint32_t n, double hop_exp, double c_hs,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t k = hitting_set_size(n, hop_exp, c_hs);
  return sample_without_replacement(rng, n, static_cast<std::uint32_t>(k));
}

namespace {

void fill_rows(Overlay& o, const RoundedFamily& family,
               std::span<DistanceOracle* const> per_copy, std::span<const Vertex> sources,
               std::span<const Vertex> targets) {
  const std::size_t m = o.size();
  for (std::size_t x = 0; x < family.copy_count(); ++x) {
    const DistMatrix est = per_copy[x]->query_all(sources, targets);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const std::size_t hi = static_cast<std::size_t>(o.index_of[sources[i]]);
      for (std::size_t j = 0; j < targets.size(); ++j) {
        if (sources[i] == targets[j]) continue;
        const std::int64_t d = est.at(i, j);
        if (d == kInfDist) continue;
        const double lifted = family.lift(x, d);
        const std::size_t hj = static_cast<std::size_t>(o.index_of[targets[j]]);
        double& cell = o.len[hi * m + hj];
        if (lifted < cell) {
          cell = lifted;
          o.provenance[hi * m + hj] = static_cast<std::int16_t>(x);
        }
      }
    }
  }
}

}  // namespace

Overlay build_overlay(std::vector<Vertex> hitting_set, const RoundedFamily& family,
                      std::span<DistanceOracle* const> per_copy, std::uint64_t sample_seed) {
  Overlay o;
  o.hitting_set = hitting_set;
  o.vertices = std::move(hitting_set);
  o.sample_seed = sample_seed;
  std::uint32_t n = 0;
  for (Vertex v : o.vertices) n = std::max(n, v + 1);
  if (!family.copies().empty()) n = family.copy(0).graph.vertex_count();
  o.index_of.assign(n, -1);
  for (std::size_t i = 0; i < o.vertices.size(); ++i)
    o.index_of[o.vertices[i]] = static_cast<std::int32_t>(i);
  const std::size_t m = o.size();
  o.len.assign(m * m, kInfLen);
  o.provenance.assign(m * m, -1);
  fill_rows(o, family, per_copy, o.vertices, o.vertices);
  return o;
}

Overlay attach_terminals(const Overlay& base, Vertex s, Vertex t, const RoundedFamily& family,
                         std::span<DistanceOracle* const> per_copy) {
  std::vector<Vertex> fresh;
  if (base.index_of[s] < 0) fresh.push_back(s);
  if (t != s && base.index_of[t] < 0) fresh.push_back(t);
  if (fresh.empty()) return base;

  Overlay o;
  o.hitting_set = base.hitting_set;
  o.sample_seed = base.sample_seed;
  o.vertices = base.vertices;
  o.vertices.insert(o.vertices.end(), fresh.begin(), fresh.end());
  o.index_of = base.index_of;
  for (std::size_t i = base.vertices.size(); i < o.vertices.size(); ++i)
    o.index_of[o.vertices[i]] = static_cast<std::int32_t>(i);

  const std::size_t old_m = base.size();
  const std::size_t m = o.size();
  o.len.assign(m * m, kInfLen);
  o.provenance.assign(m * m, -1);
  for (std::size_t i = 0; i < old_m; ++i)
    for (std::size_t j = 0; j < old_m; ++j) {
      o.len[i * m + j] = base.len[i * old_m + j];
      o.provenance[i * m + j] = base.provenance[i * old_m + j];
    }
  fill_rows(o, family, per_copy, fresh, o.vertices);
  fill_rows(o, family, per_copy, o.vertices, fresh);
  return o;
}

HubPath hub_sequence(const Overlay& o, Vertex s, Vertex t) {
  HubPath hp;
  if (s == t) {
    hp.hubs = {s};
    hp.total = 0.0;
    return hp;
  }
  const std::size_t m = o.size();
  const std::int32_t si = o.index_of[s], ti = o.index_of[t];
  if (si < 0 || ti < 0) return hp;

  // dense Dijkstra; ties by hub position, parent ties by smaller vertex id
  std::vector<double> dist(m, kInfLen);
  std::vector<std::int32_t> parent(m, -1);
  std::vector<char> done(m, 0);
  dist[static_cast<std::size_t>(si)] = 0.0;
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t u = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!done[i] && dist[i] != kInfLen && (u == m || dist[i] < dist[u])) u = i;
    if (u == m) break;
    done[u] = 1;
    if (u == static_cast<std::size_t>(ti)) break;
    for (std::size_t v = 0; v < m; ++v) {
      const double w = o.len[u * m + v];
      if (w == kInfLen || done[v]) continue;
      const double nd = dist[u] + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = static_cast<std::int32_t>(u);
      } else if (nd == dist[v] && parent[v] >= 0 &&
                 o.vertices[u] < o.vertices[static_cast<std::size_t>(parent[v])]) {
        parent[v] = static_cast<std::int32_t>(u);
      }
    }
  }
  if (dist[static_cast<std::size_t>(ti)] == kInfLen) return hp;

  std::vector<std::size_t> idx_path;
  for (std::int32_t v = ti; v >= 0; v = parent[static_cast<std::size_t>(v)])
    idx_path.push_back(static_cast<std::size_t>(v));
  std::reverse(idx_path.begin(), idx_path.end());

  hp.total = dist[static_cast<std::size_t>(ti)];
  for (std::size_t i = 0; i < idx_path.size(); ++i) {
    hp.hubs.push_back(o.vertices[idx_path[i]]);
    if (i + 1 < idx_path.size()) {
      const double w = o.len[idx_path[i] * m + idx_path[i + 1]];
      hp.edge_lens.push_back(w);
      hp.categories.push_back(weight_category(w));
      hp.copies.push_back(o.provenance[idx_path[i] * m + idx_path[i + 1]]);
    }
  }
  return hp;
}

int weight_category(double len) {
  assert(len >= 1.0 && len != kInfLen);
  int a = static_cast<int>(std::floor(std::log2(len))) + 1;
  while (std::ldexp(1.0, a - 1) > len) --a;
  while (len >= std::ldexp(1.0, a)) ++a;
  return a;
}

}  // namespace dsp
