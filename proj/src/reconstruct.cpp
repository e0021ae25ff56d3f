#include "dsp/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

namespace dsp {

ReconstructionFailure::ReconstructionFailure(Vertex from_, Vertex to_, int copy_,
                                             const std::string& what)
    : std::runtime_error("subpath " + std::to_string(from_) + "->" + std::to_string(to_) +
                         " on copy " + std::to_string(copy_) + ": " + what),
      from(from_),
      to(to_),
      copy(copy_) {}

PlausibleSet build_plausible_set(Vertex from, Vertex to, int copy, std::int64_t baseline,
                                 std::span<const std::int64_t> row_from,
                                 std::span<const std::int64_t> row_to) {
  PlausibleSet p{from, to, copy, baseline, {}};
  if (baseline == kInfDist) return p;
  const std::int64_t cap = 2 * baseline;
  for (Vertex v = 0; v < row_from.size(); ++v)
    if (row_from[v] != kInfDist && row_from[v] <= cap && row_to[v] != kInfDist && row_to[v] <= cap)
      p.members.push_back(v);
  return p;
}

std::vector<Vertex> shortest_subpath_directed(const CopyGraph& gx, Vertex from, Vertex to,
                                              std::span<const Vertex> plausible,
                                              const DistanceOracle& exact, SubpathStats* stats) {
  SubpathStats local;
  SubpathStats& st = stats ? *stats : local;
  if (from == to) return {from};

  struct Key {
    std::int64_t d;
    Vertex v;
  };
  std::vector<Key> queue;
  queue.reserve(plausible.size());
  for (Vertex v : plausible) {
    ++st.oracle_calls;
    queue.push_back(Key{exact.query(from, v), v});
  }
  std::sort(queue.begin(), queue.end(),
            [](const Key& a, const Key& b) { return a.d != b.d ? a.d < b.d : a.v < b.v; });

  std::vector<Vertex> path{from};
  Vertex v_last = from;
  ++st.oracle_calls;
  std::int64_t last_to_target = exact.query(from, to);
  for (const Key& k : queue) {
    const Vertex v = k.v;
    const auto edge = gx.get(v_last, v);
    if (!edge) continue;  // missing edge reads as infinite length
    ++st.oracle_calls;
    const std::int64_t tail = exact.query(v, to);
    if (add_dist(*edge, tail) == last_to_target && last_to_target != kInfDist) {
      path.push_back(v);
      v_last = v;
      last_to_target = tail;
      if (v_last == to) break;
    }
  }
  if (v_last != to)
    throw ReconstructionFailure(from, to, -1, "candidate scan exhausted before the far hub");
  return path;
}

std::vector<Vertex> shortest_subpath_undirected(const CopyGraph& gx, Vertex from, Vertex to,
                                                const DistanceOracle& exact, SubpathStats* stats) {
  SubpathStats local;
  SubpathStats& st = stats ? *stats : local;
  if (from == to) return {from};

  std::vector<Vertex> path{from};
  Vertex v_last = from;
  ++st.oracle_calls;
  std::int64_t last_to_target = exact.query(from, to);

  std::vector<char> seen(gx.vertex_count(), 0);
  // touches per (vertex, weight class); classes are floor(log2 w)
  std::unordered_map<std::uint64_t, std::size_t> touches;

  while (v_last != to) {
    bool extended = false;
    for (const auto& e : gx.out(v_last)) {
      ++st.neighbor_iterations;
      const int cls = 63 - std::countl_zero(static_cast<std::uint64_t>(e.len));
      const std::uint64_t tk = (static_cast<std::uint64_t>(e.to) << 8) | static_cast<unsigned>(cls);
      st.max_class_touches = std::max(st.max_class_touches, ++touches[tk]);
      if (seen[e.to]) continue;
      seen[e.to] = 1;
      ++st.oracle_calls;
      const std::int64_t tail = exact.query(e.to, to);
      if (add_dist(e.len, tail) == last_to_target && last_to_target != kInfDist) {
        path.push_back(e.to);
        v_last = e.to;
        last_to_target = tail;
        extended = true;
        break;
      }
    }
    if (!extended)
      throw ReconstructionFailure(from, to, -1, "no extendable neighbor; candidate set exhausted");
  }
  return path;
}

}  // namespace dsp
