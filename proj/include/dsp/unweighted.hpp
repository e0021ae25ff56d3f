#pragma once

#include <cstdint>
#include <vector>

#include "dsp/graph.hpp"
#include "dsp/oracle.hpp"

namespace dsp::unweighted {

/// Every operation here is deterministic and seed-free.

struct BfsTree {
  std::vector<std::int64_t> dist;    // hops; kInfDist when unreached
  std::vector<std::int32_t> parent;  // -1 for root / unreached
};

/// Breadth-first distances from s, truncated at `bound` hops.
BfsTree bfs(const DynamicGraph& g, Vertex s, std::int64_t bound = kInfDist);

/// Greedy dominating set: every vertex of degree > sqrt(n ln n) ends up with
/// a neighbor in the result. Repeatedly picks the vertex covering the most
/// still-uncovered high-degree vertices, ties to the smallest id.
std::vector<Vertex> build_cover_set(const DynamicGraph& g);

/// A (1+eps, 4)-emulator: a sparse weighted graph h on the same vertex set
/// with dist_G <= dist_h <= (1+eps) dist_G + 4 for all pairs. Not a subgraph
/// of G: cover-to-cover edges carry whole short-path distances as weights.
struct Emulator {
  std::vector<Vertex> cover;  // S
  CopyGraph h;
  std::vector<std::vector<std::int64_t>> cover_rows;  // bounded BFS row per cover vertex
  std::vector<std::int32_t> cover_index;              // vertex -> index into cover, -1
  std::int64_t short_bound = 0;                       // ceil(4/eps) + 2
};

Emulator build_emulator(const DynamicGraph& g, std::vector<Vertex> cover, double eps);

struct Additive4Stats {
  std::size_t replaced_edges = 0;
};

/// Dijkstra on the emulator, then every tree edge absent from G is replaced
/// by an exact short path (scan of the cover vertex's distance row with
/// explicit adjacency checks); a final BFS over the replaced edge set yields
/// a tree with dist_T(s, v) <= (1+eps) dist_G(s, v) + 4.
BfsTree sssp_additive4(const DynamicGraph& g, const Emulator& em, Vertex s,
                       Additive4Stats* stats = nullptr);

/// Exact shortest path when dist(s, t) < 4/eps (descending-distance scan with
/// adjacency checks); otherwise the s->t branch of the additive-4 tree, which
/// keeps the ratio within 1 + 2 eps. Empty when t is unreachable.
std::vector<Vertex> st_path(const DynamicGraph& g, Vertex s, Vertex t, double eps);

/// Exact single-source tree via vertex-copy graphs: p block graphs identify,
/// for every target, a block holding the predecessor on some shortest path;
/// a scan of that block plus a depth-ceil(4/eps) truncated tree and a final
/// BFS produce a tree with dist_T <= (1+eps) dist_G (here: exact).
BfsTree sssp_tree(const DynamicGraph& g, Vertex s, double eps, std::uint32_t blocks);

/// dist_{G_l}(s, t'') for the block-l copy graph; exposed for tests of the
/// block equality predicate.
std::vector<std::int64_t> copy_graph_distances(const DynamicGraph& g, Vertex s,
                                               std::uint32_t block, std::uint32_t blocks);

}  // namespace dsp::unweighted
