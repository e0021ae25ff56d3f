#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "dsp/graph.hpp"

namespace dsp {

/// Sentinel for "no bounded distance"; distinct from every legal value.
inline constexpr std::int64_t kInfDist = std::numeric_limits<std::int64_t>::max();

inline std::int64_t add_dist(std::int64_t a, std::int64_t b) {
  return (a == kInfDist || b == kInfDist) ? kInfDist : a + b;
}

enum class Accuracy { exact, two_approx, one_plus_eps };

struct DistMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> data;
  std::int64_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Bounded-distance oracle over one integer-weighted copy.
///
/// exact: query(u, v) = dist(u, v) when dist <= bound, else infinity.
/// alpha-approx: results never undershoot the true distance, stay within
/// alpha * dist whenever dist <= bound, and anything beyond alpha * bound is
/// reported as infinity. query_all agrees elementwise with query.
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;

  Accuracy accuracy() const { return accuracy_; }
  std::int64_t bound() const { return bound_; }

  /// The rounded copy is mutated elsewhere; this is O(1) bookkeeping since
  /// reference oracles recompute on query.
  void update(Vertex u, Vertex v, std::optional<std::int64_t> w) {
    ++update_calls_;
    on_update(u, v, w);
  }

  std::int64_t query(Vertex u, Vertex v) const {
    ++query_calls_;
    return do_query(u, v);
  }

  DistMatrix query_all(std::span<const Vertex> sources, std::span<const Vertex> targets) const {
    cell_count_ += sources.size() * targets.size();
    return do_query_all(sources, targets);
  }

  std::uint64_t query_calls() const { return query_calls_; }
  std::uint64_t cell_count() const { return cell_count_; }
  std::uint64_t update_calls() const { return update_calls_; }

 protected:
  DistanceOracle(Accuracy a, std::int64_t bound) : accuracy_(a), bound_(bound) {}
  virtual std::int64_t do_query(Vertex u, Vertex v) const = 0;
  virtual DistMatrix do_query_all(std::span<const Vertex> sources,
                                  std::span<const Vertex> targets) const = 0;
  virtual void on_update(Vertex, Vertex, std::optional<std::int64_t>) {}

 private:
  Accuracy accuracy_;
  std::int64_t bound_;
  mutable std::uint64_t query_calls_ = 0;
  mutable std::uint64_t cell_count_ = 0;
  std::uint64_t update_calls_ = 0;
};

/// Shared recompute engine: truncated Dijkstra rows from a source (or, on
/// directed copies, to a target), memoized until the copy's version moves.
class BoundedDijkstra {
 public:
  BoundedDijkstra(const CopyGraph& g, std::int64_t bound) : g_(&g), bound_(bound) {}

  const std::vector<std::int64_t>& row_from(Vertex s) const;
  const std::vector<std::int64_t>& row_to(Vertex t) const;
  std::int64_t bound() const { return bound_; }
  const CopyGraph& graph() const { return *g_; }

 private:
  void refresh() const;
  const CopyGraph* g_;
  std::int64_t bound_;
  mutable std::uint64_t seen_version_ = ~0ull;
  mutable std::unordered_map<Vertex, std::vector<std::int64_t>> fwd_;
  mutable std::unordered_map<Vertex, std::vector<std::int64_t>> rev_;
};

std::unique_ptr<DistanceOracle> make_truncated_dijkstra_oracle(
    std::shared_ptr<BoundedDijkstra> core);

/// Exact truncated distance rounded up to the next power of two (0 stays 0),
/// so results land in [dist, 2 * dist).
std::unique_ptr<DistanceOracle> make_pow2_approx_oracle(std::shared_ptr<BoundedDijkstra> core);

/// Dense min-plus squaring over the weight matrix, entries capped at the
/// bound. Agrees bit for bit with the truncated Dijkstra oracle. Refuses
/// graphs larger than dense_limit vertices.
std::unique_ptr<DistanceOracle> make_minplus_batch_oracle(const CopyGraph& g, std::int64_t bound,
                                                          std::uint32_t dense_limit = 2048);

}  // namespace dsp
