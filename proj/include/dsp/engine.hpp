#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "dsp/overlay.hpp"
#include "dsp/reconstruct.hpp"

namespace dsp {

enum class Variant { exact_dir, approx_dir, approx_undir };
enum class TwoApproxKind { pow2, exact };
enum class ExactKind { truncated_dijkstra, minplus };

struct EngineConfig {
  Variant variant = Variant::exact_dir;
  double epsilon = 0.0;
  double hop_exp = 0.5;
  double c_hs = 2.0;
  std::uint64_t seed = 1;
  bool resample_per_update = true;
  TwoApproxKind two_approx = TwoApproxKind::pow2;
  ExactKind exact_kind = ExactKind::truncated_dijkstra;
  std::uint32_t dense_limit = 2048;
};

struct SegmentRecord {
  Vertex from = 0, to = 0;
  std::int16_t copy = -1;
  int category = 0;
  double hub_len = 0.0;
  std::size_t plausible = 0;
  std::uint64_t oracle_calls = 0;
  std::size_t neighbor_iterations = 0;
  std::size_t max_class_touches = 0;
};

/// A reported path plus its per-segment provenance and counters.
struct PathResult {
  std::vector<Vertex> vertices;  // empty iff unreachable (or s == t: single vertex)
  double length = kInfLen;       // exact sum of input-graph edge lengths
  double hub_length = kInfLen;   // total length of the hub sequence
  std::vector<SegmentRecord> segments;
  std::size_t total_plausible = 0;
  int category_gap_max = 0;            // max index gap of a vertex within one category
  std::size_t touch_class_max = 0;     // undirected: max touches per (vertex, class)
  std::size_t touch_iter_max = 0;      // undirected: max neighbor iterations per segment
  std::uint64_t oracle_calls = 0;
  bool reachable() const { return length != kInfLen; }
};

struct UpdateStats {
  std::size_t copies_touched = 0;
  std::size_t oracle_updates = 0;
  std::uint64_t queryall_cells = 0;
  bool resampled = false;
};

/// Fully dynamic st-shortest-path engine: exact on directed integer-weighted
/// graphs (epsilon = 0), (1+epsilon)-approximate on directed or undirected
/// real-weighted graphs. Updates are exclusive; queries are read-only and
/// work on a private terminal-attached view of the hub graph.
class Engine {
 public:
  Engine(const DynamicGraph& g, const EngineConfig& cfg);

  static Engine preprocess(const DynamicGraph& g, const EngineConfig& cfg) {
    return Engine(g, cfg);
  }

  UpdateStats update(Vertex u, Vertex v, double len);
  PathResult query(Vertex s, Vertex t) const;

  const DynamicGraph& graph() const { return g_; }
  const RoundedFamily& family() const { return family_; }
  const Overlay& overlay() const { return overlay_; }
  const EngineConfig& config() const { return cfg_; }
  std::int64_t hop_bound() const { return family_.hop_bound(); }
  std::int64_t oracle_bound() const { return oracle_bound_; }
  bool directed() const { return g_.mode() == EdgeMode::directed; }

 private:
  struct CopyOracles {
    std::shared_ptr<BoundedDijkstra> core;
    std::unique_ptr<DistanceOracle> exact;
    std::unique_ptr<DistanceOracle> two_approx;   // null when aliased to exact
    std::unique_ptr<DistanceOracle> approx_eps;   // null: aliased to exact
    DistanceOracle* exact_handle = nullptr;
    DistanceOracle* two_handle = nullptr;
    DistanceOracle* eps_handle = nullptr;
  };

  void rebuild_overlay(UpdateStats* stats);
  std::vector<DistanceOracle*> eps_handles() const;

  EngineConfig cfg_;
  DynamicGraph g_;
  RoundedFamily family_;
  std::int64_t oracle_bound_ = 0;
  std::vector<CopyOracles> oracles_;
  Overlay overlay_;
  // update-time 2-approx row blocks, directed variants only:
  // two_fwd_[x][hub index] = row over V, two_rev_[x][hub index] = column over V
  std::vector<std::vector<std::vector<std::int64_t>>> two_fwd_;
  std::vector<std::vector<std::vector<std::int64_t>>> two_rev_;
  std::mt19937_64 rng_;
};

}  // namespace dsp
