#include "dsp/oracle.hpp"

#include <bit>
#include <queue>
#include <stdexcept>

namespace dsp {
namespace {

std::vector<std::int64_t> truncated_sssp(const CopyGraph& g, Vertex start, std::int64_t bound,
                                         bool reverse) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::int64_t> dist(n, kInfDist);
  dist[start] = 0;
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0, start);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    const auto& adj = reverse ? g.in(u) : g.out(u);
    for (const auto& e : adj) {
      const std::int64_t nd = d + e.len;
      if (nd > bound) break;  // adjacency sorted ascending by length
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        pq.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

}  // namespace

void BoundedDijkstra::refresh() const {
  if (seen_version_ != g_->version()) {
    fwd_.clear();
    rev_.clear();
    seen_version_ = g_->version();
  }
}

const std::vector<std::int64_t>& BoundedDijkstra::row_from(Vertex s) const {
  refresh();
  auto it = fwd_.find(s);
  if (it == fwd_.end()) it = fwd_.emplace(s, truncated_sssp(*g_, s, bound_, false)).first;
  return it->second;
}

const std::vector<std::int64_t>& BoundedDijkstra::row_to(Vertex t) const {
  refresh();
  auto it = rev_.find(t);
  if (it == rev_.end()) it = rev_.emplace(t, truncated_sssp(*g_, t, bound_, true)).first;
  return it->second;
}

namespace {

class TruncatedDijkstraOracle final : public DistanceOracle {
 public:
  explicit TruncatedDijkstraOracle(std::shared_ptr<BoundedDijkstra> core)
      : DistanceOracle(Accuracy::exact, core->bound()), core_(std::move(core)) {}

 protected:
  std::int64_t do_query(Vertex u, Vertex v) const override { return core_->row_from(u)[v]; }

  DistMatrix do_query_all(std::span<const Vertex> sources,
                          std::span<const Vertex> targets) const override {
    DistMatrix m{sources.size(), targets.size(), {}};
    m.data.resize(m.rows * m.cols);
    if (targets.size() >= sources.size() || core_->graph().mode() == EdgeMode::undirected) {
      for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto& row = core_->row_from(sources[i]);
        for (std::size_t j = 0; j < targets.size(); ++j) m.data[i * m.cols + j] = row[targets[j]];
      }
    } else {
      for (std::size_t j = 0; j < targets.size(); ++j) {
        const auto& col = core_->row_to(targets[j]);
        for (std::size_t i = 0; i < sources.size(); ++i) m.data[i * m.cols + j] = col[sources[i]];
      }
    }
    return m;
  }

 private:
  std::shared_ptr<BoundedDijkstra> core_;
};

std::int64_t pow2_round(std::int64_t v) {
  if (v == kInfDist || v == 0) return v;
  return static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(v)));
}

class Pow2ApproxOracle final : public DistanceOracle {
 public:
  explicit Pow2ApproxOracle(std::shared_ptr<BoundedDijkstra> core)
      : DistanceOracle(Accuracy::two_approx, core->bound()), core_(std::move(core)) {}

 protected:
  std::int64_t do_query(Vertex u, Vertex v) const override {
    return pow2_round(core_->row_from(u)[v]);
  }

  DistMatrix do_query_all(std::span<const Vertex> sources,
                          std::span<const Vertex> targets) const override {
    DistMatrix m{sources.size(), targets.size(), {}};
    m.data.resize(m.rows * m.cols);
    if (targets.size() >= sources.size() || core_->graph().mode() == EdgeMode::undirected) {
      for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto& row = core_->row_from(sources[i]);
        for (std::size_t j = 0; j < targets.size(); ++j)
          m.data[i * m.cols + j] = pow2_round(row[targets[j]]);
      }
    } else {
      for (std::size_t j = 0; j < targets.size(); ++j) {
        const auto& col = core_->row_to(targets[j]);
        for (std::size_t i = 0; i < sources.size(); ++i)
          m.data[i * m.cols + j] = pow2_round(col[sources[i]]);
      }
    }
    return m;
  }

 private:
  std::shared_ptr<BoundedDijkstra> core_;
};

class MinplusBatchOracle final : public DistanceOracle {
 public:
  MinplusBatchOracle(const CopyGraph& g, std::int64_t bound, std::uint32_t dense_limit)
      : DistanceOracle(Accuracy::exact, bound), g_(&g) {
    if (g.vertex_count() > dense_limit)
      throw std::invalid_argument("min-plus oracle: graph exceeds dense limit");
  }

 protected:
  std::int64_t do_query(Vertex u, Vertex v) const override {
    recompute_if_stale();
    return apsp_[static_cast<std::size_t>(u) * g_->vertex_count() + v];
  }

  DistMatrix do_query_all(std::span<const Vertex> sources,
                          std::span<const Vertex> targets) const override {
    recompute_if_stale();
    const std::size_t n = g_->vertex_count();
    DistMatrix m{sources.size(), targets.size(), {}};
    m.data.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (std::size_t j = 0; j < targets.size(); ++j)
        m.data[i * m.cols + j] = apsp_[sources[i] * n + targets[j]];
    return m;
  }

 private:
  void recompute_if_stale() const {
    if (seen_version_ == g_->version()) return;
    const std::size_t n = g_->vertex_count();
    const std::int64_t b = bound();
    apsp_.assign(n * n, kInfDist);
    for (std::size_t v = 0; v < n; ++v) apsp_[v * n + v] = 0;
    g_->for_each_edge([&](Vertex u, Vertex v, std::int64_t w) {
      if (w > b) return;
      auto consider = [&](Vertex a, Vertex c) {
        std::int64_t& cell = apsp_[static_cast<std::size_t>(a) * n + c];
        if (w < cell) cell = w;
      };
      consider(u, v);
      if (g_->mode() == EdgeMode::undirected) consider(v, u);
    });
    // repeated min-plus squaring; paths need at most n-1 hops
    std::vector<std::int64_t> next(n * n);
    std::size_t hops = 1;
    while (hops < n - 1) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t best = apsp_[i * n + j];
          for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t a = apsp_[i * n + k];
            if (a == kInfDist || a > b) continue;
            const std::int64_t c = apsp_[k * n + j];
            if (c == kInfDist) continue;
            const std::int64_t cand = a + c;
            if (cand < best) best = cand;
          }
          next[i * n + j] = (best != kInfDist && best > b) ? kInfDist : best;
        }
      }
      apsp_.swap(next);
      hops *= 2;
    }
    for (auto& cell : apsp_)
      if (cell != kInfDist && cell > b) cell = kInfDist;
    seen_version_ = g_->version();
  }

  const CopyGraph* g_;
  mutable std::uint64_t seen_version_ = ~0ull;
  mutable std::vector<std::int64_t> apsp_;
};

}  // namespace

std::unique_ptr<DistanceOracle> make_truncated_dijkstra_oracle(
    std::shared_ptr<BoundedDijkstra> core) {
  return std::make_unique<TruncatedDijkstraOracle>(std::move(core));
}

std::unique_ptr<DistanceOracle> make_pow2_approx_oracle(std::shared_ptr<BoundedDijkstra> core) {
  return std::make_unique<Pow2ApproxOracle>(std::move(core));
}

std::unique_ptr<DistanceOracle> make_minplus_batch_oracle(const CopyGraph& g, std::int64_t bound,
                                                          std::uint32_t dense_limit) {
  return std::make_unique<MinplusBatchOracle>(g, bound, dense_limit);
}

}  // namespace dsp
