#include "dsp/engine.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

namespace dsp {

Engine::Engine(const DynamicGraph& g, const EngineConfig& cfg)
    : cfg_(cfg), g_(g), family_(RoundedFamily::build(g, cfg.epsilon, cfg.hop_exp)), rng_(cfg.seed) {
  switch (cfg.variant) {
    case Variant::exact_dir:
      if (g.mode() != EdgeMode::directed)
        throw std::invalid_argument("exact variant needs a directed graph");
      if (g.domain() != WeightDomain::integer)
        throw std::invalid_argument("exact variant needs integer weights");
      if (cfg.epsilon != 0.0) throw std::invalid_argument("exact variant forces epsilon = 0");
      break;
    case Variant::approx_dir:
      if (g.mode() != EdgeMode::directed)
        throw std::invalid_argument("approx-dir needs a directed graph");
      if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("approx variants need epsilon > 0");
      break;
    case Variant::approx_undir:
      if (g.mode() != EdgeMode::undirected)
        throw std::invalid_argument("approx-undir needs an undirected graph");
      if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("approx variants need epsilon > 0");
      break;
  }

  // exact variant: W * ceil(n^a)-bounded oracles; approx variants: 2A-bounded
  oracle_bound_ = family_.exact_mode() ? family_.scale_a() : 2 * family_.scale_a();

  for (std::size_t x = 0; x < family_.copy_count(); ++x) {
    CopyOracles co;
    co.core = std::make_shared<BoundedDijkstra>(family_.copy(x).graph, oracle_bound_);
    if (cfg.exact_kind == ExactKind::minplus)
      co.exact = make_minplus_batch_oracle(family_.copy(x).graph, oracle_bound_, cfg.dense_limit);
    else
      co.exact = make_truncated_dijkstra_oracle(co.core);
    co.exact_handle = co.exact.get();
    if (cfg.two_approx == TwoApproxKind::pow2) {
      co.two_approx = make_pow2_approx_oracle(co.core);
      co.two_handle = co.two_approx.get();
    } else {
      co.two_handle = co.exact_handle;
    }
    co.eps_handle = co.exact_handle;  // exactness satisfies the (1+eps) contract
    oracles_.push_back(std::move(co));
  }
  rebuild_overlay(nullptr);
}

std::vector<DistanceOracle*> Engine::eps_handles() const {
  std::vector<DistanceOracle*> hs;
  hs.reserve(oracles_.size());
  for (const auto& co : oracles_) hs.push_back(co.eps_handle);
  return hs;
}

void Engine::rebuild_overlay(UpdateStats* stats) {
  std::vector<Vertex> hubs;
  std::uint64_t seed;
  const bool fresh_sample = cfg_.resample_per_update || overlay_.vertices.empty();
  if (fresh_sample) {
    seed = rng_();
    hubs = sample_hitting_set(g_.vertex_count(), cfg_.hop_exp, cfg_.c_hs, seed);
  } else {
    seed = overlay_.sample_seed;
    hubs = overlay_.hitting_set;
  }
  if (stats) stats->resampled = fresh_sample;

  auto handles = eps_handles();
  overlay_ = build_overlay(std::move(hubs), family_, handles, seed);
  if (stats) stats->queryall_cells += family_.copy_count() * overlay_.size() * overlay_.size();

  two_fwd_.clear();
  two_rev_.clear();
  if (!directed()) return;
  const std::uint32_t n = g_.vertex_count();
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  two_fwd_.resize(family_.copy_count());
  two_rev_.resize(family_.copy_count());
  for (std::size_t x = 0; x < family_.copy_count(); ++x) {
    const DistanceOracle& two = *oracles_[x].two_handle;
    two_fwd_[x].reserve(overlay_.size());
    two_rev_[x].reserve(overlay_.size());
    for (Vertex h : overlay_.vertices) {
      DistMatrix row = two.query_all(std::span<const Vertex>(&h, 1), all);
      two_fwd_[x].push_back(std::move(row.data));
      DistMatrix col = two.query_all(all, std::span<const Vertex>(&h, 1));
      two_rev_[x].push_back(std::move(col.data));
    }
    if (stats) stats->queryall_cells += 2 * overlay_.size() * n;
  }
}

UpdateStats Engine::update(Vertex u, Vertex v, double len) {
  UpdateStats stats;
  g_.set_edge(u, v, len);  // validates; throws before any state changes
  const auto changed = family_.propagate_update(u, v, len);
  for (std::size_t x = 0; x < changed.size(); ++x) {
    auto& co = oracles_[x];
    co.exact_handle->update(u, v, changed[x].second);
    stats.oracle_updates += 1;
    if (co.two_handle != co.exact_handle) {
      co.two_handle->update(u, v, changed[x].second);
      stats.oracle_updates += 1;
    }
    ++stats.copies_touched;
  }
  rebuild_overlay(&stats);
  return stats;
}

PathResult Engine::query(Vertex s, Vertex t) const {
  const std::uint32_t n = g_.vertex_count();
  if (s >= n || t >= n) throw std::invalid_argument("vertex id out of range");
  PathResult res;
  if (s == t) {
    res.vertices = {s};
    res.length = 0.0;
    res.hub_length = 0.0;
    return res;
  }

  auto handles = eps_handles();
  const Overlay view = attach_terminals(overlay_, s, t, family_, handles);
  const HubPath hp = hub_sequence(view, s, t);
  res.hub_length = hp.total;
  if (!hp.reachable()) return res;

  // query-time 2-approx rows for the terminals, one per copy, computed lazily
  std::vector<Vertex> all;
  std::vector<std::vector<std::int64_t>> s_rows(family_.copy_count());
  std::vector<std::vector<std::int64_t>> t_cols(family_.copy_count());
  auto terminal_row = [&](std::size_t x, bool forward) -> const std::vector<std::int64_t>& {
    auto& slot = forward ? s_rows[x] : t_cols[x];
    if (slot.empty()) {
      if (all.empty()) {
        all.resize(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
      }
      const Vertex h = forward ? s : t;
      const DistanceOracle& two = *oracles_[x].two_handle;
      DistMatrix m = forward ? two.query_all(std::span<const Vertex>(&h, 1), all)
                             : two.query_all(all, std::span<const Vertex>(&h, 1));
      slot = std::move(m.data);
    }
    return slot;
  };

  // per-category positions for the multiplicity ledger
  std::map<int, std::size_t> category_count;
  std::map<int, std::vector<std::int32_t>> first_pos;

  std::vector<Vertex> walk{s};
  for (std::size_t i = 0; i + 1 < hp.hubs.size(); ++i) {
    const Vertex hu = hp.hubs[i], hw = hp.hubs[i + 1];
    const std::int16_t x = hp.copies[i];
    assert(x >= 0);
    const auto& co = oracles_[static_cast<std::size_t>(x)];
    const CopyGraph& gx = family_.copy(static_cast<std::size_t>(x)).graph;

    SegmentRecord seg;
    seg.from = hu;
    seg.to = hw;
    seg.copy = x;
    seg.category = hp.categories[i];
    seg.hub_len = hp.edge_lens[i];

    std::vector<Vertex> piece;
    SubpathStats st;
    if (directed()) {
      const std::int64_t baseline = co.exact_handle->query(hu, hw);
      const std::int32_t iu = overlay_.index_of[hu];
      const auto& row_u = (iu >= 0) ? two_fwd_[static_cast<std::size_t>(x)][static_cast<std::size_t>(iu)]
                                    : terminal_row(static_cast<std::size_t>(x), true);
      const std::int32_t iw = overlay_.index_of[hw];
      const auto& col_w = (iw >= 0) ? two_rev_[static_cast<std::size_t>(x)][static_cast<std::size_t>(iw)]
                                    : terminal_row(static_cast<std::size_t>(x), false);
      PlausibleSet ps = build_plausible_set(hu, hw, x, baseline, row_u, col_w);
      seg.plausible = ps.members.size();
      res.total_plausible += ps.members.size();

      const std::size_t pos = category_count[seg.category]++;
      auto& firsts = first_pos[seg.category];
      if (firsts.empty()) firsts.assign(n, -1);
      for (Vertex v : ps.members) {
        if (firsts[v] < 0)
          firsts[v] = static_cast<std::int32_t>(pos);
        else
          res.category_gap_max = std::max(res.category_gap_max,
                                          static_cast<int>(pos) - firsts[v]);
      }

      try {
        piece = shortest_subpath_directed(gx, hu, hw, ps.members, *co.exact_handle, &st);
      } catch (ReconstructionFailure& f) {
        throw ReconstructionFailure(hu, hw, x, f.what());
      }
    } else {
      try {
        piece = shortest_subpath_undirected(gx, hu, hw, *co.exact_handle, &st);
      } catch (ReconstructionFailure& f) {
        throw ReconstructionFailure(hu, hw, x, f.what());
      }
      res.touch_class_max = std::max(res.touch_class_max, st.max_class_touches);
      res.touch_iter_max = std::max(res.touch_iter_max, st.neighbor_iterations);
    }
    seg.oracle_calls = st.oracle_calls + (directed() ? 1 : 0);  // plus the baseline query
    seg.neighbor_iterations = st.neighbor_iterations;
    seg.max_class_touches = st.max_class_touches;
    res.oracle_calls += seg.oracle_calls;
    res.segments.push_back(seg);

    walk.insert(walk.end(), piece.begin() + 1, piece.end());
  }

  res.vertices = std::move(walk);
  res.length = walk_length(g_, res.vertices);
  assert(res.length != kInfLen);
  return res;
}

}  // namespace dsp
