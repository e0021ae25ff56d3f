#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dsp {

using Vertex = std::uint32_t;

inline constexpr double kInfLen = std::numeric_limits<double>::infinity();

enum class EdgeMode { directed, undirected };
enum class WeightDomain { integer, real };

template <class W>
struct Edge {
  Vertex to;
  W len;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Adjacency-list graph with an edge map for O(1) length lookups.
/// Neighbor lists are kept sorted ascending by (length, neighbor id) at all
/// times. Undirected graphs store both orientations with equal length.
template <class W>
class AdjGraph {
 public:
  AdjGraph(std::uint32_t n, EdgeMode mode)
      : mode_(mode), out_(n), in_(mode == EdgeMode::directed ? n : 0) {}

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(out_.size()); }
  EdgeMode mode() const { return mode_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t version() const { return version_; }

  /// Sets, reweights or (with nullopt) removes the edge (u, v).
  void set(Vertex u, Vertex v, std::optional<W> w) {
    if (mode_ == EdgeMode::undirected && u > v) std::swap(u, v);
    ++version_;
    const std::uint64_t k = key(u, v);
    auto it = edges_.find(k);
    if (it != edges_.end()) {
      detach(u, v, it->second);
      if (mode_ == EdgeMode::undirected) detach(v, u, it->second);
      edges_.erase(it);
    }
    if (!w) return;
    edges_.emplace(k, *w);
    attach(u, v, *w);
    if (mode_ == EdgeMode::undirected) attach(v, u, *w);
  }

  std::optional<W> get(Vertex u, Vertex v) const {
    if (mode_ == EdgeMode::undirected && u > v) std::swap(u, v);
    auto it = edges_.find(key(u, v));
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Edge<W>>& out(Vertex v) const { return out_[v]; }
  const std::vector<Edge<W>>& in(Vertex v) const {
    return mode_ == EdgeMode::directed ? in_[v] : out_[v];
  }

  /// Visits each stored edge once (canonical u < v for undirected graphs),
  /// ordered by (u, length, v).
  template <class F>
  void for_each_edge(F&& f) const {
    for (Vertex u = 0; u < vertex_count(); ++u)
      for (const auto& e : out_[u]) {
        if (mode_ == EdgeMode::undirected && e.to < u) continue;
        f(u, e.to, e.len);
      }
  }

 private:
  static std::uint64_t key(Vertex u, Vertex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  static bool edge_less(const Edge<W>& a, const Edge<W>& b) {
    return a.len != b.len ? a.len < b.len : a.to < b.to;
  }

  static void list_insert(std::vector<Edge<W>>& lst, Vertex to, W w) {
    Edge<W> e{to, w};
    lst.insert(std::lower_bound(lst.begin(), lst.end(), e, edge_less), e);
  }

  static void list_erase(std::vector<Edge<W>>& lst, Vertex to, W w) {
    Edge<W> e{to, w};
    lst.erase(std::lower_bound(lst.begin(), lst.end(), e, edge_less));
  }

  void attach(Vertex from, Vertex to, W w) {
    list_insert(out_[from], to, w);
    if (mode_ == EdgeMode::directed) list_insert(in_[to], from, w);
  }

  void detach(Vertex from, Vertex to, W w) {
    list_erase(out_[from], to, w);
    if (mode_ == EdgeMode::directed) list_erase(in_[to], from, w);
  }

  EdgeMode mode_;
  std::vector<std::vector<Edge<W>>> out_;
  std::vector<std::vector<Edge<W>>> in_;
  std::unordered_map<std::uint64_t, W> edges_;
  std::uint64_t version_ = 0;
};

/// Integer-weighted working copy used by the rounding layer and the oracles.
class CopyGraph {
 public:
  CopyGraph(std::uint32_t n, EdgeMode mode) : adj_(n, mode) {}

  std::uint32_t vertex_count() const { return adj_.vertex_count(); }
  EdgeMode mode() const { return adj_.mode(); }
  std::size_t edge_count() const { return adj_.edge_count(); }
  std::uint64_t version() const { return adj_.version(); }

  void set(Vertex u, Vertex v, std::optional<std::int64_t> w) { adj_.set(u, v, w); }
  std::optional<std::int64_t> get(Vertex u, Vertex v) const { return adj_.get(u, v); }
  const std::vector<Edge<std::int64_t>>& out(Vertex v) const { return adj_.out(v); }
  const std::vector<Edge<std::int64_t>>& in(Vertex v) const { return adj_.in(v); }

  template <class F>
  void for_each_edge(F&& f) const {
    adj_.for_each_edge(f);
  }

 private:
  AdjGraph<std::int64_t> adj_;
};

/// The mutable input graph. Weights live in [1, W]; deletion is modeled as
/// weight infinity so one operation covers insert, delete and reweight.
class DynamicGraph {
 public:
  DynamicGraph(std::uint32_t n, EdgeMode mode, WeightDomain domain, double max_weight);

  std::uint32_t vertex_count() const { return adj_.vertex_count(); }
  EdgeMode mode() const { return adj_.mode(); }
  WeightDomain domain() const { return domain_; }
  double max_weight() const { return max_weight_; }
  std::size_t edge_count() const { return adj_.edge_count(); }
  std::uint64_t version() const { return adj_.version(); }

  /// len == kInfLen removes the edge. Throws std::invalid_argument on
  /// self-loops and weight-domain violations.
  void set_edge(Vertex u, Vertex v, double len);

  /// kInfLen when the edge is absent.
  double edge_length(Vertex u, Vertex v) const {
    auto w = adj_.get(u, v);
    return w ? *w : kInfLen;
  }

  bool has_edge(Vertex u, Vertex v) const { return adj_.get(u, v).has_value(); }

  const std::vector<Edge<double>>& out_neighbors(Vertex v) const { return adj_.out(v); }
  const std::vector<Edge<double>>& in_neighbors(Vertex v) const { return adj_.in(v); }
  std::size_t degree(Vertex v) const { return adj_.out(v).size(); }

  template <class F>
  void for_each_edge(F&& f) const {
    adj_.for_each_edge(f);
  }

 private:
  AdjGraph<double> adj_;
  WeightDomain domain_;
  double max_weight_;
};

struct DijkstraResult {
  std::vector<double> dist;
  std::vector<std::int32_t> parent;  // -1 for the source and unreached vertices
};

/// Exact single-source shortest paths. Deterministic: the queue pops by
/// (distance, vertex id) and distance ties keep the smaller predecessor id.
DijkstraResult dijkstra(const DynamicGraph& g, Vertex source);

/// Path s -> t read off a dijkstra(g, s) result; empty when unreachable.
std::vector<Vertex> tree_path(const DijkstraResult& r, Vertex s, Vertex t);

/// Sum of edge lengths along a vertex sequence; kInfLen if some edge is
/// missing. Empty and single-vertex sequences have length 0.
double walk_length(const DynamicGraph& g, const std::vector<Vertex>& walk);

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what);
  int line;
};

/// Text format: header "n m directed|undirected int|real W", then m lines
/// "u v w" with 0-based vertex ids. Rejects out-of-range weights with the
/// offending line number.
DynamicGraph load_graph(std::istream& in);
void write_graph(std::ostream& out, const DynamicGraph& g);

}  // namespace dsp
