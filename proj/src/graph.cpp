#include "dsp/graph.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace dsp {

DynamicGraph::DynamicGraph(std::uint32_t n, EdgeMode mode, WeightDomain domain,
                           double max_weight)
    : adj_(n, mode), domain_(domain), max_weight_(max_weight) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  if (!(max_weight >= 1)) throw std::invalid_argument("max weight must be >= 1");
  if (domain == WeightDomain::integer && max_weight != std::floor(max_weight))
    throw std::invalid_argument("integer weight domain needs an integral max weight");
}

void DynamicGraph::set_edge(Vertex u, Vertex v, double len) {
  const std::uint32_t n = vertex_count();
  if (u >= n || v >= n) throw std::invalid_argument("vertex id out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (len == kInfLen) {
    adj_.set(u, v, std::nullopt);
    return;
  }
  if (!(len >= 1.0) || len > max_weight_)
    throw std::invalid_argument("edge length outside [1, W]");
  if (domain_ == WeightDomain::integer && len != std::floor(len))
    throw std::invalid_argument("integer weight domain got a fractional length");
  adj_.set(u, v, len);
}

DijkstraResult dijkstra(const DynamicGraph& g, Vertex source) {
  const std::uint32_t n = g.vertex_count();
  DijkstraResult r{std::vector<double>(n, kInfLen), std::vector<std::int32_t>(n, -1)};
  r.dist[source] = 0.0;
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0.0, source);
  std::vector<char> done(n, 0);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& e : g.out_neighbors(u)) {
      const double nd = d + e.len;
      if (nd < r.dist[e.to]) {
        r.dist[e.to] = nd;
        r.parent[e.to] = static_cast<std::int32_t>(u);
        pq.emplace(nd, e.to);
      } else if (nd == r.dist[e.to] && r.parent[e.to] >= 0 &&
                 static_cast<std::int32_t>(u) < r.parent[e.to]) {
        r.parent[e.to] = static_cast<std::int32_t>(u);
      }
    }
  }
  return r;
}

std::vector<Vertex> tree_path(const DijkstraResult& r, Vertex s, Vertex t) {
  if (s == t) return {s};
  if (r.dist[t] == kInfLen) return {};
  std::vector<Vertex> path;
  for (std::int32_t v = static_cast<std::int32_t>(t); v >= 0; v = r.parent[v])
    path.push_back(static_cast<Vertex>(v));
  std::reverse(path.begin(), path.end());
  return path.front() == s ? path : std::vector<Vertex>{};
}

double walk_length(const DynamicGraph& g, const std::vector<Vertex>& walk) {
  double total = 0.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const double w = g.edge_length(walk[i - 1], walk[i]);
    if (w == kInfLen) return kInfLen;
    total += w;
  }
  return total;
}

ParseError::ParseError(int line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

DynamicGraph load_graph(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(1, "missing header");
  std::istringstream hs(header);
  std::uint64_t n = 0, m = 0;
  std::string mode_s, domain_s;
  double w_max = 0;
  if (!(hs >> n >> m >> mode_s >> domain_s >> w_max))
    throw ParseError(1, "expected: n m directed|undirected int|real W");
  EdgeMode mode;
  if (mode_s == "directed")
    mode = EdgeMode::directed;
  else if (mode_s == "undirected")
    mode = EdgeMode::undirected;
  else
    throw ParseError(1, "unknown mode '" + mode_s + "'");
  WeightDomain domain;
  if (domain_s == "int")
    domain = WeightDomain::integer;
  else if (domain_s == "real")
    domain = WeightDomain::real;
  else
    throw ParseError(1, "unknown weight domain '" + domain_s + "'");
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max())
    throw ParseError(1, "bad vertex count");
  DynamicGraph g(static_cast<std::uint32_t>(n), mode, domain, w_max);
  for (std::uint64_t i = 0; i < m; ++i) {
    const int line_no = static_cast<int>(i) + 2;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(line_no, "unexpected end of file");
    std::istringstream ls(line);
    std::uint64_t u = 0, v = 0;
    double w = 0;
    if (!(ls >> u >> v >> w)) throw ParseError(line_no, "expected: u v w");
    if (u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    try {
      g.set_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return g;
}

void write_graph(std::ostream& out, const DynamicGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << ' '
      << (g.mode() == EdgeMode::directed ? "directed" : "undirected") << ' '
      << (g.domain() == WeightDomain::integer ? "int" : "real") << ' ';
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf;
  };
  put(g.max_weight());
  out << '\n';
  g.for_each_edge([&](Vertex u, Vertex v, double w) {
    out << u << ' ' << v << ' ';
    put(w);
    out << '\n';
  });
}

}  // namespace dsp
