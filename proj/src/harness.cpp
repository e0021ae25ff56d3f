#include "dsp/harness.hpp"

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <istream>
#include <optional>
#include <random>
#include <sstream>

#include "dsp/rng.hpp"
#include "json.hpp"

namespace dsp::harness {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  if (v == kInfLen) return "inf";
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

const char* variant_name(VariantKind v) {
  switch (v) {
    case VariantKind::exact_dir: return "exact-dir";
    case VariantKind::approx_dir: return "approx-dir";
    case VariantKind::approx_undir: return "approx-undir";
    case VariantKind::unweighted: return "unweighted";
  }
  return "?";
}

/// One report record; renders to key=value or to a JSON object with the
/// same fields, in insertion order.
class Row {
 public:
  void put(const char* k, const std::string& v) { j_[k] = v; }
  void put(const char* k, const char* v) { j_[k] = v; }
  void put(const char* k, double v) {
    if (v == kInfLen)
      j_[k] = "inf";
    else
      j_[k] = v;
  }
  template <class T>
    requires std::integral<T>
  void put(const char* k, T v) {
    j_[k] = v;
  }

  std::string render(bool json) const {
    if (json) return j_.dump();
    std::string out;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!out.empty()) out += ' ';
      out += it.key();
      out += '=';
      if (it->is_string()) {
        std::string s = it->get<std::string>();
        if (s.find(' ') != std::string::npos || s.find('=') != std::string::npos) {
          for (auto& c : s)
            if (c == '"') c = '\'';
          out += '"' + s + '"';
        } else {
          out += s;
        }
      } else {
        out += it->dump();
      }
    }
    return out;
  }

 private:
  ordered_json j_ = ordered_json::object();
};

Variant engine_variant(VariantKind v) {
  switch (v) {
    case VariantKind::exact_dir: return Variant::exact_dir;
    case VariantKind::approx_dir: return Variant::approx_dir;
    case VariantKind::approx_undir: return Variant::approx_undir;
    default: throw std::logic_error("not an engine variant");
  }
}

/// Shared command executor behind run_trace and adversary_run.
class Runner {
 public:
  Runner(DynamicGraph g, const RunConfig& cfg) : cfg_(cfg), g_(std::move(g)) {
    if (cfg.variant == VariantKind::unweighted) {
      if (g_.mode() != EdgeMode::undirected || g_.domain() != WeightDomain::integer ||
          g_.max_weight() != 1.0)
        throw std::invalid_argument("unweighted variant needs an undirected int graph with W = 1");
      if (!(cfg.epsilon > 0.0))
        throw std::invalid_argument("unweighted variant needs epsilon > 0");
    } else {
      EngineConfig ec;
      ec.variant = engine_variant(cfg.variant);
      ec.epsilon = cfg.epsilon;
      ec.hop_exp = cfg.hop_exp;
      ec.c_hs = cfg.c_hs;
      ec.seed = cfg.seed;
      ec.resample_per_update = cfg.resample;
      ec.two_approx = cfg.two_approx;
      ec.exact_kind = cfg.exact_kind;
      ec.dense_limit = cfg.dense_limit;
      engine_.emplace(graph(), ec);
    }
    emit_config();
  }

  const DynamicGraph& graph() const { return engine_ ? engine_->graph() : g_; }
  const std::vector<Vertex>& last_path() const { return last_path_; }

  void update(Vertex u, Vertex v, double w) {
    Row row;
    row.put("type", "cmd");
    row.put("idx", idx_++);
    row.put("cmd", w == kInfLen ? "D" : "U");
    row.put("u", u);
    row.put("v", v);
    if (w != kInfLen) row.put("w", w);
    ++res_.commands;
    try {
      if (engine_) {
        const UpdateStats st = engine_->update(u, v, w);
        row.put("status", "ok");
        row.put("oracle_updates", st.oracle_updates);
        row.put("cells", st.queryall_cells);
        row.put("resampled", st.resampled ? 1 : 0);
      } else {
        g_.set_edge(u, v, w);
        row.put("status", "ok");
      }
      ++res_.updates;
    } catch (const std::exception& e) {
      row.put("status", "error");
      row.put("err", std::string(e.what()));
      ++res_.errors;
    }
    emit(row);
  }

  void query_path(Vertex s, Vertex t) {
    Row row;
    row.put("type", "cmd");
    row.put("idx", idx_++);
    row.put("cmd", "QP");
    row.put("s", s);
    row.put("t", t);
    ++res_.commands;
    if (s >= graph().vertex_count() || t >= graph().vertex_count()) {
      row.put("status", "error");
      row.put("err", "vertex id out of range");
      ++res_.errors;
      emit(row);
      return;
    }
    QueryOutcome q;
    q.s = s;
    q.t = t;
    try {
      if (engine_)
        engine_query(s, t, q);
      else
        unweighted_query(s, t, q);
    } catch (const ReconstructionFailure& e) {
      row.put("status", "error");
      row.put("kind", "reconstruction");
      row.put("err", std::string(e.what()));
      ++res_.errors;
      res_.pass = false;  // contract-violation detector fired
      emit(row);
      return;
    } catch (const std::exception& e) {
      row.put("status", "error");
      row.put("err", std::string(e.what()));
      ++res_.errors;
      emit(row);
      return;
    }
    ++res_.queries;
    ++path_queries_;
    if (q.exact) ++res_.exact_queries;
    if (q.ratio != kInfLen) res_.max_finite_ratio = std::max(res_.max_finite_ratio, q.ratio);
    if (!q.verify_pass) res_.pass = false;
    row.put("status", "ok");
    row.put("reported", q.reported);
    row.put("verified", q.verified);
    row.put("valid", q.valid ? 1 : 0);
    row.put("exact", q.exact ? 1 : 0);
    row.put("ratio", q.ratio);
    row.put("hubs", q.hubs);
    row.put("sum_plausible", q.sum_plausible);
    row.put("oracle_calls", q.oracle_calls);
    row.put("cat_gap", q.cat_gap);
    row.put("touch_class", q.touch_class);
    row.put("touch_iter", q.touch_iter);
    row.put("hs_miss", q.hs_miss ? 1 : 0);
    row.put("verify_pass", q.verify_pass ? 1 : 0);
    res_.outcomes.push_back(q);
    emit(row);
  }

  void query_tree(Vertex s) {
    Row row;
    row.put("type", "cmd");
    row.put("idx", idx_++);
    row.put("cmd", "QT");
    row.put("s", s);
    ++res_.commands;
    if (engine_) {
      row.put("status", "error");
      row.put("err", "tree queries require unweighted variant");
      ++res_.errors;
      emit(row);
      return;
    }
    if (s >= g_.vertex_count()) {
      row.put("status", "error");
      row.put("err", "vertex id out of range");
      ++res_.errors;
      emit(row);
      return;
    }
    const std::uint32_t blocks =
        cfg_.tree_blocks
            ? cfg_.tree_blocks
            : static_cast<std::uint32_t>(
                  std::ceil(std::sqrt(static_cast<double>(g_.vertex_count()))));
    const auto tree = unweighted::sssp_tree(g_, s, cfg_.epsilon, blocks);
    const auto truth = unweighted::bfs(g_, s);

    bool ok = true;
    double max_ratio = 1.0;
    std::size_t reached = 0;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if ((tree.dist[v] == kInfDist) != (truth.dist[v] == kInfDist)) ok = false;
      if (tree.dist[v] == kInfDist || v == s) continue;
      ++reached;
      if (tree.parent[v] < 0 || !g_.has_edge(static_cast<Vertex>(tree.parent[v]), v)) ok = false;
      const double ratio =
          static_cast<double>(tree.dist[v]) / static_cast<double>(truth.dist[v]);
      max_ratio = std::max(max_ratio, ratio);
      if (static_cast<double>(tree.dist[v]) >
          (1.0 + cfg_.epsilon) * static_cast<double>(truth.dist[v]) + 1e-9)
        ok = false;
    }
    ++res_.queries;
    if (!ok) res_.pass = false;
    res_.max_finite_ratio = std::max(res_.max_finite_ratio, max_ratio);
    row.put("status", "ok");
    row.put("reached", reached);
    row.put("max_ratio", max_ratio);
    row.put("valid", ok ? 1 : 0);
    row.put("verify_pass", ok ? 1 : 0);
    emit(row);
  }

  RunResult finish() {
    Row row;
    row.put("type", "summary");
    row.put("commands", res_.commands);
    row.put("updates", res_.updates);
    row.put("queries", res_.queries);
    row.put("errors", res_.errors);
    row.put("exact_queries", res_.exact_queries);
    row.put("exact_rate", path_queries_ ? static_cast<double>(res_.exact_queries) /
                                              static_cast<double>(path_queries_)
                                        : 1.0);
    row.put("max_ratio", res_.max_finite_ratio);
    row.put("pass", res_.pass ? 1 : 0);
    emit(row);
    res_.report = out_.str();
    return std::move(res_);
  }

 private:
  void emit_config() {
    Row row;
    row.put("type", "config");
    row.put("variant", variant_name(cfg_.variant));
    row.put("n", graph().vertex_count());
    row.put("m", graph().edge_count());
    row.put("mode", graph().mode() == EdgeMode::directed ? "directed" : "undirected");
    row.put("domain", graph().domain() == WeightDomain::integer ? "int" : "real");
    row.put("W", graph().max_weight());
    row.put("epsilon", cfg_.epsilon);
    row.put("hop_exp", cfg_.hop_exp);
    row.put("chs", cfg_.c_hs);
    row.put("seed", cfg_.seed);
    row.put("resample", cfg_.resample ? 1 : 0);
    row.put("two_approx", cfg_.two_approx == TwoApproxKind::pow2 ? "pow2" : "exact");
    row.put("exact_oracle",
            cfg_.exact_kind == ExactKind::minplus ? "minplus" : "truncated-dijkstra");
    if (engine_) {
      row.put("A", engine_->family().scale_a());
      row.put("bound", engine_->oracle_bound());
      row.put("hop_bound", engine_->hop_bound());
      row.put("copies", engine_->family().copy_count());
    }
    emit(row);
  }

  void engine_query(Vertex s, Vertex t, QueryOutcome& q) {
    const PathResult r = engine_->query(s, t);
    const DijkstraResult truth = dijkstra(graph(), s);
    q.verified = truth.dist[t];
    q.reported = r.length;
    q.hubs = r.reachable() ? r.segments.size() + 1 : 0;
    q.sum_plausible = r.total_plausible;
    q.cat_gap = r.category_gap_max;
    q.touch_class = r.touch_class_max;
    q.touch_iter = r.touch_iter_max;
    q.oracle_calls = r.oracle_calls;

    if (r.reachable()) {
      q.valid = !r.vertices.empty() && r.vertices.front() == s && r.vertices.back() == t &&
                walk_length(graph(), r.vertices) == r.length && r.length >= q.verified;
      last_path_ = r.vertices;
    } else {
      q.valid = true;  // no walk was returned
      last_path_.clear();
    }
    q.exact = (q.reported == q.verified) ||
              (q.reported == kInfLen && q.verified == kInfLen);
    q.ratio = ratio_of(q.reported, q.verified);

    if (!q.exact && cfg_.variant == VariantKind::exact_dir) {
      const auto path = tree_path(truth, s, t);
      q.hs_miss = hitting_gap_witness(path, engine_->overlay().hitting_set,
                                      graph().vertex_count(), engine_->hop_bound());
    }

    // deterministic guarantees gate the run
    q.verify_pass = q.valid;
    const double n = static_cast<double>(graph().vertex_count());
    if (engine_->directed()) {
      const double cap = 64.0 * n * std::log2(2.0 * n * graph().max_weight());
      if (static_cast<double>(q.sum_plausible) > cap) q.verify_pass = false;
      if (cfg_.epsilon == 0.0 && q.cat_gap > 16) q.verify_pass = false;
    } else {
      if (q.touch_class > 4) q.verify_pass = false;
      const double iter_cap =
          4.0 * n *
          std::ceil(std::log2(static_cast<double>(engine_->family().scale_a()) + 1.0));
      if (static_cast<double>(q.touch_iter) > iter_cap) q.verify_pass = false;
    }
  }

  void unweighted_query(Vertex s, Vertex t, QueryOutcome& q) {
    const auto path = unweighted::st_path(g_, s, t, cfg_.epsilon);
    const auto truth = unweighted::bfs(g_, s);
    q.verified = truth.dist[t] == kInfDist ? kInfLen : static_cast<double>(truth.dist[t]);
    if (path.empty() && s != t) {
      q.reported = kInfLen;
      q.valid = true;
      last_path_.clear();
    } else {
      q.reported = static_cast<double>(path.size() - 1);
      q.valid = path.front() == s && path.back() == t &&
                walk_length(g_, path) == q.reported && q.reported >= q.verified;
      last_path_ = path;
    }
    q.exact = (q.reported == q.verified) || (q.reported == kInfLen && q.verified == kInfLen);
    q.ratio = ratio_of(q.reported, q.verified);
    q.verify_pass = q.valid;
    if (q.verified != kInfLen) {
      if (q.verified < 4.0 / cfg_.epsilon) {
        if (!q.exact) q.verify_pass = false;  // short pairs must come out exact
      } else if (q.reported == kInfLen ||
                 q.reported > (1.0 + 2.0 * cfg_.epsilon) * q.verified + 1e-9) {
        q.verify_pass = false;
      }
    } else if (q.reported != kInfLen) {
      q.verify_pass = false;
    }
  }

  static double ratio_of(double reported, double verified) {
    if (reported == kInfLen && verified == kInfLen) return 1.0;
    if (verified == kInfLen) return 0.0;  // cannot happen for valid walks
    if (verified == 0.0) return reported == 0.0 ? 1.0 : kInfLen;
    if (reported == kInfLen) return kInfLen;
    return reported / verified;
  }

  void emit(const Row& row) {
    out_ << row.render(cfg_.json) << '\n';
  }

  RunConfig cfg_;
  DynamicGraph g_;
  std::optional<Engine> engine_;
  std::vector<Vertex> last_path_;
  std::ostringstream out_;
  RunResult res_;
  std::size_t idx_ = 0;
  std::size_t path_queries_ = 0;
};

}  // namespace

std::vector<TraceCommand> load_trace(std::istream& in) {
  std::vector<TraceCommand> cmds;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    TraceCommand c;
    auto need = [&](auto&... xs) {
      if (!((ls >> xs) && ...)) throw ParseError(line_no, "malformed '" + op + "' command");
    };
    if (op == "U") {
      c.kind = TraceCommand::Kind::set_weight;
      need(c.u, c.v, c.w);
    } else if (op == "D") {
      c.kind = TraceCommand::Kind::delete_edge;
      need(c.u, c.v);
      c.w = kInfLen;
    } else if (op == "QP") {
      c.kind = TraceCommand::Kind::query_path;
      need(c.u, c.v);
    } else if (op == "QT") {
      c.kind = TraceCommand::Kind::query_tree;
      need(c.u);
    } else {
      throw ParseError(line_no, "unknown command '" + op + "'");
    }
    cmds.push_back(c);
  }
  return cmds;
}

RunResult run_trace(DynamicGraph g, const std::vector<TraceCommand>& commands,
                    const RunConfig& cfg) {
  Runner r(std::move(g), cfg);
  for (const auto& c : commands) {
    switch (c.kind) {
      case TraceCommand::Kind::set_weight: r.update(c.u, c.v, c.w); break;
      case TraceCommand::Kind::delete_edge: r.update(c.u, c.v, kInfLen); break;
      case TraceCommand::Kind::query_path: r.query_path(c.u, c.v); break;
      case TraceCommand::Kind::query_tree: r.query_tree(c.u); break;
    }
  }
  return r.finish();
}

std::optional<Strategy> parse_strategy(const std::string& name) {
  if (name == "random") return Strategy::random_update;
  if (name == "path-median-delete") return Strategy::path_median_delete;
  if (name == "path-endpoint-reweight") return Strategy::path_endpoint_reweight;
  return std::nullopt;
}

std::pair<Vertex, Vertex> diameter_pair(const DynamicGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::pair<Vertex, Vertex> best{0, n > 1 ? 1 : 0};
  double best_d = -1.0;
  for (Vertex s = 0; s < n; ++s) {
    const auto r = dijkstra(g, s);
    for (Vertex t = 0; t < n; ++t) {
      if (t == s || r.dist[t] == kInfLen) continue;
      if (r.dist[t] > best_d) {
        best_d = r.dist[t];
        best = {s, t};
      }
    }
  }
  return best;
}

bool hitting_gap_witness(const std::vector<Vertex>& path, const std::vector<Vertex>& hubs,
                         std::uint32_t n, std::int64_t hop_bound) {
  if (path.size() < 2) return false;
  std::vector<char> is_hub(n, 0);
  for (Vertex h : hubs) is_hub[h] = 1;
  std::size_t last_hit = 0;  // endpoints always count as hits
  for (std::size_t i = 1; i < path.size(); ++i) {
    const bool hit = (i + 1 == path.size()) || is_hub[path[i]];
    if (!hit) continue;
    if (static_cast<std::int64_t>(i - last_hit) > hop_bound) return true;
    last_hit = i;
  }
  return false;
}

namespace {

struct EdgeRef {
  Vertex u, v;
  double w;
};

std::vector<EdgeRef> edge_list(const DynamicGraph& g) {
  std::vector<EdgeRef> out;
  g.for_each_edge([&](Vertex u, Vertex v, double w) { out.push_back({u, v, w}); });
  return out;
}

void apply_strategy(Strategy strategy, Runner& r, std::mt19937_64& rng) {
  const DynamicGraph& g = r.graph();
  const auto& path = r.last_path();
  const double w_max = g.max_weight();
  auto fallback = [&]() {
    const auto edges = edge_list(g);
    if (edges.empty()) return;  // nothing to mutate this round
    r.update(edges.front().u, edges.front().v, edges.front().w);  // no-op weight
  };
  switch (strategy) {
    case Strategy::random_update: {
      const auto edges = edge_list(g);
      if (edges.empty()) return;
      const auto& e = edges[uniform_below(rng, edges.size())];
      if (uniform_below(rng, 4) == 0) {
        r.update(e.u, e.v, kInfLen);
      } else {
        double w;
        if (g.domain() == WeightDomain::integer)
          w = 1.0 + static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(w_max)));
        else
          w = 1.0 + unit_real(rng) * (w_max - 1.0);
        r.update(e.u, e.v, w);
      }
      break;
    }
    case Strategy::path_median_delete: {
      if (path.size() < 2) return fallback();
      const std::size_t k = (path.size() - 2) / 2;  // median edge index
      r.update(path[k], path[k + 1], kInfLen);
      break;
    }
    case Strategy::path_endpoint_reweight: {
      if (path.size() < 2) return fallback();
      r.update(path[0], path[1], w_max);
      break;
    }
  }
}

}  // namespace

RunResult adversary_run(DynamicGraph g, const RunConfig& cfg, std::uint32_t rounds,
                        Strategy strategy) {
  const auto [s, t] = diameter_pair(g);
  Runner r(std::move(g), cfg);
  std::mt19937_64 rng(cfg.seed ^ 0x517cc1b727220a95ull);
  r.query_path(s, t);
  for (std::uint32_t i = 0; i < rounds; ++i) {
    apply_strategy(strategy, r, rng);
    r.query_path(s, t);
  }
  return r.finish();
}

namespace {

std::optional<std::string> kv_find(const std::string& line, const std::string& key) {
  const std::string pat = key + "=";
  std::size_t pos = 0;
  while ((pos = line.find(pat, pos)) != std::string::npos) {
    if (pos > 0 && line[pos - 1] != ' ') {
      pos += pat.size();
      continue;
    }
    std::size_t start = pos + pat.size();
    std::size_t end = start;
    if (start < line.size() && line[start] == '"') {
      end = line.find('"', start + 1);
      return line.substr(start + 1, end - start - 1);
    }
    end = line.find(' ', start);
    return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
  }
  return std::nullopt;
}

double to_num(const std::string& s) {
  if (s == "inf") return kInfLen;
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

StatsResult stats_check(std::istream& report) {
  double n = 0, w_max = 1, epsilon = 0, scale_a = 0;
  std::string variant = "exact-dir";
  double max_sum_p = 0, max_cat_gap = 0, max_touch_class = 0, max_touch_iter = 0;
  std::size_t query_rows = 0;

  std::string line;
  while (std::getline(report, line)) {
    if (line.empty()) continue;
    auto get = [&](const char* key) -> std::optional<std::string> {
      if (line[0] == '{') {
        auto j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains(key)) return std::nullopt;
        const auto& v = j[key];
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
      }
      return kv_find(line, key);
    };
    const auto type = get("type");
    if (!type) continue;
    if (*type == "config") {
      if (auto s = get("n")) n = to_num(*s);
      if (auto s = get("W")) w_max = to_num(*s);
      if (auto s = get("epsilon")) epsilon = to_num(*s);
      if (auto s = get("A")) scale_a = to_num(*s);
      if (auto s = get("variant")) variant = *s;
    } else if (*type == "cmd") {
      const auto cmd = get("cmd");
      if (!cmd || *cmd != "QP") continue;
      const auto status = get("status");
      if (!status || *status != "ok") continue;
      ++query_rows;
      if (auto s = get("sum_plausible")) max_sum_p = std::max(max_sum_p, to_num(*s));
      if (auto s = get("cat_gap")) max_cat_gap = std::max(max_cat_gap, to_num(*s));
      if (auto s = get("touch_class")) max_touch_class = std::max(max_touch_class, to_num(*s));
      if (auto s = get("touch_iter")) max_touch_iter = std::max(max_touch_iter, to_num(*s));
    }
  }

  StatsResult out;
  std::ostringstream os;
  const bool directed = variant == "exact-dir" || variant == "approx-dir";
  auto ledger = [&](const char* check, double observed, double limit, bool applies) {
    const bool pass = !applies || observed <= limit;
    os << "ledger check=" << check << " observed=" << fmt_double(observed)
       << " limit=" << fmt_double(limit) << " applies=" << (applies ? 1 : 0)
       << " pass=" << (pass ? 1 : 0) << '\n';
    if (!pass) out.pass = false;
  };
  const double sum_cap = 64.0 * n * std::log2(2.0 * n * w_max);
  ledger("sum_plausible", max_sum_p, sum_cap, directed && query_rows > 0);
  ledger("category_gap", max_cat_gap, 16.0, directed && epsilon == 0.0 && query_rows > 0);
  const bool undirected_engine = variant == "approx-undir";
  ledger("touch_class", max_touch_class, 4.0, undirected_engine && query_rows > 0);
  const double iter_cap = 4.0 * n * std::ceil(std::log2(scale_a + 1.0));
  ledger("touch_iterations", max_touch_iter, iter_cap, undirected_engine && query_rows > 0);
  os << "summary ledger_pass=" << (out.pass ? 1 : 0) << " query_rows=" << query_rows << '\n';
  out.text = os.str();
  return out;
}

}  // namespace dsp::harness
